//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on a domain error (unreadable input, a
//! coloring failure, a negative final charge in `audit`), 2 on a usage
//! error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::colorer::{color_two_distance, ColorerConfig, ColorerTrace, HypothesisReport, TraceEvent};
use crate::density::{approx, format_rational, mad_exact};
use crate::discharge::audit;
use crate::graph::{validate_coloring, Graph, ListAssignment};
use crate::io::{parse_graph, parse_lists, write_coloring, write_graph, GraphFile};
use crate::oracle::{chi2, exact_list_color, DEFAULT_CAP};
use crate::structure::{delta_warning, find_all, Configuration};
use crate::testkit::{gen_lists, gen_sparse, ListMode};
use crate::Variant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Lines,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    T1,
    T2,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::T1 => Variant::T1,
            VariantArg::T2 => Variant::T2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "twodist", version, about = "2-distance list coloring of sparse graphs")]
struct Cli {
    /// Hypotheses and configuration family.
    #[arg(long, global = true, value_enum, default_value = "t1")]
    variant: VariantArg,
    /// Seed for generated graphs and random lists.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Largest graph handed to the exact oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact maximum average degree and a densest vertex set.
    Mad { graph: PathBuf },
    /// Every reducible configuration of the variant.
    Detect { graph: PathBuf },
    /// Color from a list file, random lists (with --seed) or {1..Δ+3}.
    Color {
        graph: PathBuf,
        #[arg(long)]
        lists: Option<PathBuf>,
        /// Print the reduction trace after the coloring.
        #[arg(long)]
        trace: bool,
    },
    /// Run the discharging rules and report negative final charges.
    Audit { graph: PathBuf },
    /// Exact solver: χ² by default, or list colorability with --lists.
    Oracle {
        graph: PathBuf,
        #[arg(long, conflicts_with = "lists")]
        chi2: bool,
        #[arg(long)]
        lists: Option<PathBuf>,
    },
    /// Write a random graph meeting the variant's hypotheses.
    Gen {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Full pipeline per graph: mad, hypotheses, coloring, validation, audit.
    Verify {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(String, i32), Failure>;

/// Parses `argv` (program name first), runs the command and returns the exit
/// status. Output goes to `out`, diagnostics to `err`.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

/// [`run_with`] on the process's stdout and stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn read_graph(path: &Path) -> Result<GraphFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_lists(path: &Path, gf: &GraphFile) -> Result<ListAssignment, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_lists(&text, gf).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn decimal(r: &crate::Rational) -> String {
    let s = format!("{:.4}", approx(r));
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn labels(gf: &GraphFile, vs: &[usize]) -> String {
    vs.iter().map(|&v| gf.label(v)).collect::<Vec<_>>().join(" ")
}

fn config_text(c: &Configuration, gf: &GraphFile) -> String {
    let mut s = c.kind.to_string();
    for (name, v) in &c.witnesses {
        let _ = write!(s, " {name}={}", gf.label(*v));
    }
    s
}

fn delta_of(g: &Graph) -> usize {
    g.max_degree().unwrap_or(0)
}

fn dispatch(cli: &Cli) -> Outcome {
    let variant = Variant::from(cli.variant);
    let lines = cli.format == Format::Lines;
    match &cli.command {
        Command::Mad { graph } => {
            let gf = read_graph(graph)?;
            let m = mad_exact(&gf.graph)?;
            let text = if lines {
                format!("mad {}\nwitness {}\n", format_rational(&m.value), labels(&gf, &m.witness))
            } else {
                format!("{} ({})\nwitness: {}\n", format_rational(&m.value), decimal(&m.value), labels(&gf, &m.witness))
            };
            Ok((text, 0))
        }
        Command::Detect { graph } => {
            let gf = read_graph(graph)?;
            let delta = delta_of(&gf.graph);
            let found = find_all(&gf.graph, variant, delta);
            let mut text = String::new();
            if let (false, Some(w)) = (lines, delta_warning(&gf.graph, delta)) {
                let _ = writeln!(text, "warning: {w}");
            }
            for c in &found {
                let _ = writeln!(text, "{}{}", if lines { "config " } else { "" }, config_text(c, &gf));
            }
            if found.is_empty() && !lines {
                text.push_str("no reducible configuration\n");
            }
            Ok((text, 0))
        }
        Command::Color { graph, lists, trace } => {
            let gf = read_graph(graph)?;
            let k = delta_of(&gf.graph) + 3;
            let lists = match (lists, cli.seed) {
                (Some(p), _) => read_lists(p, &gf)?,
                (None, Some(seed)) => gen_lists(&gf.graph, k, ListMode::Random, seed),
                (None, None) => gen_lists(&gf.graph, k, ListMode::Uniform, 0),
            };
            let config = ColorerConfig { oracle_cap: cli.cap, ..ColorerConfig::default() };
            let outcome = color_two_distance(&gf.graph, &lists, variant, config)?;
            let report = validate_coloring(&gf.graph, &outcome.coloring, Some(&lists))?;
            if !report.is_valid() {
                return Err(Failure(format!("invalid coloring: {report:?}")));
            }
            let mut text = String::new();
            if !outcome.hypotheses.holds() && !lines {
                let _ = writeln!(text, "c warning: {}", hypothesis_text(&outcome.hypotheses));
            }
            text.push_str(&write_coloring(&outcome.coloring, &gf));
            if *trace {
                trace_lines(&outcome.trace, &gf).iter().for_each(|l| {
                    let _ = writeln!(text, "{l}");
                });
            }
            Ok((text, 0))
        }
        Command::Audit { graph } => {
            let gf = read_graph(graph)?;
            let r = audit(&gf.graph, variant, delta_of(&gf.graph));
            let mut text = r.ledger.lines().join("\n");
            text.push('\n');
            let _ = writeln!(text, "sum mu {}", format_rational(&r.sum_before));
            let _ = writeln!(text, "sum mu* {}", format_rational(&r.sum_after));
            if r.all_nonnegative() {
                text.push_str("negative none\n");
                return Ok((text, 0));
            }
            let _ = writeln!(text, "negative {}", labels(&gf, &r.negative));
            match &r.explanation {
                Some(c) => writeln!(text, "explanation {}", config_text(c, &gf)),
                None => writeln!(text, "explanation none"),
            }
            .expect("writing to a string");
            Ok((text, 1))
        }
        Command::Oracle { graph, lists, .. } => {
            let gf = read_graph(graph)?;
            if let Some(p) = lists {
                let lists = read_lists(p, &gf)?;
                return Ok(match exact_list_color(&gf.graph, &lists, cli.cap)? {
                    Some(c) => (write_coloring(&c, &gf), 0),
                    None => ("infeasible\n".to_string(), 0),
                });
            }
            let x = chi2(&gf.graph, cli.cap)?;
            Ok((if lines { format!("chi2 {x}\n") } else { format!("χ² = {x}\n") }, 0))
        }
        Command::Gen { n, out } => {
            let seed = cli.seed.unwrap_or(0);
            let g = gen_sparse(*n, variant, seed)?;
            let m = mad_exact(&g)?;
            let comments = vec![
                format!("variant {variant} seed {seed}"),
                format!("mad {} ({})", format_rational(&m.value), decimal(&m.value)),
                format!("delta {}", delta_of(&g)),
            ];
            let text = write_graph(&g, &comments);
            match out {
                Some(p) => {
                    std::fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
                    Ok((String::new(), 0))
                }
                None => Ok((text, 0)),
            }
        }
        Command::Verify { graphs, jobs } => {
            let seed = cli.seed.unwrap_or(0);
            let reports = run_jobs(graphs, (*jobs).max(1), |p| verify_one(p, variant, seed, cli.cap, lines));
            let mut text = String::new();
            let mut code = 0;
            for r in reports {
                match r {
                    Ok((t, c)) => {
                        text.push_str(&t);
                        code = code.max(c);
                    }
                    Err(Failure(m)) => {
                        let _ = writeln!(text, "error: {m}");
                        code = 1;
                    }
                }
            }
            Ok((text, code))
        }
    }
}

/// Maps `f` over `items` on up to `jobs` threads, keeping input order.
fn run_jobs<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                s.spawn(move || part.iter().map(f).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn hypothesis_text(h: &HypothesisReport) -> String {
    let (p, q) = h.variant.mad_bound();
    let mut parts = Vec::new();
    if !h.mad_ok {
        parts.push(format!("mad {} is not below {p}/{q}", format_rational(&h.mad)));
    }
    if !h.delta_ok {
        parts.push(format!("Δ = {} is below {}", h.delta, h.variant.min_delta()));
    }
    if parts.is_empty() {
        format!("mad < {p}/{q} and Δ ≥ {} hold", h.variant.min_delta())
    } else {
        format!("hypotheses of {} fail: {}", h.variant, parts.join("; "))
    }
}

/// Trace events, one per line, in the order they happened.
pub fn trace_lines(trace: &ColorerTrace, gf: &GraphFile) -> Vec<String> {
    trace
        .events
        .iter()
        .map(|e| match e {
            TraceEvent::Base { vertices, colors, reason } => {
                let pairs: Vec<String> =
                    vertices.iter().zip(colors).map(|(&v, c)| format!("{}={c}", gf.label(v))).collect();
                format!("trace base {reason:?} {}", pairs.join(" "))
            }
            TraceEvent::Reduction { plan, colors } => {
                let pairs: Vec<String> = colors.iter().map(|&(v, c)| format!("{}={c}", gf.label(v))).collect();
                let mut s =
                    format!("trace reduce {} | delete {}", config_text(&plan.config, gf), labels(gf, &plan.deleted));
                if !plan.uncolor.is_empty() {
                    let _ = write!(s, " | uncolor {}", labels(gf, &plan.uncolor));
                }
                let _ = write!(s, " | extend {}", pairs.join(" "));
                s
            }
        })
        .collect()
}

fn verify_one(path: &Path, variant: Variant, seed: u64, cap: usize, lines: bool) -> Outcome {
    let gf = read_graph(path)?;
    let g = &gf.graph;
    let hyp = HypothesisReport::check(g, variant);
    let k = hyp.delta + 3;
    let lists = gen_lists(g, k, ListMode::Random, seed);
    let config = ColorerConfig { oracle_cap: cap, ..ColorerConfig::default() };
    let colored = color_two_distance(g, &lists, variant, config);
    let audit_report = audit(g, variant, hyp.delta);

    let mut rows: Vec<(&str, String)> = vec![
        ("graph", path.display().to_string()),
        ("vertices", g.n().to_string()),
        ("edges", g.m().to_string()),
        ("delta", hyp.delta.to_string()),
        ("mad", format!("{} ({})", format_rational(&hyp.mad), decimal(&hyp.mad))),
        ("variant", variant.to_string()),
        ("hypotheses", if hyp.holds() { "hold".into() } else { hypothesis_text(&hyp) }),
        ("lists", format!("random k={k} palette={} seed={seed}", 2 * k)),
    ];
    let mut code = 0;
    let verdict = match &colored {
        Ok(out) => {
            let report = validate_coloring(g, &out.coloring, Some(&lists))?;
            let reductions = out.trace.reductions().count();
            let bases = out.trace.events.len() - reductions;
            rows.push(("reductions", reductions.to_string()));
            rows.push(("base cases", bases.to_string()));
            rows.push(("colors used", out.coloring.distinct_colors().to_string()));
            rows.push(("conflicts", report.conflicts.len().to_string()));
            rows.push(("list violations", report.list_violations.len().to_string()));
            if report.is_valid() {
                format!("COLORING VALID, k=Δ+3 ({k})")
            } else {
                code = 1;
                format!("COLORING INVALID, k=Δ+3 ({k})")
            }
        }
        Err(e) => {
            code = 1;
            rows.push(("colorer", e.to_string()));
            format!("COLORING FAILED, k=Δ+3 ({k})")
        }
    };
    rows.push(("charge before", format_rational(&audit_report.sum_before)));
    rows.push(("charge after", format_rational(&audit_report.sum_after)));
    rows.push(("negative charges", audit_report.negative.len().to_string()));
    if let Some(c) = &audit_report.explanation {
        rows.push(("explained by", config_text(c, &gf)));
    }

    let mut text = String::new();
    for (key, value) in rows {
        if lines {
            let _ = writeln!(text, "{} {value}", key.replace(' ', "_"));
        } else {
            let _ = writeln!(text, "{key:<17}{value}");
        }
    }
    let _ = writeln!(text, "{verdict}");
    Ok((text, code))
}
