//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs under `cargo test` with `harness = false`.

use std::process::ExitCode;
use std::time::Instant;

use twodist::density::{check_planar_girth_bound, induced_average_degree, mad_brute, ratio, BRUTE_LIMIT};
use twodist::discharge::{apply_rules, audit, ChargeLedger};
use twodist::oracle::{chi2, DEFAULT_CAP};
use twodist::testkit::{connected_graphs, gen_lists, gen_sparse, random_graph, random_min_degree2, ListMode};
use twodist::{
    color_two_distance, find_configuration, mad_exact, validate_coloring, ColorerConfig, Graph, Rational, Variant,
};

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

/// Conservation checked against an independent count: the charge sum is
/// `a * 2m - b * n` for charge `a*d - b`.
fn conserved(g: &Graph, l: &ChargeLedger, variant: Variant) -> bool {
    let (a, b) = match variant {
        Variant::T1 => (3, 8),
        Variant::T2 => (5, 14),
    };
    let expected = ratio(a * 2 * g.m() as i64 - b * g.n() as i64, 1);
    l.sum_before() == expected && l.sum_after() == expected
}

struct ColoringRun {
    colored: usize,
    total: usize,
    conserved: usize,
    failures: Vec<String>,
}

fn constructive(variant: Variant) -> ColoringRun {
    let mut run = ColoringRun { colored: 0, total: 0, conserved: 0, failures: Vec::new() };
    for i in 0..200u64 {
        let n = 13 + (i as usize * 37) % 48;
        let g = match gen_sparse(n, variant, i) {
            Ok(g) => g,
            Err(e) => {
                run.total += 5;
                run.failures.push(e.to_string());
                continue;
            }
        };
        if conserved(&g, &apply_rules(&g, variant), variant) {
            run.conserved += 1;
        }
        let k = g.max_degree().unwrap() + 3;
        let mut assignments = vec![gen_lists(&g, k, ListMode::Shifted, 0)];
        assignments.extend((0..4).map(|j| gen_lists(&g, k, ListMode::Random, i * 4 + j)));
        for lists in assignments {
            run.total += 1;
            match color_two_distance(&g, &lists, variant, ColorerConfig::default()) {
                Ok(out) if validate_coloring(&g, &out.coloring, Some(&lists)).unwrap().is_valid() => run.colored += 1,
                Ok(_) => run.failures.push(format!("graph {i} (n={n}): invalid coloring")),
                Err(e) => run.failures.push(format!("graph {i} (n={n}): {e}")),
            }
        }
    }
    run
}

struct SoundnessRun {
    checked: usize,
    violations: usize,
    conserved: usize,
    graphs: usize,
}

fn soundness_check(g: &Graph, variant: Variant, run: &mut SoundnessRun) {
    run.graphs += 1;
    let delta = g.max_degree().unwrap();
    let report = audit(g, variant, delta);
    if conserved(g, &report.ledger, variant) {
        run.conserved += 1;
    }
    if find_configuration(g, variant, delta).is_none() {
        run.checked += 1;
        if !report.all_nonnegative() {
            run.violations += 1;
        }
    }
}

fn soundness_t1() -> SoundnessRun {
    let mut run = SoundnessRun { checked: 0, violations: 0, conserved: 0, graphs: 0 };
    for n in 5..=8 {
        for g in connected_graphs(n) {
            if g.min_degree() >= Some(2) && g.max_degree().unwrap() >= 4 {
                soundness_check(&g, Variant::T1, &mut run);
            }
        }
    }
    run
}

fn soundness_t2() -> SoundnessRun {
    let mut run = SoundnessRun { checked: 0, violations: 0, conserved: 0, graphs: 0 };
    for seed in 0..10_000u64 {
        let n = 7 + (seed % 3) as usize;
        let p = [0.05, 0.1, 0.2, 0.35][(seed / 3 % 4) as usize];
        let g = random_min_degree2(n, 6, p, seed).expect("n > 6");
        soundness_check(&g, Variant::T2, &mut run);
    }
    run
}

/// Hand-built local configurations. Vertices of prescribed degree are padded
/// with leaves, which give and receive nothing.
struct Gadget {
    edges: Vec<(usize, usize)>,
    n: usize,
}

impl Gadget {
    fn new() -> Self {
        Gadget { edges: Vec::new(), n: 0 }
    }

    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    fn pad(&mut self, v: usize, d: usize) {
        while self.degree(v) < d {
            let leaf = self.vertex();
            self.edge(v, leaf);
        }
    }

    /// A new neighbor of `u` padded to degree `d`.
    fn neighbor(&mut self, u: usize, d: usize) -> usize {
        let x = self.vertex();
        self.edge(u, x);
        self.pad(x, d);
        x
    }

    /// A 1-path from `u` through a new 2-vertex to a new end of degree `d`.
    fn one_path(&mut self, u: usize, d: usize) -> usize {
        let mid = self.vertex();
        let end = self.vertex();
        self.edge(u, mid);
        self.edge(mid, end);
        self.pad(end, d);
        mid
    }

    fn final_charge(&self, v: usize, variant: Variant) -> Rational {
        let g = Graph::from_edges(self.n, &self.edges).unwrap();
        apply_rules(&g, variant).mu_star[v].clone()
    }
}

/// A 3-vertex adjacent to `u` with signature (1,1,0).
fn attach_110(g: &mut Gadget, u: usize) {
    let v = g.vertex();
    g.edge(u, v);
    g.one_path(v, 3);
    g.one_path(v, 3);
}

fn gadgets_t1() -> Vec<(&'static str, Rational, Rational)> {
    let t = Variant::T1;
    let zero = ratio(0, 1);
    let mut out = Vec::new();

    let mut g = Gadget::new();
    let a = g.vertex();
    let mid = g.one_path(a, 3);
    g.pad(a, 3);
    out.push(("2-vertex", g.final_charge(mid, t), zero.clone()));

    for (name, d) in [("(1,1,0) next to a (0,0,0)-vertex", 3), ("(1,1,0) next to a 4+-vertex", 4)] {
        let mut g = Gadget::new();
        let u = g.vertex();
        g.one_path(u, 3);
        g.one_path(u, 3);
        let v = g.vertex();
        g.edge(u, v);
        for _ in 1..d {
            g.neighbor(v, 3);
        }
        out.push((name, g.final_charge(u, t), zero.clone()));
    }

    let mut g = Gadget::new();
    let u = g.vertex();
    g.one_path(u, 3);
    g.neighbor(u, 3);
    g.neighbor(u, 3);
    out.push(("(1,0,0)", g.final_charge(u, t), zero.clone()));

    let mut g = Gadget::new();
    let u = g.vertex();
    g.neighbor(u, 4);
    attach_110(&mut g, u);
    attach_110(&mut g, u);
    out.push(("(0,0,0) with a 4+-neighbor", g.final_charge(u, t), zero.clone()));

    let mut g = Gadget::new();
    let u = g.vertex();
    for _ in 0..4 {
        g.one_path(u, 3);
    }
    out.push(("4-vertex with four 2-neighbors", g.final_charge(u, t), zero));
    out
}

fn gadgets_t2() -> Vec<(&'static str, Rational, Rational)> {
    let t = Variant::T2;
    let mut out = Vec::new();
    let mut case = |name: &'static str, build: &dyn Fn(&mut Gadget, usize), expected: Rational| {
        let mut g = Gadget::new();
        let u = g.vertex();
        build(&mut g, u);
        out.push((name, g.final_charge(u, t), expected));
    };

    case(
        "(1,1,0), Δ-ends, 5+-neighbor",
        &|g, u| {
            g.one_path(u, 6);
            g.one_path(u, 6);
            g.neighbor(u, 6);
        },
        ratio(1, 3),
    );
    case(
        "(1,0,0) with a 5+-neighbor",
        &|g, u| {
            g.one_path(u, 3);
            g.neighbor(u, 5);
            g.neighbor(u, 3);
        },
        ratio(1, 1),
    );
    case(
        "(1,0,0) with two 4-neighbors",
        &|g, u| {
            g.one_path(u, 3);
            g.neighbor(u, 4);
            g.neighbor(u, 4);
        },
        ratio(0, 1),
    );
    case(
        "(1,0,0) with 4- and 3-neighbor, Δ-end",
        &|g, u| {
            g.one_path(u, 6);
            g.neighbor(u, 4);
            g.neighbor(u, 3);
        },
        ratio(1, 6),
    );
    case(
        "(1,1,1,1) with four Δ-ends",
        &|g, u| {
            for _ in 0..4 {
                g.one_path(u, 6);
            }
        },
        ratio(2, 3),
    );
    case(
        "(1,1,1,0) with a 4+-neighbor",
        &|g, u| {
            for _ in 0..3 {
                g.one_path(u, 4);
            }
            g.neighbor(u, 4);
        },
        ratio(0, 1),
    );
    case(
        "(1,1,1,0) with a 3-neighbor, 5-ends",
        &|g, u| {
            for _ in 0..3 {
                g.one_path(u, 5);
            }
            g.neighbor(u, 3);
        },
        ratio(1, 10),
    );
    case(
        "(1,1,0,0) with two 3-neighbors",
        &|g, u| {
            g.one_path(u, 3);
            g.one_path(u, 3);
            g.neighbor(u, 3);
            g.neighbor(u, 3);
        },
        ratio(1, 1),
    );
    case(
        "5-vertex, five 1-paths to 3-vertices",
        &|g, u| {
            for _ in 0..5 {
                g.one_path(u, 3);
            }
        },
        ratio(0, 1),
    );
    case(
        "6-vertex, six 1-paths to 3-vertices",
        &|g, u| {
            for _ in 0..6 {
                g.one_path(u, 3);
            }
        },
        ratio(0, 1),
    );
    out
}

fn mad_check() -> Verdict {
    let mut bad = Vec::new();
    for seed in 0..200u64 {
        let n = 1 + (seed % 10) as usize;
        let p = [0.2, 0.4, 0.6, 0.8][(seed / 10 % 4) as usize];
        let g = random_graph(n, p, seed);
        let exact = mad_exact(&g).unwrap();
        let brute = mad_brute(&g, BRUTE_LIMIT).unwrap();
        if exact.value != brute.value || induced_average_degree(&g, &exact.witness) != exact.value {
            bad.push(seed);
        }
    }
    verdict(bad.is_empty(), format!("200 random graphs n ≤ 10, mismatching seeds {bad:?}"))
}

fn oracle_check() -> Verdict {
    let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    let mut pet = Vec::new();
    for i in 0..5 {
        pet.extend([(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]);
    }
    let petersen = Graph::from_edges(10, &pet).unwrap();
    let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    let named =
        [chi2(&c5, DEFAULT_CAP) == Ok(5), chi2(&petersen, DEFAULT_CAP) == Ok(10), chi2(&star, DEFAULT_CAP) == Ok(5)];
    let mut tested = 0;
    let mut out_of_bounds = 0;
    let pool = (2..=6).flat_map(connected_graphs).chain((0..100).map(|s| random_graph(10, 0.3, s)));
    for g in pool.chain([c5, petersen, star]) {
        let d = g.max_degree().unwrap();
        let x = chi2(&g, DEFAULT_CAP).unwrap();
        tested += 1;
        if x < d + 1 || x > d * d + 1 {
            out_of_bounds += 1;
        }
    }
    verdict(
        named.iter().all(|&b| b) && out_of_bounds == 0,
        format!("C5/Petersen/K1,4 = {named:?}; Δ+1 ≤ χ² ≤ Δ²+1 on {tested} graphs, {out_of_bounds} outside"),
    )
}

fn girth_bound_check() -> Verdict {
    let a = check_planar_girth_bound(&ratio(8, 3), 8);
    let b = check_planar_girth_bound(&ratio(14, 5), 7);
    let c = check_planar_girth_bound(&ratio(5, 2), 8);
    verdict(!a && !b && c, format!("(8/3,8) → {a}, (14/5,7) → {b}, (5/2,8) → {c}"))
}

fn determinism_check() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.txt");
    let g = gen_sparse(40, Variant::T1, 11).unwrap();
    std::fs::write(&path, twodist::io::write_graph(&g, &[])).unwrap();
    let p = path.to_str().unwrap();
    let argv = ["twodist", "verify", "--variant", "t1", "--seed", "5", "--format", "lines", p];
    let run = || {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = twodist::cli::run_with(argv, &mut out, &mut err);
        (code, out)
    };
    let (c1, o1) = run();
    let (c2, o2) = run();
    let text = String::from_utf8_lossy(&o1);
    let valid = text.lines().last().is_some_and(|l| l.starts_with("COLORING VALID, k=Δ+3"));
    verdict(
        c1 == 0 && c2 == 0 && o1 == o2 && valid,
        format!("exit {c1}/{c2}, {} bytes, identical: {}, valid: {valid}", o1.len(), o1 == o2),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results: Vec<(u32, &str, Verdict)> = Vec::new();

    let r1 = constructive(Variant::T1);
    let r2 = constructive(Variant::T2);
    for (id, name, r) in
        [(1, "constructive theorem 1 (mad < 8/3, Δ ≥ 4)", &r1), (2, "constructive theorem 2 (mad < 14/5, Δ ≥ 6)", &r2)]
    {
        let mut detail = format!("{}/{} colorings valid", r.colored, r.total);
        if let Some(f) = r.failures.first() {
            detail.push_str(&format!("; first failure: {f}"));
        }
        results.push((id, name, verdict(r.colored == 1000 && r.total == 1000, detail)));
    }

    let s1 = soundness_t1();
    let s2 = soundness_t2();
    results.push((
        3,
        "discharging soundness",
        verdict(
            s1.violations == 0 && s2.violations == 0 && s2.graphs >= 10_000,
            format!(
                "T1 exhaustive n ≤ 8: {} configuration-free of {} graphs, {} violations; T2 {} seeds n ≤ 9: {} configuration-free, {} violations",
                s1.checked, s1.graphs, s1.violations, s2.graphs, s2.checked, s2.violations
            ),
        ),
    ));

    let graphs = 400 + s1.graphs + s2.graphs;
    let kept = r1.conserved + r2.conserved + s1.conserved + s2.conserved;
    results.push((
        4,
        "charge conservation",
        verdict(kept == graphs, format!("{kept}/{graphs} graphs conserve exactly")),
    ));

    let gadgets: Vec<_> = gadgets_t1().into_iter().chain(gadgets_t2()).collect();
    let wrong: Vec<String> = gadgets
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, want)| format!("{name}: got {got}, want {want}"))
        .collect();
    results.push((
        5,
        "charge arithmetic on gadgets",
        verdict(wrong.is_empty(), format!("{} gadgets, mismatches {wrong:?}", gadgets.len())),
    ));

    results.push((6, "mad_exact agrees with brute force", mad_check()));
    results.push((7, "oracle sanity", oracle_check()));
    results.push((8, "planar girth bound strictness", girth_bound_check()));
    results.push((9, "verify determinism", determinism_check()));

    let mut failed = 0;
    for (id, name, v) in &results {
        println!("{} {id}. {name}: {}", if v.ok { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.ok);
    }
    println!("{}/{} criteria passed in {:.1}s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
