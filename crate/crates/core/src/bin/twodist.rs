fn main() {
    std::process::exit(twodist::cli::run(std::env::args_os()));
}
