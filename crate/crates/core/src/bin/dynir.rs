fn main() {
    std::process::exit(dynir::cli::run(std::env::args_os()));
}
