fn main() {
    std::process::exit(invariance_entropy::cli::run(std::env::args_os()));
}
