fn main() {
    std::process::exit(gclose::cli::run(std::env::args_os()));
}
