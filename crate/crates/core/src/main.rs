fn main() {
    std::process::exit(delegation_lobbying::cli::run(std::env::args_os()));
}
