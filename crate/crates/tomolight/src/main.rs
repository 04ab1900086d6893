fn main() {
    std::process::exit(tomolight::cli::run(std::env::args_os()));
}
