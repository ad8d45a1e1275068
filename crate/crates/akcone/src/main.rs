fn main() {
    std::process::exit(akcone::cli::run(std::env::args_os()));
}
