fn main() {
    std::process::exit(spincouple::cli::run(std::env::args_os()));
}
