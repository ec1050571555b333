fn main() {
    std::process::exit(coxblow::cli::run(std::env::args_os()));
}
