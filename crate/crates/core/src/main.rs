fn main() {
    let code = fdwiretap::cli::run(std::env::args_os());
    std::process::exit(code);
}
