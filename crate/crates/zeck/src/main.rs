fn main() {
    let code = zeck::cli::run_main(std::env::args_os());
    std::process::exit(code);
}
