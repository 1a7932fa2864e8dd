fn main() {
    let (code, report) = rimsurf_cli::run(std::env::args_os());
    std::process::exit(rimsurf_cli::emit(code, &report));
}
