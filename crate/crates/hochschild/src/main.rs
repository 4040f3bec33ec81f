fn main() {
    std::process::exit(hochschild::cli::main_with_args(std::env::args_os()));
}
