fn main() {
    std::process::exit(regloc::cli::main_with_args(std::env::args_os()));
}
