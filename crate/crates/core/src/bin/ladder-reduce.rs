fn main() {
    std::process::exit(ladder_reduce::cli::main_with_args(std::env::args_os()));
}
