fn main() {
    std::process::exit(nonhermitian::cli::main_with_args(std::env::args_os()));
}
