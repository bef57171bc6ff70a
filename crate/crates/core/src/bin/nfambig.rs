fn main() {
    std::process::exit(nfambig::cli::main_with_args(std::env::args_os()));
}
