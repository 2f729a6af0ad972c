fn main() {
    std::process::exit(qsum_cli::main_with(std::env::args_os()));
}
