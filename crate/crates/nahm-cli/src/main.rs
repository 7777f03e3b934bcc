fn main() {
    std::process::exit(nahm_cli::main_with(std::env::args().collect()));
}
