fn main() {
    std::process::exit(muherm_cli::run(std::env::args_os()));
}
