fn main() {
    std::process::exit(nazeta::cli::run(std::env::args_os()));
}
