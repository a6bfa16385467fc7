fn main() {
    std::process::exit(bernsplit::cli::run(std::env::args_os()));
}
