fn main() {
    std::process::exit(hillband::cli::run());
}
