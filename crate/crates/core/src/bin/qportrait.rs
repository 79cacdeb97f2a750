fn main() {
    std::process::exit(qportrait::cli::run(std::env::args_os()));
}
