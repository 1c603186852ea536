fn main() {
    std::process::exit(powercol::cli::run(std::env::args_os()));
}
