fn main() {
    std::process::exit(ratline::cli::run_command(std::env::args_os()));
}
