fn main() {
    std::process::exit(lindeloef::cli::run(std::env::args_os()));
}
