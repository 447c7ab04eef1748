fn main() {
    std::process::exit(sqk_cli::run(std::env::args_os()));
}
