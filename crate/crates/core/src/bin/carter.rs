fn main() {
    std::process::exit(carter::cli::cli_main(std::env::args_os()));
}
