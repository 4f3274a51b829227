fn main() {
    std::process::exit(casing_cli::cli_main(std::env::args_os()));
}
