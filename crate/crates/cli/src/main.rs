fn main() {
    std::process::exit(sylwave_cli::cli_main(std::env::args_os()));
}
