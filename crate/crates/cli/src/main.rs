fn main() {
    std::process::exit(fbpaths_cli::run_command(std::env::args_os()));
}
