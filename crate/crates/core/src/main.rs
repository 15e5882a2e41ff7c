fn main() {
    std::process::exit(ruledcodes::cli::run(std::env::args_os()));
}
