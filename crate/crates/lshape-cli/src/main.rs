fn main() {
    std::process::exit(lshape_cli::run(std::env::args_os()));
}
