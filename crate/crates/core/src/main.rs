fn main() {
    std::process::exit(fogdna::cli::run(std::env::args_os()));
}
