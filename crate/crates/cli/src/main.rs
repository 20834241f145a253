fn main() {
    std::process::exit(geoverlap_cli::run(std::env::args_os()));
}
