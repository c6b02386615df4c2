fn main() {
    std::process::exit(endotriv::cli::run(std::env::args_os()));
}
