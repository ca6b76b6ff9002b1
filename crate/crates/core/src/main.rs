fn main() {
    std::process::exit(shannon_lattice::cli::run(std::env::args_os()));
}
