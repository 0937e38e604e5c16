fn main() {
    std::process::exit(hermite_heun::cli::run(std::env::args_os()));
}
