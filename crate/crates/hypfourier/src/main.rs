fn main() {
    std::process::exit(hypfourier::cli::run(std::env::args()));
}
