fn main() {
    std::process::exit(mhdconv::cli::run(std::env::args()));
}
