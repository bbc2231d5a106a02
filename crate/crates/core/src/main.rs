fn main() {
    std::process::exit(hydroshift::cli::run());
}
