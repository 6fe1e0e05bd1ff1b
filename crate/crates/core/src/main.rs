fn main() {
    std::process::exit(infrasolv::cli::run());
}
