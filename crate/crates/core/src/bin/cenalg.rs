fn main() {
    std::process::exit(cenalg::cli::run());
}
