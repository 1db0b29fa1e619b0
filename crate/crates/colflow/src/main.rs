fn main() {
    std::process::exit(colflow::cli::run());
}
