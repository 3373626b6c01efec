fn main() {
    std::process::exit(schreier_lab::cli::main());
}
