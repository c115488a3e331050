fn main() {
    std::process::exit(riesz_clifford::cli::main());
}
