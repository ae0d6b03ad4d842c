fn main() {
    std::process::exit(moessner::cli::main());
}
