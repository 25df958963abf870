fn main() {
    std::process::exit(geoscale::cli::main());
}
