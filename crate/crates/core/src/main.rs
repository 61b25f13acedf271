fn main() {
    std::process::exit(qmain::cli::main());
}
