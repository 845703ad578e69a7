fn main() {
    std::process::exit(pfl_cli::app::main());
}
