fn main() {
    std::process::exit(groupgrowth::cli::main_entry());
}
