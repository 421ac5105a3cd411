fn main() {
    std::process::exit(optuple::cli::main_entry());
}
