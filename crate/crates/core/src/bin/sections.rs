fn main() {
    std::process::exit(sections_core::cli::main_with_env());
}
