fn main() {
    std::process::exit(hubbard_swd::cli::main_entry());
}
