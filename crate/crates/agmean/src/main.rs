fn main() {
    std::process::exit(agmean::cli::main_entry());
}
