fn main() {
    std::process::exit(gelfand_core::cli::run(std::env::args_os()));
}
