fn main() {
    std::process::exit(polyloc::cli::main_with_args(std::env::args_os()));
}
