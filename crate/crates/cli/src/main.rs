fn main() {
    std::process::exit(foliage_cli::main_with_args(std::env::args_os()));
}
