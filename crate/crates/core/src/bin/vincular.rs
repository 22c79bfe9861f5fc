fn main() {
    std::process::exit(vincular::cli::main_from_env());
}
