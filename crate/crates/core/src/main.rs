fn main() {
    std::process::exit(plane_curves::cli::main_from_env());
}
