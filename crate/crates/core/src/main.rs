fn main() {
    std::process::exit(superfiber::commands::main_with_args(std::env::args_os()));
}
