fn main() {
    std::process::exit(sclab::main_with_args(std::env::args_os()));
}
