fn main() {
    std::process::exit(dimer_exciton::cli::main_with_args(std::env::args_os()));
}
