fn main() -> std::process::ExitCode {
    mcrank::cli::main_with_args(std::env::args_os())
}
