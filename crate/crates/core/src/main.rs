use std::process::ExitCode;

fn main() -> ExitCode {
    qsorep::cli::main()
}
