use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = dualpoly::cli::run_args(std::env::args_os());
    let code = dualpoly::cli::emit(&outcome, &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code as u8)
}
