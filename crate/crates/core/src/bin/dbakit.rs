use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = dbakit::cli::run(std::env::args_os());
    let text = result.render();
    if result.code == dbakit::cli::EXIT_USAGE {
        eprint!("{text}");
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    ExitCode::from(result.code)
}
