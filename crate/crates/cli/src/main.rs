use std::io::IsTerminal;
use std::process::ExitCode;

fn main() -> ExitCode {
    let style = opp_cli::Style {
        enabled: std::io::stdout().is_terminal(),
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = opp_cli::run(
        std::env::args_os(),
        &mut stdout.lock(),
        &mut stderr.lock(),
        style,
    );
    ExitCode::from(code)
}
