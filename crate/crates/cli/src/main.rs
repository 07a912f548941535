use std::io::Write;

use pidwidth::cli::{main_with, stdout_wants_color, Output};

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = main_with(
        std::env::args_os(),
        &mut Output {
            out: &mut out,
            err: &mut err,
            color: stdout_wants_color(),
        },
    );
    let _ = out.flush();
    std::process::exit(code);
}
