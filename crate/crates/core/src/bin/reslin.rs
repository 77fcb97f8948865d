use std::io::{self, BufReader};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdin = io::stdin();
    let mut input = BufReader::new(stdin.lock());
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    let code = reslin::cli::run(std::env::args_os(), &mut input, &mut out, &mut err);
    ExitCode::from(code as u8)
}
