use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = gtpop::cli::run(std::env::args_os());
    if code == 2 {
        eprintln!("{}", out.trim_end());
    } else {
        println!("{}", out.trim_end());
    }
    ExitCode::from(code as u8)
}
