use std::process::ExitCode;

fn main() -> ExitCode {
    match knotfill::cli::run(std::env::args_os()) {
        Ok(o) => {
            print!("{}", o.output);
            if o.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
