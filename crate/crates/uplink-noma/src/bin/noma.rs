use std::process::ExitCode;

fn main() -> ExitCode {
    uplink_noma::cli::cli_main()
}
