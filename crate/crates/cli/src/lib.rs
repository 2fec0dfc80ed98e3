//! Library half of the experiment runner; the binary in `main.rs` parses the
//! flags and dispatches here so integration tests can drive the same code.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;
pub mod verify;

use error::CliResult;

/// Execute one parsed command, writing its report (or verify table) per the
/// arguments.
pub fn run(cli: args::Cli) -> CliResult<()> {
    use args::Command::*;
    match &cli.command {
        Energies(a) => report::write_out(&commands::cmd_energies(a)?, &a.out),
        Profiles(a) => report::write_out(&commands::cmd_profiles(a)?, &a.out),
        Scaling(a) => report::write_out(&commands::cmd_scaling(a)?, &a.out),
        Spread(a) => report::write_out(&commands::cmd_spread(a, cli.max_grid_cells)?, &a.out),
        Density(a) => report::write_out(&commands::cmd_density(a, cli.max_grid_cells)?, &a.out),
        Verify => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let failures = verify::run_verify(&mut lock)?;
            if failures > 0 {
                return Err(error::CliError::VerifyFailed(failures));
            }
            Ok(())
        }
    }
}
