//! Command-line front end: brace verification, ratios, ideal censuses,
//! family sweeps and the worked-example regression table.

pub mod args;
pub mod commands;
pub mod error;
pub mod family;
pub mod fuzz;
pub mod input;
pub mod regression;
pub mod report;

use std::time::Instant;

pub use args::{Cli, Command, Format, RunConfig};
pub use error::{CliError, CliResult};
pub use report::{Outcome, Report};

/// Runs a parsed command on a rayon pool sized by `--jobs`.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let config = &cli.config;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = config.jobs {
        builder = builder.num_threads(jobs as usize);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {:?} workers: {e}", config.jobs)))?;
    let start = Instant::now();
    let mut outcome = pool.install(|| match &cli.command {
        Command::Verify(a) => commands::cmd_verify(a, config),
        Command::Ratio(a) => commands::cmd_ratio(a, config),
        Command::Ideals(a) => commands::cmd_ideals(a, config),
        Command::PaperExamples(a) => regression::cmd_paper_examples(a, config),
        Command::Family(a) => family::cmd_family(a, config),
    })?;
    if config.timing {
        let ms = start.elapsed().as_millis() as u64;
        outcome.report.timing_ms = Some(ms);
        outcome.text.push_str(&format!("elapsed: {ms} ms\n"));
    }
    Ok(outcome)
}

/// Parses arguments, runs, and returns `(exit code, stdout, stderr)`.
pub fn run_args<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                (0, rendered, String::new())
            } else {
                (2, String::new(), rendered)
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stderr = String::new();
            for d in &out.diagnostics {
                stderr.push_str(d);
                stderr.push('\n');
            }
            (out.exit, out.render(cli.config.format), stderr)
        }
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
