//! Experiment runner behind the `gcditer` binary.

mod config;
mod report;

use std::fmt;
use std::io::Write;

use gcditer::Error;

pub use config::{Cli, Experiment, ExperimentConfig, Format};

#[derive(Debug)]
pub enum CliError {
    /// A parameter failed to parse or violates a module precondition.
    Input { param: &'static str, source: Error },
    Engine(Error),
    Io(std::io::Error),
}

impl CliError {
    /// 2 for bad input, 3 for mathematical failures, 1 for I/O trouble.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Engine(e) if e.is_mathematical() => 3,
            CliError::Engine(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input { param, source } => write!(f, "{param}: {source}"),
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

/// Runs the experiment on a dedicated pool of `config.workers` threads and
/// returns the formatted report.
pub fn render(config: &ExperimentConfig) -> Result<String, CliError> {
    if config.k_max == 0 {
        return Err(CliError::Input {
            param: "--k-max",
            source: Error::Precondition {
                param: "k_max",
                reason: "must be at least 1".into(),
            },
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
    let report = pool.install(|| report::build(config))?;
    Ok(match config.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    })
}

/// Renders the report, writes it to `--out` or standard output and returns
/// the process exit status.
pub fn run(config: &ExperimentConfig) -> i32 {
    let outcome = render(config).and_then(|text| {
        match &config.out {
            Some(path) => std::fs::write(path, text),
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        }
        .map_err(CliError::Io)
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("gcditer {}: {e}", config.experiment.name());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(experiment: Experiment, k_max: u64, format: Format) -> ExperimentConfig {
        ExperimentConfig {
            experiment,
            k_max,
            format,
            out: None,
            workers: 2,
        }
    }

    #[test]
    fn exit_code_mapping() {
        let parse = Error::Parse {
            input: "x".into(),
            pos: 0,
            reason: "bad".into(),
        };
        assert_eq!(CliError::Input { param: "--a", source: parse.clone() }.exit_code(), 2);
        assert_eq!(CliError::Engine(parse).exit_code(), 2);
        let broken = Error::StructuralFailure { k: 3, detail: "x".into() };
        assert_eq!(CliError::Engine(broken).exit_code(), 3);
        let violated = Error::TheoremViolation { k: 3, detail: "x".into() };
        assert_eq!(CliError::Engine(violated).exit_code(), 3);
    }

    #[test]
    fn csv_rows_carry_polynomial_contents() {
        let exp = Experiment::PolyMat {
            matrix: "t,0;0,t+1".into(),
            stability_window: None,
        };
        let text = render(&config(exp, 6, Format::Csv)).unwrap();
        assert_eq!(text.lines().next(), Some("k,content,is_primitive"));
        assert_eq!(text.lines().nth(6), Some("6,t^2+t+1,false"));
    }

    #[test]
    fn error_names_parameter() {
        let exp = Experiment::PolyGcd {
            f: "t".into(),
            g: "t+".into(),
            stability_window: None,
        };
        let err = render(&config(exp, 6, Format::Json)).unwrap_err();
        assert!(err.to_string().starts_with("--g:"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }
}
