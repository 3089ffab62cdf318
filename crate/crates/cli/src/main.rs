mod args;
mod output;
mod record;
mod verify;

use std::process::ExitCode;

use berry_spin::{solve_commensurate, Error, ModelParams};
use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format, OutputArgs, PhysicsArgs, SweepArgs};
use record::Record;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Failure surfaced to the user: a code for standard error and an exit status.
struct Failure {
    code: &'static str,
    message: String,
    status: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::AmplitudeVanished { .. } | Error::ExtrapolationFailed { .. } => {
                EXIT_VERIFY_FAILED
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code: e.code(),
            message: e.to_string(),
            status,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: "io",
            message: e.to_string(),
            status: EXIT_USAGE,
        }
    }
}

fn params_json(physics: &PhysicsArgs) -> Value {
    json!({
        "omega": physics.omega,
        "omega_ratio": physics.omega_ratio,
        "cos_beta": physics.cos_beta,
        "alpha": physics.alpha,
        "gauge_a": physics.gauge_a,
        "gauge_b": physics.gauge_b,
    })
}

fn spec_json(spec: &SweepArgs) -> Value {
    json!({
        "variable": spec.variable.column(),
        "start": spec.start,
        "stop": spec.stop,
        "samples": spec.samples,
        "scale": if spec.log { "log" } else { "linear" },
        "time_unit": format!("{:?}", spec.time_unit).to_lowercase(),
    })
}

fn emit(out: &OutputArgs, params: Value, spec: Value, records: &[Record]) -> Result<(), Failure> {
    output::with_sink(out.output.as_deref(), |w| match out.format {
        Format::Csv => output::write_csv(w, records),
        Format::Json => {
            let doc = output::to_json(params, spec, records);
            serde_json::to_writer_pretty(&mut *w, &doc)?;
            writeln!(w)
        }
    })?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Evolve {
            physics,
            time,
            output,
        } => {
            let p = physics.params()?;
            let (unit, value) = time.unit_and_value();
            let t = record::absolute_time(&p, unit, value)?;
            berry_spin::decompose(&p, t)?;
            let rec = record::evaluate(&p, t, None);
            emit(&output, params_json(&physics), Value::Null, &[rec])?;
            Ok(0)
        }
        Command::Sweep {
            physics,
            sweep,
            output,
        } => {
            let records = record::sweep(&physics, &sweep)?;
            emit(&output, params_json(&physics), spec_json(&sweep), &records)?;
            let vanished = records.iter().filter(|r| !r.has_phases()).count();
            if vanished > 0 {
                eprintln!("warning: {vanished} rows with vanished |C1|; phase columns left empty");
            }
            Ok(0)
        }
        Command::Commensurate { n, m, cos_beta } => {
            let beta = ModelParams::from_cos_beta(1.0, 0.0, cos_beta)?.beta;
            let solutions = match solve_commensurate(n, m, beta) {
                Ok(s) => s,
                Err(e @ (Error::NoSolution { .. } | Error::NoPositiveRoot)) => {
                    eprintln!("note: {e}");
                    Vec::new()
                }
                Err(e) => return Err(e.into()),
            };
            let list: Vec<Value> = solutions
                .iter()
                .map(|s| {
                    json!({
                        "n": s.n,
                        "m": s.m,
                        "omega_t_prime": s.omega_t_prime,
                        "branch": s.branch.as_str(),
                        "ratio_residual": s.ratio_residual,
                        "c2_residual": s.c2_residual,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&list).expect("serializable")
            );
            Ok(0)
        }
        Command::Verify {
            physics,
            t_max,
            steps_per_period,
        } => {
            let p = physics.params()?;
            let checks = verify::run(&p, t_max, steps_per_period)?;
            print!("{}", verify::render(&checks));
            Ok(if checks.iter().all(|c| c.passed()) {
                0
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                // --help / --version
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            eprintln!("{}", output::error_json("usage", msg.trim()));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status),
        Err(f) => {
            eprintln!("{}", output::error_json(f.code, &f.message));
            ExitCode::from(f.status)
        }
    }
}
