//! Command line front end for the cdlat pipeline.
//!
//! Exit codes: 0 on success, 1 on user or input errors, 2 when an internal
//! structural invariant fails (in `analyze`) or a theorem check fails (in
//! `survey`) - those cannot happen on valid groups, so they signal bugs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cdlat::density::is_dense_cd_capped;
use cdlat::lattice::enumerate_subgroups_capped;
use cdlat::measure::cd_lattice;
use cdlat::properties::SubgroupWitness;
use cdlat::report::{analyze_text, run_survey, AnalysisOptions};
use cdlat::{hasse_dot, parse_spec, Caps, DEFAULT_WITNESS_CAP};

#[derive(Parser)]
#[command(
    name = "cdlat",
    version,
    about = "Chermak-Delgado lattices and density for finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on one group spec and print a report.
    Analyze {
        /// Group spec, e.g. "S(3)", "ES32('-')" or "C(3) X D(8)".
        spec: String,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Include per-stage timings (volatile across runs).
        #[arg(long)]
        timings: bool,
        /// Override the group order cap.
        #[arg(long)]
        max_order: Option<usize>,
        /// Bound on retained density failure witnesses.
        #[arg(long)]
        witness_cap: Option<usize>,
    },
    /// Analyze the whole constructor corpus and verify both theorems.
    Survey {
        /// Largest group order to include.
        #[arg(long)]
        max_order: u64,
        /// Write the JSON document here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Emit the subgroup lattice as a DOT Hasse diagram.
    Hasse {
        spec: String,
        /// Output path for the DOT document.
        #[arg(long)]
        out: PathBuf,
    },
    /// Density verdict and failure witnesses only.
    Density {
        spec: String,
        #[arg(long)]
        witness_cap: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

/// Writes to standard output, treating a closed pipe (e.g. `| head`) as a
/// normal end of output rather than an error.
fn write_stdout(text: &str) -> Result<(), String> {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(format!("cannot write to stdout: {e}")),
    }
}

/// Reads the default caps, honoring the CDLAT_MAX_ORDER and
/// CDLAT_SUBGROUP_CAP environment variables.
fn caps_from_env() -> Result<Caps, String> {
    let mut caps = Caps::default();
    if let Some(value) = env_usize("CDLAT_MAX_ORDER")? {
        caps.max_order = value;
    }
    if let Some(value) = env_usize("CDLAT_SUBGROUP_CAP")? {
        caps.max_subgroups = value;
    }
    Ok(caps)
}

fn env_usize(name: &str) -> Result<Option<usize>, String> {
    match std::env::var(name) {
        Ok(text) => text
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("{name} must be a positive integer, got '{text}'")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(std::env::VarError::NotUnicode(_)) => Err(format!("{name} is not valid unicode")),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let caps = caps_from_env()?;
    match cli.command {
        Command::Analyze {
            spec,
            json,
            timings,
            max_order,
            witness_cap,
        } => {
            let mut options = AnalysisOptions {
                caps,
                witness_cap: witness_cap.unwrap_or(DEFAULT_WITNESS_CAP),
            };
            if let Some(order) = max_order {
                options.caps.max_order = order;
            }
            let analysis = analyze_text(&spec, &options).map_err(|e| e.to_string())?;
            let report = analysis.report(timings);
            if json {
                write_stdout(&report.to_json())?;
            } else {
                write_stdout(&report.render_text())?;
            }
            if !analysis.properties.all_passed() {
                eprintln!(
                    "internal invariant violation: a structural property of the \
                     Chermak-Delgado lattice failed; this indicates a bug"
                );
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Survey {
            max_order,
            out,
            jobs,
        } => {
            let output = run_survey(max_order, jobs, &caps).map_err(|e| e.to_string())?;
            let json = output.to_json();
            match &out {
                Some(path) => {
                    std::fs::write(path, &json)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    write_stdout(&output.render_summary())?;
                }
                None => {
                    write_stdout(&json)?;
                    eprint!("{}", output.render_summary());
                }
            }
            if !output.all_theorems_passed() {
                eprintln!("internal invariant violation: a theorem check failed on the corpus");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hasse { spec, out } => {
            let parsed = parse_spec(&spec).map_err(|e| e.to_string())?;
            let group = parsed.build_capped(&caps).map_err(|e| e.to_string())?;
            let lattice =
                enumerate_subgroups_capped(&group, caps.max_subgroups).map_err(|e| e.to_string())?;
            let cd = cd_lattice(&group, &lattice);
            std::fs::write(&out, hasse_dot(&lattice, &cd))
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Density { spec, witness_cap } => {
            let parsed = parse_spec(&spec).map_err(|e| e.to_string())?;
            let group = parsed.build_capped(&caps).map_err(|e| e.to_string())?;
            let lattice =
                enumerate_subgroups_capped(&group, caps.max_subgroups).map_err(|e| e.to_string())?;
            let cd = cd_lattice(&group, &lattice);
            let verdict =
                is_dense_cd_capped(&lattice, &cd, witness_cap.unwrap_or(DEFAULT_WITNESS_CAP));
            let mut text = format!(
                "dense       {}\npairs       {}\n",
                verdict.dense, verdict.pairs_checked
            );
            for &(h, k) in &verdict.failures {
                let h = SubgroupWitness::from_lattice(&lattice, h);
                let k = SubgroupWitness::from_lattice(&lattice, k);
                text.push_str(&format!(
                    "failure     H of order {} {:?} < K of order {} {:?}\n",
                    h.order, h.elements, k.order, k.elements
                ));
            }
            write_stdout(&text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
