//! `entdist`: reproduce figures and tables, run the verification suites and
//! search for inequality violations.
//!
//! Exit codes: 0 on success, 1 when verification fails or a run errors, 2 on
//! usage errors and invalid parameters.

mod gnuplot;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use entdist::channels::{self, ChannelSpec};
use entdist::par::Execution;
use entdist::protocols::{
    ame_protocol, catalysis_compare, direct_then_indirect_with, figure_sweeps, format_g9,
    indirect_noisy_with, noisy_labs_with, search_violation_with, table1_scan, ComTiming, Figure,
    FigureOptions, Grouping, Residual, Scenario, SweepResult, TABLE1_PARTITIONS,
};
use entdist::verify::{run_criterion, Suite, VerifyConfig};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "entdist", version, about = "Entanglement-distribution protocol simulator")]
struct Cli {
    /// Evaluate grids and searches on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the sweep CSV behind a figure (fig3, fig4, fig5, fig7, fig9, fig11).
    Figure {
        name: Figure,
        /// Grid spacing of every axis.
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Restrict to one channel, optionally pinning its strength (`dephasing:0.3`).
        #[arg(long)]
        channel: Option<ChannelSpec>,
        /// Werner parameter of the fixed-p panels.
        #[arg(long)]
        p: Option<f64>,
        /// Ancilla parameter of the fixed-s panels.
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, value_enum, default_value_t = Timing::After)]
        com_timing: Timing,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a gnuplot script next to the CSV.
        #[arg(long, requires = "out")]
        gnuplot: bool,
    },
    /// Separability pattern of the noisy AME state across the table partitions.
    Table1 {
        /// Mixing parameters to evaluate (default: 0.1, 0.2, ..., 0.9 plus 0.45 and 0.55).
        #[arg(long, num_args = 1..)]
        q: Vec<f64>,
        /// Emit CSV with negativities instead of the PPT/NPT table.
        #[arg(long)]
        csv: bool,
    },
    /// Run a verification suite; exits 1 if any criterion fails.
    Verify {
        suite: Suite,
        /// Haar samples per suite (overrides every default count).
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Comparison tolerance (overrides every default).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate one protocol run and print its record as JSON.
    Protocol {
        scenario: Scenario,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        /// Transit channel (`family[:strength]`); defaults to identity.
        #[arg(long)]
        channel: Option<ChannelSpec>,
        /// Local amplitude-damping strength in the noisy-labs scenario.
        #[arg(long)]
        local_delta: Option<f64>,
        /// Grouping `A:B:C` with 1-based labels, e.g. `2,4,5:1:3` (ame only).
        #[arg(long)]
        grouping: Option<Grouping>,
        #[arg(long, value_enum, default_value_t = Timing::After)]
        com_timing: Timing,
    },
    /// Search Haar states on [d_A, 2, 2] for violations and write witnesses as JSON.
    Search {
        #[arg(long)]
        da: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "theorem1")]
        residual: Residual,
        /// Directory receiving `witness_NNNN.json` files.
        #[arg(long, default_value = "witnesses")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Timing {
    After,
    Before,
}

impl From<Timing> for ComTiming {
    fn from(t: Timing) -> Self {
        match t {
            Timing::After => ComTiming::AfterChannel,
            Timing::Before => ComTiming::BeforeChannel,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(err) = configure_threads() {
        eprintln!("error: {err:#}");
        return ExitCode::from(2);
    }
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match run(cli.command, exec) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_invalid_input(&err) { 2 } else { 1 })
        }
    }
}

/// Sizes the global thread pool from `ENTDIST_THREADS`.
fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("ENTDIST_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("ENTDIST_THREADS must be a positive integer, got {value:?}"))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

/// Parameter and parse errors from the library count as usage errors.
fn is_invalid_input(err: &anyhow::Error) -> bool {
    use entdist::Error as E;
    err.chain().any(|cause| {
        matches!(
            cause.downcast_ref::<E>(),
            Some(
                E::ParameterOutOfRange { .. }
                    | E::InvalidAxis(_)
                    | E::AxisMismatch(_)
                    | E::InvalidGrouping(_)
                    | E::InvalidChannelSpec(_)
                    | E::UnknownScenario(_)
                    | E::UnknownFigure(_)
                    | E::UnknownSuite(_)
                    | E::UnknownMeasure(_)
                    | E::InvalidDims(_)
                    | E::InvalidBipartition(_)
                    | E::IndexOutOfRange { .. }
            )
        )
    })
}

fn usage_error(message: impl std::fmt::Display) -> ! {
    Cli::command()
        .error(clap::error::ErrorKind::ArgumentConflict, message)
        .exit()
}

fn run(command: Command, exec: Execution) -> Result<ExitCode> {
    match command {
        Command::Figure {
            name,
            step,
            channel,
            p,
            s,
            com_timing,
            out,
            gnuplot,
        } => {
            let opts = FigureOptions {
                step,
                channel,
                p,
                s,
                timing: com_timing.into(),
                exec,
            };
            let results = figure_sweeps(name, &opts)?;
            let csv = SweepResult::concat_csv(&results);
            match &out {
                Some(path) => {
                    write_file(path, &csv)?;
                    if gnuplot {
                        let script_path = path.with_extension("gp");
                        write_file(&script_path, &gnuplot::script(name, path, &results))?;
                    }
                }
                None => io::stdout().write_all(csv.as_bytes())?,
            }
        }
        Command::Table1 { q, csv } => table1(&q, csv)?,
        Command::Verify {
            suite,
            trials,
            seed,
            tol,
        } => {
            let cfg = VerifyConfig {
                trials,
                seed,
                tol,
                exec,
            };
            return verify(suite, &cfg);
        }
        Command::Protocol {
            scenario,
            q,
            p,
            s,
            channel,
            local_delta,
            grouping,
            com_timing,
        } => {
            let value = protocol(scenario, q, p, s, channel, local_delta, grouping, com_timing.into())?;
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        Command::Search {
            da,
            trials,
            seed,
            residual,
            out,
        } => search(da, trials, seed, residual, &out, exec)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn table1(qs: &[f64], csv: bool) -> Result<()> {
    let qs: Vec<f64> = if qs.is_empty() {
        let mut v: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        v.extend([0.45, 0.55]);
        v.sort_by(f64::total_cmp);
        v
    } else {
        qs.to_vec()
    };
    let mut out = io::stdout().lock();
    if csv {
        writeln!(out, "q,partition,negativity,ppt")?;
    } else {
        write!(out, "{:<6}", "q")?;
        for (label, _) in TABLE1_PARTITIONS {
            write!(out, " {label:>8}")?;
        }
        writeln!(out)?;
    }
    for q in qs {
        let row = table1_scan(q)?;
        if csv {
            for e in &row {
                writeln!(out, "{},{},{},{}", format_g9(q), e.partition, format_g9(e.negativity), e.ppt)?;
            }
        } else {
            write!(out, "{:<6}", format_g9(q))?;
            for e in &row {
                write!(out, " {:>8}", e.flag())?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

fn verify(suite: Suite, cfg: &VerifyConfig) -> Result<ExitCode> {
    let ids = suite.criteria();
    let mut passed = 0;
    for &id in &ids {
        let report = run_criterion(id, cfg)?;
        println!("{report}");
        passed += usize::from(report.passed);
    }
    println!("{passed}/{} criteria passed", ids.len());
    Ok(if passed == ids.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

#[allow(clippy::too_many_arguments)]
fn protocol(
    scenario: Scenario,
    q: Option<f64>,
    p: Option<f64>,
    s: Option<f64>,
    channel: Option<ChannelSpec>,
    local_delta: Option<f64>,
    grouping: Option<Grouping>,
    timing: ComTiming,
) -> Result<Value> {
    let supplied = [
        ("q", q.is_some()),
        ("p", p.is_some()),
        ("s", s.is_some()),
        ("channel", channel.is_some()),
        ("local-delta", local_delta.is_some()),
        ("grouping", grouping.is_some()),
    ];
    let accepted: &[&str] = match scenario {
        Scenario::Ame => &["q", "grouping"],
        Scenario::Catalysis => &["q"],
        Scenario::Indirect | Scenario::DirectThenIndirect => &["p", "s", "channel"],
        Scenario::NoisyLabs => &["p", "channel", "local-delta"],
    };
    for (flag, given) in supplied {
        if given && !accepted.contains(&flag) {
            usage_error(format!("--{flag} does not apply to the {scenario} scenario"));
        }
    }
    let required = |name: &str, v: Option<f64>| -> f64 {
        v.unwrap_or_else(|| usage_error(format!("the {scenario} scenario needs --{name}")))
    };
    let transit = match channel {
        Some(spec) => spec.build()?,
        None => channels::identity(),
    };
    let channel_label = channel.map_or_else(|| "identity".to_string(), |c| c.to_string());

    let (parameters, record, extra) = match scenario {
        Scenario::Ame => {
            let q = required("q", q);
            let g = grouping.unwrap_or_else(Grouping::ame_b1);
            let rec = ame_protocol(q, &g)?;
            (json!({"q": q, "grouping": g.to_string()}), rec, None)
        }
        Scenario::Catalysis => {
            let q = required("q", q);
            let (plain, catalysed) = catalysis_compare(q)?;
            (
                json!({"q": q, "grouping": Grouping::catalysed().to_string()}),
                catalysed,
                Some(("without_catalyst", serde_json::to_value(plain)?)),
            )
        }
        Scenario::Indirect => {
            let (p, s) = (required("p", p), required("s", s));
            let rec = indirect_noisy_with(p, s, &transit, timing)?;
            (json!({"p": p, "s": s, "channel": channel_label}), rec, None)
        }
        Scenario::DirectThenIndirect => {
            let (p, s) = (required("p", p), required("s", s));
            let (e_direct, rec) = direct_then_indirect_with(p, s, &transit, timing)?;
            (
                json!({"p": p, "s": s, "channel": channel_label}),
                rec,
                Some(("e_after_direct", json!(e_direct))),
            )
        }
        Scenario::NoisyLabs => {
            let p = required("p", p);
            let local = required("local-delta", local_delta);
            let rec = noisy_labs_with(p, &transit, local, timing)?;
            (
                json!({"p": p, "channel": channel_label, "local_delta": local}),
                rec,
                None,
            )
        }
    };
    let mut value = json!({"scenario": scenario.name(), "parameters": parameters});
    let map = value.as_object_mut().expect("object literal");
    if let Value::Object(fields) = serde_json::to_value(record)? {
        map.extend(fields);
    }
    if let Some((key, v)) = extra {
        map.insert(key.to_string(), v);
    }
    Ok(value)
}

fn search(da: usize, trials: u64, seed: u64, residual: Residual, out: &Path, exec: Execution) -> Result<()> {
    let report = search_violation_with(da, trials, seed, residual, exec)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    for (k, w) in report.witnesses.iter().enumerate() {
        let path = out.join(format!("witness_{k:04}.json"));
        write_file(&path, &serde_json::to_string_pretty(w)?)?;
    }
    println!(
        "{} violations of {residual} in {trials} samples on {:?} (seed {seed}, min residual {}); witnesses in {}",
        report.witnesses.len(),
        report.dims.as_slice(),
        format_g9(report.min_residual),
        out.display()
    );
    Ok(())
}
