//! Argument parsing and the five commands. [`run`] never prints; it returns
//! the text destined for stdout and stderr plus the exit code, so the binary
//! stays a thin shell and tests can drive commands in-process.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use cellres_core::chain::build_bipartite_complex;
use cellres_core::complex::LabeledComplex;
use cellres_core::criteria::{betti_formula, lcm_oracle, theorem_predicate, TraceEnd};
use cellres_core::homology::Characteristic;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::export::{self, Format};
use crate::input::GraphInput;
use crate::survey;

/// Exit code: success, or the complex is a resolution.
pub const EXIT_OK: i32 = 0;
/// Exit code: the complex is not a resolution.
pub const EXIT_NOT_RESOLUTION: i32 = 1;
/// Exit code: two deciders (or cross-checks) disagree.
pub const EXIT_DISAGREEMENT: i32 = 2;
/// Exit code: bad arguments or input.
pub const EXIT_USAGE: i32 = 64;
/// Exit code: an internal computation failed.
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "cellres", version, about = "Cellular resolutions of edge ideals of weighted K_{m,n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coefficient characteristic for homology: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u32,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// More detail (traces, witness homology, per-weighting survey rows).
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Path to a graph JSON file.
    #[arg(long, conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Inline graph JSON.
    #[arg(long)]
    json: Option<String>,
}

impl GraphArgs {
    fn load(&self) -> Result<GraphInput> {
        match (&self.input, &self.json) {
            (Some(p), None) => GraphInput::from_path(p),
            (None, Some(s)) => GraphInput::parse(s),
            _ => bail!("give the graph with --input <path> or --json <text>"),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ExportWhat {
    Complex,
    Ideal,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the cellular complex resolves S/I, two ways.
    Check(GraphArgs),
    /// Print the complex with minimality and d∘d checks.
    Resolve(GraphArgs),
    /// Betti numbers of a resolving complex on K_{m,n}, k = 0..m+n-2.
    Betti { m: usize, n: usize },
    /// Compare both deciders on every weighting with entries <= max weight.
    Survey {
        m: usize,
        n: usize,
        #[arg(value_name = "MAX_WEIGHT")]
        max_weight_pos: Option<u32>,
        /// Largest edge weight (default 3).
        #[arg(long = "max-weight")]
        max_weight: Option<u32>,
    },
    /// Write the complex or the ideal.
    Export {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = ExportWhat::Complex)]
        what: ExportWhat,
    },
}

/// What a command produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    /// Report text.
    pub stdout: String,
    /// Diagnostics.
    pub stderr: String,
    /// Process exit code.
    pub code: i32,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Self { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_USAGE }
    }
}

enum Failure {
    Usage(anyhow::Error),
    Internal(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Internal(e.into())
    }
}

fn usage<T>(r: Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { stdout: text, stderr: String::new(), code: EXIT_OK }
                }
                _ => Outcome { stdout: String::new(), stderr: text, code: EXIT_USAGE },
            };
        }
    };
    let out_path = cli.out.clone();
    match dispatch(&cli) {
        Ok(mut outcome) => {
            if let Some(p) = out_path {
                if let Err(e) = fs::write(&p, &outcome.stdout) {
                    return Outcome::usage(format!("cannot write {}: {e}", p.display()));
                }
                outcome.stderr.push_str(&format!("wrote {}\n", p.display()));
                outcome.stdout.clear();
            }
            outcome
        }
        Err(Failure::Usage(e)) => Outcome::usage(format!("{e:#}")),
        Err(Failure::Internal(e)) => {
            Outcome { stdout: String::new(), stderr: format!("internal error: {e:#}\n"), code: EXIT_INTERNAL }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let ch = usage(Characteristic::from_u32(cli.characteristic).map_err(|e| anyhow!(e)))?;
    match &cli.command {
        Command::Check(g) => {
            if cli.format == Format::M2 {
                return Err(Failure::Usage(anyhow!("--format m2 applies to resolve and export")));
            }
            check(&usage(g.load())?, ch, cli.format, cli.verbose)
        }
        Command::Resolve(g) => resolve(&usage(g.load())?, cli.format),
        Command::Betti { m, n } => {
            if *m == 0 || *n == 0 {
                return Err(Failure::Usage(anyhow!("m and n must be positive")));
            }
            Ok(betti(*m, *n, cli.format))
        }
        Command::Survey { m, n, max_weight_pos, max_weight } => {
            let mw = match (max_weight_pos, max_weight) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Failure::Usage(anyhow!("conflicting max weights {a} and {b}")));
                }
                (a, b) => a.or(*b).unwrap_or(3),
            };
            if *m == 0 || *n == 0 || mw == 0 {
                return Err(Failure::Usage(anyhow!("m, n and the max weight must be positive")));
            }
            usage(survey::check_feasible(*m, *n, mw))?;
            let (s, reports) = survey::run(*m, *n, mw, ch)?;
            let stdout = match cli.format {
                Format::Json => {
                    let v = survey::summary_json(*m, *n, mw, ch, &s, &reports, cli.verbose);
                    format!("{}\n", serde_json::to_string_pretty(&v)?)
                }
                _ => survey::summary_text(*m, *n, mw, ch, &s),
            };
            let code = if survey::all_consistent(&s) { EXIT_OK } else { EXIT_DISAGREEMENT };
            Ok(Outcome { stdout, stderr: String::new(), code })
        }
        Command::Export { graph, what } => export_cmd(&usage(graph.load())?, *what, cli.format),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn check(g: &GraphInput, ch: Characteristic, format: Format, verbose: bool) -> Result<Outcome, Failure> {
    let (theorem, trace) = match g {
        GraphInput::Edge(w) => {
            let (t, tr) = theorem_predicate(w);
            (t, Some(tr))
        }
        // vertex weightings always give a resolution
        GraphInput::Vertex(_) => (true, None),
    };
    let verdict = lcm_oracle(&LabeledComplex::full(g.labeling()), ch)?;
    let oracle = verdict.is_resolution;
    let code = match (theorem, oracle) {
        (true, true) => EXIT_OK,
        (false, false) => EXIT_NOT_RESOLUTION,
        _ => EXIT_DISAGREEMENT,
    };
    let stdout = match format {
        Format::Json => {
            let steps: Vec<Value> = trace
                .iter()
                .flat_map(|t| t.steps.iter())
                .map(|s| json!({"alpha": s.alpha, "vertex": s.vertex.to_string()}))
                .collect();
            let end = trace.as_ref().map(|t| match t.end {
                TraceEnd::Base { m, n } => json!({"base": [m, n]}),
                TraceEnd::Failure { alpha } => json!({"failure_alpha": alpha}),
            });
            let v = json!({
                "theorem": {"resolution": theorem, "steps": steps, "end": end, "vertex_weighted": trace.is_none()},
                "oracle": {
                    "resolution": oracle,
                    "witness": verdict.witness.as_ref().map(ToString::to_string),
                    "witness_homology": verdict.witness_profile.as_ref().map(export::profile_json),
                },
                "agree": theorem == oracle,
            });
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        }
        _ => {
            let t = match (&trace, theorem) {
                (Some(tr), true) => format!("YES ({tr})"),
                (Some(_), false) => "NO".to_string(),
                (None, _) => "YES (vertex weighting)".to_string(),
            };
            let mut s = format!("theorem: {t}, oracle: {}", yes_no(oracle));
            if let Some(w) = &verdict.witness {
                s.push_str(&format!(", witness: {w}"));
            }
            s.push('\n');
            if let (Some(tr), false) = (&trace, theorem) {
                s.push_str(&format!("trace: {tr}\n"));
            }
            if verbose {
                if let Some(p) = &verdict.witness_profile {
                    s.push_str(&format!("witness homology: {}\n", export::profile_json(p)));
                }
            }
            s
        }
    };
    Ok(Outcome { stdout, stderr: String::new(), code })
}

fn resolve(g: &GraphInput, format: Format) -> Result<Outcome, Failure> {
    let labeling = g.labeling();
    let f = build_bipartite_complex(&labeling);
    let minimal = f.is_minimal().is_ok();
    let dd = f.compose_is_zero()?.is_ok();
    let stdout = match format {
        Format::Text => {
            let mut s = export::complex_text(&f);
            s.push_str(&format!("minimal: {}\nd*d = 0: {}\n", yes_no(minimal), yes_no(dd)));
            s
        }
        Format::Json => {
            let mut v = export::complex_json(&f);
            v["minimal"] = json!(minimal);
            v["d_squared_zero"] = json!(dd);
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        }
        Format::M2 => export::complex_m2(&labeling, &f),
    };
    let code = if dd { EXIT_OK } else { EXIT_INTERNAL };
    Ok(Outcome { stdout, stderr: String::new(), code })
}

fn betti(m: usize, n: usize, format: Format) -> Outcome {
    let values: Vec<u128> = (0..m + n - 1).map(|k| betti_formula(m, n, k)).collect();
    let stdout = match format {
        Format::Json => format!("{}\n", json!({"m": m, "n": n, "betti": values.iter().map(|b| b.to_string()).collect::<Vec<_>>()})),
        _ => format!("{}\n", values.iter().map(u128::to_string).collect::<Vec<_>>().join(" ")),
    };
    Outcome { stdout, stderr: String::new(), code: EXIT_OK }
}

fn export_cmd(g: &GraphInput, what: ExportWhat, format: Format) -> Result<Outcome, Failure> {
    let labeling = g.labeling();
    let stdout = match (what, format) {
        (ExportWhat::Ideal, Format::M2) => export::ideal_m2(&labeling),
        (ExportWhat::Ideal, Format::Json) => {
            let gens: Vec<&[u32]> = labeling.generators().iter().map(|g| g.exponents()).collect();
            format!("{}\n", json!({"m": labeling.m(), "n": labeling.n(), "generators": gens}))
        }
        (ExportWhat::Ideal, Format::Text) => {
            let gens: Vec<String> = labeling.generators().iter().map(ToString::to_string).collect();
            format!("{}\n", gens.join(", "))
        }
        (ExportWhat::Complex, Format::M2) => export::complex_m2(&labeling, &build_bipartite_complex(&labeling)),
        (ExportWhat::Complex, Format::Json) => {
            format!("{}\n", serde_json::to_string_pretty(&export::complex_json(&build_bipartite_complex(&labeling)))?)
        }
        (ExportWhat::Complex, Format::Text) => export::complex_text(&build_bipartite_complex(&labeling)),
    };
    Ok(Outcome { stdout, stderr: String::new(), code: EXIT_OK })
}
