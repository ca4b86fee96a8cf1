//! Parallel exhaustive survey and its JSON report.

use anyhow::{bail, Context, Result};
use cellres_core::criteria::{evaluate, SurveySummary, WeightingReport};
use cellres_core::graph::EdgeWeighting;
use cellres_core::homology::Characteristic;
use rayon::prelude::*;
use serde_json::{json, Value};

/// Environment variable bounding the worker count.
pub const THREADS_ENV: &str = "CELLRES_THREADS";

/// Largest number of weightings a survey will enumerate.
pub const MAX_WEIGHTINGS: u128 = 2_000_000;

/// Rough seconds per weighting, from the face count of `V_{m,n}` and the
/// worst-case lattice size; only used to explain refusals.
pub fn estimated_seconds(m: usize, n: usize, max_weight: u32) -> f64 {
    let count = (max_weight as f64).powi((m * n) as i32);
    let faces = ((1u64 << m) - 1) as f64 * ((1u64 << n) - 1) as f64;
    let lattice = 2f64.powi((m * n).min(60) as i32).min(faces * faces);
    count * lattice * faces * 2e-7
}

/// Number of weightings in the box, or an error explaining why the range is
/// refused.
pub fn check_feasible(m: usize, n: usize, max_weight: u32) -> Result<u128> {
    let count = (max_weight as u128).checked_pow((m * n) as u32);
    match count {
        Some(c) if c <= MAX_WEIGHTINGS && m * n <= 16 => Ok(c),
        _ => bail!(
            "refusing survey m={m} n={n} max_weight={max_weight}: {}^{} weightings, estimated {:.1e} s of work",
            max_weight,
            m * n,
            estimated_seconds(m, n, max_weight)
        ),
    }
}

fn pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let k: usize = v.trim().parse().with_context(|| format!("{THREADS_ENV}={v} is not a thread count"))?;
        if k == 0 {
            bail!("{THREADS_ENV} must be positive");
        }
        b = b.num_threads(k);
    }
    Ok(b.build()?)
}

/// Evaluates every weighting in the box in parallel; reports come back in
/// enumeration order.
pub fn run(m: usize, n: usize, max_weight: u32, ch: Characteristic) -> Result<(SurveySummary, Vec<WeightingReport>)> {
    check_feasible(m, n, max_weight)?;
    let all: Vec<EdgeWeighting> = EdgeWeighting::enumerate(m, n, max_weight)?.collect();
    let reports = pool()?.install(|| {
        all.par_iter().map(|w| evaluate(w, ch)).collect::<cellres_core::Result<Vec<_>>>()
    })?;
    let mut summary = SurveySummary::default();
    for r in &reports {
        summary.add(r);
    }
    Ok((summary, reports))
}

/// True when every comparison in the summary came out clean.
pub fn all_consistent(s: &SurveySummary) -> bool {
    s.disagreements.is_empty() && s.betti_failures.is_empty() && s.strand_mismatches == 0
}

/// Text summary, one fact per line.
pub fn summary_text(m: usize, n: usize, max_weight: u32, ch: Characteristic, s: &SurveySummary) -> String {
    let mut out = format!("survey m={m} n={n} max_weight={max_weight} char={ch}\n");
    out.push_str(&s.agreement_line());
    out.push('\n');
    out.push_str(&format!("resolutions: {}\n", s.resolutions));
    out.push_str(&format!("betti checks failed: {}\n", s.betti_failures.len()));
    out.push_str(&format!("strand mismatches: {}\n", s.strand_mismatches));
    out.push_str(&format!("torsion sightings: {}\n", s.torsion_sightings));
    for w in &s.disagreements {
        out.push_str(&format!("DISAGREEMENT {w}\n"));
    }
    out
}

fn report_json(r: &WeightingReport) -> Value {
    json!({
        "weights": r.weighting.rows(),
        "theorem": r.theorem,
        "trace": r.trace.to_string(),
        "oracle": r.oracle,
        "witness": r.witness.as_ref().map(ToString::to_string),
        "ranks": r.ranks,
        "betti_ok": r.betti_ok,
        "torsion": r.torsion_sightings.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "strand_mismatches": r.strand_mismatches.len(),
    })
}

/// Survey JSON; per-weighting entries only when `verbose`.
pub fn summary_json(
    m: usize,
    n: usize,
    max_weight: u32,
    ch: Characteristic,
    s: &SurveySummary,
    reports: &[WeightingReport],
    verbose: bool,
) -> Value {
    let mut v = json!({
        "m": m,
        "n": n,
        "max_weight": max_weight,
        "characteristic": ch.as_u32(),
        "total": s.total,
        "agree": s.agree,
        "disagreements": s.disagreements.iter().map(EdgeWeighting::rows).collect::<Vec<_>>(),
        "resolutions": s.resolutions,
        "betti_failures": s.betti_failures.iter().map(EdgeWeighting::rows).collect::<Vec<_>>(),
        "strand_mismatches": s.strand_mismatches,
        "torsion_sightings": s.torsion_sightings,
    });
    if verbose {
        v["weightings"] = Value::Array(reports.iter().map(report_json).collect());
    }
    v
}
