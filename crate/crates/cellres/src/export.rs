//! Renderings of complexes and homology: aligned text, JSON, and a
//! Macaulay2 script for independent cross-checking.

use std::fmt::Write as _;

use cellres_core::chain::{FreeChainComplex, MonomialMatrix};
use cellres_core::graph::VertexLabeling;
use cellres_core::homology::HomologyProfile;
use cellres_core::monomial::{Ambient, Monomial, MonomialSum};
use serde_json::{json, Value};

/// Output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Aligned plain text.
    Text,
    /// JSON document.
    Json,
    /// Macaulay2 script.
    M2,
}

/// `"1 4 4 1"`.
pub fn ranks_line(f: &FreeChainComplex) -> String {
    f.ranks().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// One matrix as aligned rows of rendered entries.
pub fn matrix_text(m: &MonomialMatrix) -> String {
    let cells: Vec<Vec<String>> =
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect();
    let widths: Vec<usize> =
        (0..m.cols()).map(|c| cells.iter().map(|row| row[c].chars().count()).max().unwrap_or(1)).collect();
    let mut out = String::new();
    for row in &cells {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Ranks, bases and every differential as text.
pub fn complex_text(f: &FreeChainComplex) -> String {
    let mut out = format!("ranks {}\n", ranks_line(f));
    for d in 1..f.len() {
        let m = f.differential(d).expect("degree in range");
        let basis: Vec<String> = f.basis(d).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "d{d}: {}x{}  basis {}", m.rows(), m.cols(), basis.join(" "));
        out.push_str(&matrix_text(m));
    }
    out
}

fn monomial_json(m: &Monomial) -> Value {
    json!(m.exponents())
}

fn sum_json(s: &MonomialSum) -> Value {
    Value::Array(s.terms().map(|t| json!({"coeff": t.coeff, "exponents": monomial_json(&t.monomial)})).collect())
}

/// `{"ambient":{..},"ranks":[..],"basis":[..],"mdeg":[..],"differentials":[..]}`;
/// each matrix entry is a list of `{coeff, exponents}` terms (empty for 0).
pub fn complex_json(f: &FreeChainComplex) -> Value {
    let amb = f.ambient();
    let diffs: Vec<Value> = (1..f.len())
        .map(|d| {
            let m = f.differential(d).expect("degree in range");
            let rows: Vec<Value> =
                (0..m.rows()).map(|r| Value::Array((0..m.cols()).map(|c| sum_json(m.get(r, c))).collect())).collect();
            json!({"degree": d, "rows": m.rows(), "cols": m.cols(), "entries": rows})
        })
        .collect();
    json!({
        "ambient": {"m": amb.m, "n": amb.n},
        "ranks": f.ranks(),
        "basis": (0..f.len()).map(|d| f.basis(d).iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "mdeg": (0..f.len()).map(|d| f.mdeg(d).iter().map(monomial_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "differentials": diffs,
    })
}

fn ring_line(amb: Ambient) -> String {
    let vars: Vec<String> = (0..amb.num_vars()).map(|p| amb.var_name(p).to_string()).collect();
    format!("R = QQ[{}];\n", vars.join(","))
}

/// Macaulay2 script declaring the ring, the ideal and the differentials,
/// with `d_{k} * d_{k+1} == 0` assertions and a Betti table of `res I` to
/// compare against.
pub fn complex_m2(labeling: &VertexLabeling, f: &FreeChainComplex) -> String {
    let mut out = ring_line(labeling.ambient());
    let gens: Vec<String> = labeling.generators().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "I = monomialIdeal({});", gens.join(", "));
    for d in 1..f.len() {
        let m = f.differential(d).expect("degree in range");
        let rows: Vec<String> = (0..m.rows())
            .map(|r| format!("{{{}}}", (0..m.cols()).map(|c| m.get(r, c).to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        let _ = writeln!(out, "d{d} = map(R^{}, R^{}, {{{}}});", m.rows(), m.cols(), rows.join(", "));
    }
    for d in 1..f.len().saturating_sub(1) {
        let _ = writeln!(out, "assert(d{d} * d{} == 0);", d + 1);
    }
    out.push_str("betti res I\n");
    out
}

/// Ideal only, in Macaulay2 syntax.
pub fn ideal_m2(labeling: &VertexLabeling) -> String {
    let gens: Vec<String> = labeling.generators().iter().map(ToString::to_string).collect();
    format!("{}I = monomialIdeal({});\n", ring_line(labeling.ambient()), gens.join(", "))
}

/// `{"betti":[..],"torsion":[[d,[..]],..],"characteristic":p}`.
pub fn profile_json(p: &HomologyProfile) -> Value {
    let torsion: Vec<Value> = p
        .torsion
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.is_empty())
        .map(|(d, t)| json!([d, t.iter().map(ToString::to_string).collect::<Vec<_>>()]))
        .collect();
    json!({"betti": p.betti, "torsion": torsion, "characteristic": p.characteristic.as_u32()})
}
