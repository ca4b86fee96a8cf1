//! Deciding whether `F^ω_{m,n}` resolves `S/I`.
//!
//! Two independent routes are provided. [`lcm_oracle`] scans the lcm lattice
//! and tests every restriction `C_{≤f}` for acyclicity; it is enough to look
//! at lcms of labels because `C_{≤f} = C_{≤g}` where `g` is the lcm of the
//! labels dividing `f`. [`theorem_predicate`] is the purely combinatorial
//! vertex-deletion recursion on the weights. [`survey`] runs both over every
//! weighting in a box and collects the comparisons.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chain::build_bipartite_complex;
use crate::complex::{IndexSet, LabeledComplex};
use crate::error::{invalid, Result};
use crate::graph::{EdgeWeighting, Side, Vertex, VertexLabeling};
use crate::homology::{
    reduced_betti_from_minus_one, reduced_homology, strand, tensor_with_field, Characteristic, HomologyProfile,
    SimplicialComplex,
};
use crate::monomial::Monomial;

/// All lcms of nonempty sets of labels, sorted by total degree and then by
/// monomial order.
pub fn lcm_lattice(labeling: &VertexLabeling) -> Result<Vec<Monomial>> {
    lcm_closure(labeling.generators())
}

fn lcm_closure(gens: &[Monomial]) -> Result<Vec<Monomial>> {
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier: Vec<Monomial> = Vec::new();
    for g in gens {
        if seen.insert(g.clone()) {
            frontier.push(g.clone());
        }
    }
    while let Some(x) = frontier.pop() {
        for g in gens {
            let l = x.lcm(g)?;
            if seen.insert(l.clone()) {
                frontier.push(l);
            }
        }
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Which decider produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// The lattice scan.
    Oracle,
    /// The vertex-deletion recursion.
    Theorem,
}

/// Order in which [`lcm_oracle_with_order`] visits the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScanOrder {
    /// Total degree, then monomial order.
    #[default]
    Degree,
    /// Join-irreducible elements first, each part in degree order.
    JoinIrreducibleFirst,
}

/// Outcome of a resolution test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionVerdict {
    /// Whether `F` is acyclic.
    pub is_resolution: bool,
    /// A lattice monomial with non-acyclic restriction (oracle only).
    pub witness: Option<Monomial>,
    /// Homology of the witness restriction.
    pub witness_profile: Option<HomologyProfile>,
    /// Which decider ran.
    pub method: Method,
}

/// The lattice scan on the full complex: the first non-acyclic `C_{≤f}` in
/// degree order is the witness.
pub fn lcm_oracle(c: &LabeledComplex, ch: Characteristic) -> Result<ResolutionVerdict> {
    lcm_oracle_with_order(c, ch, ScanOrder::Degree)
}

/// [`lcm_oracle`] with an explicit scan order.
pub fn lcm_oracle_with_order(c: &LabeledComplex, ch: Characteristic, order: ScanOrder) -> Result<ResolutionVerdict> {
    for f in scan_sequence(c.labeling(), order)? {
        let profile = reduced_homology(&c.restrict(&f)?, ch)?;
        if !profile.is_acyclic() {
            return Ok(ResolutionVerdict {
                is_resolution: false,
                witness: Some(f),
                witness_profile: Some(profile),
                method: Method::Oracle,
            });
        }
    }
    Ok(ResolutionVerdict { is_resolution: true, witness: None, witness_profile: None, method: Method::Oracle })
}

fn scan_sequence(labeling: &VertexLabeling, order: ScanOrder) -> Result<Vec<Monomial>> {
    let lattice = lcm_lattice(labeling)?;
    if order == ScanOrder::Degree {
        return Ok(lattice);
    }
    let mut irreducible = Vec::new();
    let mut rest = Vec::new();
    for x in &lattice {
        if is_join_irreducible(x, &lattice)? {
            irreducible.push(x.clone());
        } else {
            rest.push(x.clone());
        }
    }
    irreducible.extend(rest);
    Ok(irreducible)
}

// `x` is join-irreducible when the elements strictly below it do not join to it.
fn is_join_irreducible(x: &Monomial, lattice: &[Monomial]) -> Result<bool> {
    let mut join: Option<Monomial> = None;
    for y in lattice {
        if y != x && y.divides(x)? {
            join = Some(match join {
                None => y.clone(),
                Some(j) => j.lcm(y)?,
            });
        }
    }
    Ok(join.as_ref() != Some(x))
}

/// One deletion in a [`TheoremTrace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Minimum weight of the graph the vertex was deleted from.
    pub alpha: u32,
    /// Deleted vertex, indexed in the original graph.
    pub vertex: Vertex,
}

/// How the recursion stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceEnd {
    /// One side has a single vertex.
    Base {
        /// Remaining X-vertices.
        m: usize,
        /// Remaining Y-vertices.
        n: usize,
    },
    /// Both sides have at least two vertices and no vertex carries only the
    /// minimum weight.
    Failure {
        /// Minimum weight at the failure point.
        alpha: u32,
    },
}

/// Path taken by [`theorem_predicate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremTrace {
    /// Deletions in order.
    pub steps: Vec<TraceStep>,
    /// Terminal state.
    pub end: TraceEnd,
}

impl TheoremTrace {
    /// Whether the recursion reached a base case.
    pub fn succeeded(&self) -> bool {
        matches!(self.end, TraceEnd::Base { .. })
    }
}

impl fmt::Display for TheoremTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "v={} → ", s.vertex)?;
        }
        match self.end {
            TraceEnd::Base { .. } => f.write_str("base"),
            TraceEnd::Failure { alpha } => write!(f, "stuck at α={alpha}"),
        }
    }
}

/// Vertices all of whose edges carry the minimum weight, X side first.
pub fn qualifying_vertices(w: &EdgeWeighting) -> Vec<Vertex> {
    let alpha = w.min_weight();
    let xs = (1..=w.m()).map(|index| Vertex { side: Side::X, index });
    let ys = (1..=w.n()).map(|index| Vertex { side: Side::Y, index });
    xs.chain(ys).filter(|&v| w.incident_weights(v).iter().all(|&x| x == alpha)).collect()
}

/// The vertex-deletion recursion. Holds when one side is a single vertex,
/// or when some vertex carries only the current minimum weight and the
/// recursion holds after deleting it (the minimum is recomputed at every
/// level). The first qualifying vertex is taken.
pub fn theorem_predicate(w: &EdgeWeighting) -> (bool, TheoremTrace) {
    let mut cur = w.clone();
    let mut xs: Vec<usize> = (1..=w.m()).collect();
    let mut ys: Vec<usize> = (1..=w.n()).collect();
    let mut steps = Vec::new();
    loop {
        if cur.m() == 1 || cur.n() == 1 {
            let trace = TheoremTrace { steps, end: TraceEnd::Base { m: cur.m(), n: cur.n() } };
            return (true, trace);
        }
        let alpha = cur.min_weight();
        let Some(&v) = qualifying_vertices(&cur).first() else {
            return (false, TheoremTrace { steps, end: TraceEnd::Failure { alpha } });
        };
        let original = match v.side {
            Side::X => xs.remove(v.index - 1),
            Side::Y => ys.remove(v.index - 1),
        };
        steps.push(TraceStep { alpha, vertex: Vertex { side: v.side, index: original } });
        cur = cur.delete_vertex(v.side, v.index).expect("both sides have at least two vertices");
    }
}

/// Runs the recursion along every choice of qualifying vertex. Returns the
/// common verdict, or `None` if two choice sequences disagree.
pub fn theorem_all_choices(w: &EdgeWeighting) -> Option<bool> {
    if w.m() == 1 || w.n() == 1 {
        return Some(true);
    }
    let choices = qualifying_vertices(w);
    if choices.is_empty() {
        return Some(false);
    }
    let mut verdict = None;
    for v in choices {
        let sub = w.delete_vertex(v.side, v.index).expect("both sides have at least two vertices");
        let b = theorem_all_choices(&sub)?;
        if verdict.is_some_and(|x| x != b) {
            return None;
        }
        verdict = Some(b);
    }
    verdict
}

/// `Σ_{j=1}^{k+1} C(n, j) C(m, k − j + 2)`: the rank of `F_{k+1}` for
/// `V_{m,n}`, i.e. the number of faces `(A, B)` with `|A| + |B| = k + 2`.
pub fn betti_formula(m: usize, n: usize, k: usize) -> u128 {
    (1..=k + 1)
        .filter(|&j| j <= n && k + 2 - j <= m)
        .map(|j| binomial(n, j) * binomial(m, k + 2 - j))
        .sum()
}

fn binomial(n: usize, k: usize) -> u128 {
    num_integer::binomial(n as u128, k as u128)
}

/// Betti numbers of `S/I` from the upper Koszul simplicial complexes
/// `K^b = {F ⊆ vars : b / x^F ∈ I}`: `β_{i,b} = dim H̃_{i−2}(K^b)` for `i ≥ 1`.
///
/// This is independent of any cell complex; only lattice degrees can carry
/// Betti numbers.
pub fn koszul_betti(labeling: &VertexLabeling, ch: Characteristic) -> Result<Vec<usize>> {
    let gens = labeling.generators();
    let amb = labeling.ambient();
    let nv = amb.num_vars();
    if nv > 24 {
        return Err(invalid("too many variables for the Koszul computation"));
    }
    let mut betti = vec![1usize];
    for b in lcm_lattice(labeling)? {
        let mut faces = Vec::new();
        for mask in 0u32..(1 << nv) {
            let mut exps = b.exponents().to_vec();
            if (0..nv).any(|v| mask >> v & 1 == 1 && exps[v] == 0) {
                continue;
            }
            for (v, e) in exps.iter_mut().enumerate() {
                *e -= mask >> v & 1;
            }
            let q = Monomial::from_exponents(amb, exps)?;
            let mut member = false;
            for g in gens {
                if g.divides(&q)? {
                    member = true;
                    break;
                }
            }
            if member {
                faces.push(IndexSet::from_mask(mask << 1));
            }
        }
        let k = SimplicialComplex::new(faces)?;
        // entry t is H̃_{t−1}, which contributes to β_{t+1}
        for (t, r) in reduced_betti_from_minus_one(&k, ch).into_iter().enumerate() {
            if r > 0 {
                if betti.len() <= t + 1 {
                    betti.resize(t + 2, 0);
                }
                betti[t + 1] += r;
            }
        }
    }
    Ok(betti)
}

/// Comparison of a strand with the matching restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandMismatch {
    /// Lattice monomial.
    pub at: Monomial,
    /// `H_d` of the strand, `d = 0, 1, …`.
    pub strand: Vec<usize>,
    /// `H̃_{d−1}` of the restriction, `d = 0, 1, …`.
    pub restriction: Vec<usize>,
}

fn padded(mut v: Vec<usize>, len: usize) -> Vec<usize> {
    v.resize(len.max(v.len()), 0);
    v
}

/// Everything computed for one edge weighting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightingReport {
    /// The weighting.
    pub weighting: EdgeWeighting,
    /// Verdict of the recursion.
    pub theorem: bool,
    /// Path of the recursion.
    pub trace: TheoremTrace,
    /// Verdict of the lattice scan.
    pub oracle: bool,
    /// First non-acyclic lattice monomial.
    pub witness: Option<Monomial>,
    /// Ranks of `F^ω`.
    pub ranks: Vec<usize>,
    /// For resolutions: whether `F^ω` is minimal and the Betti numbers read
    /// from `F ⊗ k` agree with [`betti_formula`].
    pub betti_ok: Option<bool>,
    /// Restrictions whose integer homology has torsion.
    pub torsion_sightings: Vec<Monomial>,
    /// Lattice monomials where strand and restriction homology differ.
    pub strand_mismatches: Vec<StrandMismatch>,
}

impl WeightingReport {
    /// Recursion and lattice scan agree.
    pub fn agrees(&self) -> bool {
        self.theorem == self.oracle
    }
}

/// Runs both deciders on `w` and cross-checks strands, torsion and Betti
/// numbers. Every lattice monomial is visited; the witness is the first
/// non-acyclic one, as in [`lcm_oracle`].
pub fn evaluate(w: &EdgeWeighting, ch: Characteristic) -> Result<WeightingReport> {
    let (theorem, trace) = theorem_predicate(w);
    let labeling = w.labels();
    let c = LabeledComplex::full(labeling.clone());
    let f = build_bipartite_complex(&labeling);
    let mut witness = None;
    let mut torsion_sightings = Vec::new();
    let mut strand_mismatches = Vec::new();
    for at in lcm_lattice(&labeling)? {
        let r = c.restrict(&at)?;
        let profile = reduced_homology(&r, ch)?;
        if witness.is_none() && !profile.is_acyclic() {
            witness = Some(at.clone());
        }
        if profile.has_torsion() {
            torsion_sightings.push(at.clone());
        }
        let s = strand(&f, &at)?.homology(ch).0;
        let len = s.len();
        let rest = padded(reduced_betti_from_minus_one(&r, ch), len);
        let s = padded(s, rest.len());
        if s != rest {
            strand_mismatches.push(StrandMismatch { at, strand: s, restriction: rest });
        }
    }
    let oracle = witness.is_none();
    let betti_ok = if oracle {
        let tor = tensor_with_field(&f)?.homology(ch).0;
        let formula_ok = (0..tor.len())
            .all(|d| d == 0 && tor[0] == 1 || d > 0 && tor[d] as u128 == betti_formula(w.m(), w.n(), d - 1));
        Some(formula_ok && f.is_minimal().is_ok())
    } else {
        None
    };
    Ok(WeightingReport {
        weighting: w.clone(),
        theorem,
        trace,
        oracle,
        witness,
        ranks: f.ranks(),
        betti_ok,
        torsion_sightings,
        strand_mismatches,
    })
}

/// Totals over a set of [`WeightingReport`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurveySummary {
    /// Weightings examined.
    pub total: usize,
    /// Weightings on which both deciders agree.
    pub agree: usize,
    /// Weightings on which they do not.
    pub disagreements: Vec<EdgeWeighting>,
    /// Weightings that are resolutions.
    pub resolutions: usize,
    /// Resolutions whose Betti check failed.
    pub betti_failures: Vec<EdgeWeighting>,
    /// Total torsion sightings.
    pub torsion_sightings: usize,
    /// Total strand mismatches.
    pub strand_mismatches: usize,
}

impl SurveySummary {
    /// Folds a report in.
    pub fn add(&mut self, r: &WeightingReport) {
        self.total += 1;
        if r.agrees() {
            self.agree += 1;
        } else {
            self.disagreements.push(r.weighting.clone());
        }
        if r.oracle {
            self.resolutions += 1;
        }
        if r.betti_ok == Some(false) {
            self.betti_failures.push(r.weighting.clone());
        }
        self.torsion_sightings += r.torsion_sightings.len();
        self.strand_mismatches += r.strand_mismatches.len();
    }

    /// `"a/b agree"`.
    pub fn agreement_line(&self) -> String {
        format!("{}/{} agree", self.agree, self.total)
    }
}

/// Sequential exhaustive survey over all weightings with entries in
/// `1..=max_weight`.
pub fn survey(m: usize, n: usize, max_weight: u32, ch: Characteristic) -> Result<(SurveySummary, Vec<WeightingReport>)> {
    let mut summary = SurveySummary::default();
    let mut reports = Vec::new();
    for w in EdgeWeighting::enumerate(m, n, max_weight)? {
        let r = evaluate(&w, ch)?;
        summary.add(&r);
        reports.push(r);
    }
    Ok((summary, reports))
}
