//! Free chain complexes over `S = k[X, Y]` with monomial-matrix differentials.
//!
//! A [`FreeChainComplex`] stores, per homological degree, an ordered list of
//! basis tags together with their multidegrees, and the differentials
//! `∂_d : F_d → F_{d−1}` as matrices of [`MonomialSum`]s (rows indexed by the
//! target basis). Complexes built from labeled cell complexes only ever have
//! single-term entries; sums appear in products formed while verifying.
//!
//! Besides the cellular builder this module carries the machinery that grows a
//! resolution by one vertex: truncation, coefficient extension by a new first
//! X-variable, multigraded twists, direct sums, chain maps, the map `φ`, its
//! mapping cone, and the explicit basis isomorphisms `Φ`/`Ψ`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{Face, IndexSet, LabeledCells, LabeledComplex, SimplexComplex};
use crate::error::{invalid, Error, Result};
use crate::graph::{EdgeWeighting, Side, VertexLabeling};
use crate::monomial::{Ambient, Monomial, MonomialSum, Term};

/// Identifier of a basis element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisTag {
    /// The generator of `F_0 = S` (the empty cell).
    Unit,
    /// A face `[A, B]` of `V_{m,n}`.
    Face(Face),
    /// A face `[B]` of a simplex.
    Subset(IndexSet),
    /// The `k`-th summand of a direct sum.
    Summand(usize, Box<BasisTag>),
    /// Cone element coming from the target `U` of the chain map.
    ConeTarget(Box<BasisTag>),
    /// Cone element coming from the (shifted) source `W` of the chain map.
    ConeSource(Box<BasisTag>),
}

impl BasisTag {
    fn shift_faces(&self) -> BasisTag {
        match self {
            BasisTag::Face(f) => BasisTag::Face(Face::new(f.a().shifted(1), f.b()).expect("shift keeps faces nonempty")),
            BasisTag::Summand(k, t) => BasisTag::Summand(*k, Box::new(t.shift_faces())),
            BasisTag::ConeTarget(t) => BasisTag::ConeTarget(Box::new(t.shift_faces())),
            BasisTag::ConeSource(t) => BasisTag::ConeSource(Box::new(t.shift_faces())),
            other => other.clone(),
        }
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::Unit => f.write_str("[]"),
            BasisTag::Face(face) => write!(f, "{face}"),
            BasisTag::Subset(s) => write!(f, "[{s}]"),
            BasisTag::Summand(k, t) => write!(f, "{k}:{t}"),
            BasisTag::ConeTarget(t) => write!(f, "U{t}"),
            BasisTag::ConeSource(t) => write!(f, "W{t}"),
        }
    }
}

impl fmt::Debug for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense matrix of monomial sums.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    ambient: Ambient,
    rows: usize,
    cols: usize,
    entries: Vec<MonomialSum>,
}

impl MonomialMatrix {
    /// All-zero `rows × cols` matrix.
    pub fn zero(ambient: Ambient, rows: usize, cols: usize) -> Self {
        Self { ambient, rows, cols, entries: vec![MonomialSum::zero(); rows * cols] }
    }

    /// Identity matrix.
    pub fn identity(ambient: Ambient, k: usize) -> Self {
        let mut m = Self::zero(ambient, k, k);
        for i in 0..k {
            m.set(i, i, MonomialSum::from_term(Term::new(1, Monomial::one(ambient))));
        }
        m
    }

    /// Ambient ring of the entries.
    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> &MonomialSum {
        &self.entries[r * self.cols + c]
    }

    /// Overwrites entry `(r, c)`.
    pub fn set(&mut self, r: usize, c: usize, value: MonomialSum) {
        self.entries[r * self.cols + c] = value;
    }

    /// Adds `coeff * mono` to entry `(r, c)`.
    pub fn add_term(&mut self, r: usize, c: usize, coeff: i64, mono: &Monomial) -> Result<()> {
        self.entries[r * self.cols + c].add_assign_term(coeff, mono)
    }

    /// Nonzero entries as `(row, col, entry)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &MonomialSum)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(move |(k, e)| (k / self.cols, k % self.cols, e))
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MonomialSum::is_zero)
    }

    /// `self · other`.
    pub fn mul(&self, other: &MonomialMatrix) -> Result<MonomialMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        let mut out = Self::zero(self.ambient, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = out.entries[idx].add_sum(&a.mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// `self − other`.
    pub fn sub(&self, other: &MonomialMatrix) -> Result<MonomialMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} minus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add_sum(&b.neg()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ambient: self.ambient, rows: self.rows, cols: self.cols, entries })
    }

    /// `−self`.
    pub fn neg(&self) -> MonomialMatrix {
        Self {
            ambient: self.ambient,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(MonomialSum::neg).collect(),
        }
    }

    fn with_leading_x(&self) -> MonomialMatrix {
        Self {
            ambient: self.ambient.with_leading_x(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.map_monomials(Monomial::with_leading_x)).collect(),
        }
    }
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self.get(r, c))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// First nonvanishing entry of `∂_{d−1} ∘ ∂_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionResidual {
    /// Degree `d` of the inner differential.
    pub degree: usize,
    /// Row in the basis of `F_{d−2}`.
    pub row: usize,
    /// Column in the basis of `F_d`.
    pub col: usize,
    /// The nonzero sum left over.
    pub residual: MonomialSum,
}

/// A differential entry that is a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitEntry {
    /// Degree of the differential.
    pub degree: usize,
    /// Row (basis of `F_{degree−1}`).
    pub row: usize,
    /// Column (basis of `F_degree`).
    pub col: usize,
}

/// Entry whose monomial does not match the multidegrees of its row and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingViolation {
    /// Degree of the offending matrix.
    pub degree: usize,
    /// Row index.
    pub row: usize,
    /// Column index.
    pub col: usize,
}

/// A bounded complex `0 ← F_0 ← F_1 ← … ← F_top` of finite free `S`-modules.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeChainComplex {
    ambient: Ambient,
    basis: Vec<Vec<BasisTag>>,
    mdeg: Vec<Vec<Monomial>>,
    diffs: Vec<MonomialMatrix>,
}

impl FreeChainComplex {
    /// Assembles a complex, checking that shapes line up. `diffs[d − 1]` is `∂_d`.
    pub fn new(
        ambient: Ambient,
        basis: Vec<Vec<BasisTag>>,
        mdeg: Vec<Vec<Monomial>>,
        diffs: Vec<MonomialMatrix>,
    ) -> Result<Self> {
        if basis.len() != mdeg.len() || basis.iter().zip(&mdeg).any(|(b, g)| b.len() != g.len()) {
            return Err(Error::Shape("basis and multidegree lists differ".into()));
        }
        if diffs.len() != basis.len().saturating_sub(1) {
            return Err(Error::Shape(format!("{} modules but {} differentials", basis.len(), diffs.len())));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows != basis[k].len() || d.cols != basis[k + 1].len() {
                return Err(Error::Shape(format!("differential {} has the wrong shape", k + 1)));
            }
            if d.ambient != ambient {
                return Err(Error::AmbientMismatch { left: ambient, right: d.ambient });
            }
        }
        if let Some(g) = mdeg.iter().flatten().find(|g| g.ambient() != ambient) {
            return Err(Error::AmbientMismatch { left: ambient, right: g.ambient() });
        }
        Ok(Self { ambient, basis, mdeg, diffs })
    }

    /// The zero complex.
    pub fn zero(ambient: Ambient) -> Self {
        Self { ambient, basis: Vec::new(), mdeg: Vec::new(), diffs: Vec::new() }
    }

    /// Ambient ring.
    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Number of stored degrees (`top + 1`, or 0 for the zero complex).
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    /// True for the zero complex.
    pub fn is_empty(&self) -> bool {
        self.basis.iter().all(Vec::is_empty)
    }

    /// Rank of `F_d` (0 outside the stored range).
    pub fn rank(&self, d: usize) -> usize {
        self.basis.get(d).map_or(0, Vec::len)
    }

    /// Ranks of `F_0, F_1, …`.
    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Basis tags of `F_d`.
    pub fn basis(&self, d: usize) -> &[BasisTag] {
        self.basis.get(d).map_or(&[], Vec::as_slice)
    }

    /// Multidegrees of the basis of `F_d`.
    pub fn mdeg(&self, d: usize) -> &[Monomial] {
        self.mdeg.get(d).map_or(&[], Vec::as_slice)
    }

    /// `∂_d : F_d → F_{d−1}` for `1 ≤ d < len()`.
    pub fn differential(&self, d: usize) -> Option<&MonomialMatrix> {
        if d == 0 {
            None
        } else {
            self.diffs.get(d - 1)
        }
    }

    /// Position of `tag` in the basis of `F_d`.
    pub fn index_of(&self, d: usize, tag: &BasisTag) -> Option<usize> {
        self.basis(d).iter().position(|t| t == tag)
    }

    /// Copy with `∂_d` replaced (shape-checked).
    pub fn with_differential(&self, d: usize, m: MonomialMatrix) -> Result<Self> {
        let mut diffs = self.diffs.clone();
        let slot = d.checked_sub(1).and_then(|k| diffs.get_mut(k)).ok_or_else(|| invalid("no such differential"))?;
        *slot = m;
        Self::new(self.ambient, self.basis.clone(), self.mdeg.clone(), diffs)
    }

    /// Copy with the basis tags of `F_d` replaced, leaving matrices untouched.
    pub fn with_basis_tags(&self, d: usize, tags: Vec<BasisTag>) -> Result<Self> {
        let mut basis = self.basis.clone();
        let slot = basis.get_mut(d).ok_or_else(|| invalid("no such degree"))?;
        if slot.len() != tags.len() {
            return Err(Error::Shape("tag count differs from rank".into()));
        }
        *slot = tags;
        Self::new(self.ambient, basis, self.mdeg.clone(), self.diffs.clone())
    }

    /// Checks `∂_{d−1} ∘ ∂_d = 0` in every degree, by exact cancellation.
    pub fn compose_is_zero(&self) -> Result<Result<(), CompositionResidual>> {
        for d in 2..self.len() {
            let prod = self.diffs[d - 2].mul(&self.diffs[d - 1])?;
            let first = prod.nonzero().next().map(|(row, col, e)| (row, col, e.clone()));
            if let Some((row, col, residual)) = first {
                return Ok(Err(CompositionResidual { degree: d, row, col, residual }));
            }
        }
        Ok(Ok(()))
    }

    /// No differential entry is a unit, ignoring the augmentation into
    /// `F_0 = S` (whose entries are the generators themselves).
    pub fn is_minimal(&self) -> Result<(), UnitEntry> {
        for d in 1..self.len() {
            if self.basis[d - 1] == [BasisTag::Unit] {
                continue;
            }
            for (row, col, e) in self.diffs[d - 1].nonzero() {
                if e.terms().any(|t| t.monomial.is_one()) {
                    return Err(UnitEntry { degree: d, row, col });
                }
            }
        }
        Ok(())
    }

    /// Every nonzero entry is a single term `c·m` with
    /// `m · mdeg(row) = mdeg(col)`.
    pub fn check_multigraded(&self) -> Result<(), GradingViolation> {
        for d in 1..self.len() {
            for (row, col, e) in self.diffs[d - 1].nonzero() {
                let ok = e.single_term().is_some_and(|t| {
                    t.monomial.mul(&self.mdeg[d - 1][row]).ok().as_ref() == Some(&self.mdeg[d][col])
                });
                if !ok {
                    return Err(GradingViolation { degree: d, row, col });
                }
            }
        }
        Ok(())
    }

    /// `F̄`: drops `F_0`, shifts down by one and negates every differential.
    pub fn truncate_shift(&self) -> Result<FreeChainComplex> {
        if self.len() < 2 {
            return Err(invalid("truncation needs a complex with a degree-1 module"));
        }
        Self::new(
            self.ambient,
            self.basis[1..].to_vec(),
            self.mdeg[1..].to_vec(),
            self.diffs[1..].iter().map(MonomialMatrix::neg).collect(),
        )
    }

    /// Extension of scalars `S' → S = S'[X_new]` with the new variable placed
    /// first: monomials are re-embedded and face X-indices shift up by one.
    pub fn with_leading_x(&self) -> FreeChainComplex {
        Self {
            ambient: self.ambient.with_leading_x(),
            basis: self.basis.iter().map(|v| v.iter().map(BasisTag::shift_faces).collect()).collect(),
            mdeg: self.mdeg.iter().map(|v| v.iter().map(Monomial::with_leading_x).collect()).collect(),
            diffs: self.diffs.iter().map(MonomialMatrix::with_leading_x).collect(),
        }
    }

    /// Direct sum; basis tags become `Summand(k, tag)`.
    pub fn direct_sum(parts: &[&FreeChainComplex]) -> Result<FreeChainComplex> {
        let ambient = parts.first().ok_or_else(|| invalid("empty direct sum"))?.ambient;
        if let Some(p) = parts.iter().find(|p| p.ambient != ambient) {
            return Err(Error::AmbientMismatch { left: ambient, right: p.ambient });
        }
        let len = parts.iter().map(|p| p.len()).max().unwrap_or(0);
        let mut basis = vec![Vec::new(); len];
        let mut mdeg = vec![Vec::new(); len];
        for d in 0..len {
            for (k, p) in parts.iter().enumerate() {
                basis[d].extend(p.basis(d).iter().map(|t| BasisTag::Summand(k, Box::new(t.clone()))));
                mdeg[d].extend_from_slice(p.mdeg(d));
            }
        }
        let mut diffs = Vec::new();
        for d in 1..len {
            let mut m = MonomialMatrix::zero(ambient, basis[d - 1].len(), basis[d].len());
            let (mut r0, mut c0) = (0, 0);
            for p in parts {
                if let Some(pd) = p.differential(d) {
                    for (r, c, e) in pd.nonzero() {
                        m.set(r0 + r, c0 + c, e.clone());
                    }
                }
                r0 += p.rank(d - 1);
                c0 += p.rank(d);
            }
            diffs.push(m);
        }
        Self::new(ambient, basis, mdeg, diffs)
    }
}

impl fmt::Debug for FreeChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FreeChainComplex over {} ranks {:?}", self.ambient, self.ranks())?;
        for d in 1..self.len() {
            writeln!(f, "d{d}:")?;
            write!(f, "{:?}", self.diffs[d - 1])?;
        }
        Ok(())
    }
}

/// Multigraded twist `F(−m)`: every basis multidegree is multiplied by `m`;
/// matrices are unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTwist {
    /// Twisting monomial.
    pub monomial: Monomial,
}

impl MultiTwist {
    /// Applies the twist.
    pub fn apply(&self, f: &FreeChainComplex) -> Result<FreeChainComplex> {
        let mdeg = f
            .mdeg
            .iter()
            .map(|v| v.iter().map(|g| g.mul(&self.monomial)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FreeChainComplex::new(f.ambient, f.basis.clone(), mdeg, f.diffs.clone())
    }
}

/// Cellular complex `F_C` of a labeled cell complex: degree 0 is `S` (the
/// empty cell), degree `d ≥ 1` has one generator per `(d−1)`-cell, and the
/// entry at `(E_j, E_i)` is `ε(E_i, E_j) · ℓ(E_i)/ℓ(E_j)`.
pub fn build_cellular<C: LabeledCells>(c: &C) -> FreeChainComplex {
    let ambient = c.ambient();
    let one = Monomial::one(ambient);
    let mut basis = vec![vec![BasisTag::Unit]];
    let mut mdeg = vec![vec![one.clone()]];
    let mut diffs = Vec::new();
    let top = match c.top_dimension() {
        Some(t) => t,
        None => return FreeChainComplex::new(ambient, basis, mdeg, diffs).expect("shapes agree"),
    };
    let mut prev_cells: Vec<C::Cell> = Vec::new();
    let mut prev_labels: Vec<Monomial> = vec![one];
    for dim in 0..=top {
        let cells = c.cells(dim);
        let labels: Vec<Monomial> = cells.iter().map(|x| c.label(x)).collect();
        let mut m = MonomialMatrix::zero(ambient, prev_labels.len(), cells.len());
        if dim == 0 {
            for (col, l) in labels.iter().enumerate() {
                m.add_term(0, col, 1, l).expect("common ambient");
            }
        } else {
            let index: BTreeMap<&C::Cell, usize> = prev_cells.iter().enumerate().map(|(k, x)| (x, k)).collect();
            for (col, cell) in cells.iter().enumerate() {
                for (face, sign) in c.boundary(cell) {
                    let row = index[&face];
                    let q = labels[col].quotient(&prev_labels[row]).expect("labels are monotone along faces");
                    m.add_term(row, col, i64::from(sign), &q).expect("common ambient");
                }
            }
        }
        basis.push(cells.iter().map(|x| c.basis_tag(x)).collect());
        mdeg.push(labels.clone());
        diffs.push(m);
        prev_cells = cells;
        prev_labels = labels;
    }
    FreeChainComplex::new(ambient, basis, mdeg, diffs).expect("shapes agree")
}

/// `F_{m,n}^ω`: the cellular complex of all of `V_{m,n}` under a labeling.
pub fn build_bipartite_complex(labeling: &VertexLabeling) -> FreeChainComplex {
    build_cellular(&LabeledComplex::full(labeling.clone()))
}

/// Taylor complex: the cellular complex of the full simplex on `labels`.
pub fn build_taylor(labels: Vec<Monomial>) -> Result<FreeChainComplex> {
    Ok(build_cellular(&SimplexComplex::new(labels)?))
}

/// First failure of `∂^T ∘ f = f ∘ ∂^S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationFailure {
    /// Source degree `d` of the square `F_d → G_{d−1}`.
    pub degree: usize,
    /// Row in the target basis of degree `d − 1`.
    pub row: usize,
    /// Column in the source basis of degree `d`.
    pub col: usize,
    /// `∂f − f∂` at that entry.
    pub residual: MonomialSum,
}

/// Degree-preserving map of free complexes, `maps[d] : source_d → target_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: FreeChainComplex,
    target: FreeChainComplex,
    maps: Vec<MonomialMatrix>,
}

impl ChainMap {
    /// Shape-checked constructor; one matrix per source degree.
    pub fn new(source: FreeChainComplex, target: FreeChainComplex, maps: Vec<MonomialMatrix>) -> Result<Self> {
        if source.ambient != target.ambient {
            return Err(Error::AmbientMismatch { left: source.ambient, right: target.ambient });
        }
        if maps.len() != source.len() {
            return Err(Error::Shape(format!("{} maps for {} source degrees", maps.len(), source.len())));
        }
        for (d, f) in maps.iter().enumerate() {
            if f.rows != target.rank(d) || f.cols != source.rank(d) {
                return Err(Error::Shape(format!("chain map component {d} has the wrong shape")));
            }
        }
        Ok(Self { source, target, maps })
    }

    /// Source complex.
    pub fn source(&self) -> &FreeChainComplex {
        &self.source
    }

    /// Target complex.
    pub fn target(&self) -> &FreeChainComplex {
        &self.target
    }

    /// Component in degree `d`.
    pub fn component(&self, d: usize) -> Option<&MonomialMatrix> {
        self.maps.get(d)
    }

    fn component_or_zero(&self, d: usize) -> MonomialMatrix {
        self.maps
            .get(d)
            .cloned()
            .unwrap_or_else(|| MonomialMatrix::zero(self.source.ambient, self.target.rank(d), self.source.rank(d)))
    }

    /// Exact check of `∂^T_d f_d = f_{d−1} ∂^S_d` for every `d ≥ 1`.
    pub fn commutes(&self) -> Result<Result<(), CommutationFailure>> {
        let amb = self.source.ambient;
        for d in 1..self.source.len().max(self.target.len()) {
            let dt = self
                .target
                .differential(d)
                .cloned()
                .unwrap_or_else(|| MonomialMatrix::zero(amb, self.target.rank(d - 1), self.target.rank(d)));
            let ds = self
                .source
                .differential(d)
                .cloned()
                .unwrap_or_else(|| MonomialMatrix::zero(amb, self.source.rank(d - 1), self.source.rank(d)));
            let lhs = dt.mul(&self.component_or_zero(d))?;
            let rhs = self.component_or_zero(d - 1).mul(&ds)?;
            let diff = lhs.sub(&rhs)?;
            let first = diff.nonzero().next().map(|(row, col, e)| (row, col, e.clone()));
            if let Some((row, col, residual)) = first {
                return Ok(Err(CommutationFailure { degree: d, row, col, residual }));
            }
        }
        Ok(Ok(()))
    }

    /// `self ∘ inner`, where `inner.target` must match `self.source` in shape.
    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap> {
        if inner.target.ranks() != self.source.ranks() {
            return Err(Error::Shape("composition of chain maps with mismatched middle complex".into()));
        }
        let maps = (0..inner.source.len())
            .map(|d| self.component_or_zero(d).mul(&inner.maps[d]))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(inner.source.clone(), self.target.clone(), maps)
    }

    /// Whether every component is an identity matrix.
    pub fn is_identity(&self) -> bool {
        self.source.ranks() == self.target.ranks()
            && self.maps.iter().all(|f| *f == MonomialMatrix::identity(f.ambient, f.rows))
    }

    /// Every nonzero entry is a single term `c·m` with
    /// `m · mdeg_target(row) = mdeg_source(col)`.
    pub fn check_multigraded(&self) -> Result<(), GradingViolation> {
        for (d, f) in self.maps.iter().enumerate() {
            for (row, col, e) in f.nonzero() {
                let ok = e.single_term().is_some_and(|t| {
                    t.monomial.mul(&self.target.mdeg[d][row]).ok().as_ref() == Some(&self.source.mdeg[d][col])
                });
                if !ok {
                    return Err(GradingViolation { degree: d, row, col });
                }
            }
        }
        Ok(())
    }
}

/// `Cone(ψ)_i = U_i ⊕ W_{i−1}` with differential `[[∂^U, ψ], [0, −∂^W]]`.
///
/// Basis: all of `U_i` (tagged [`BasisTag::ConeTarget`]) followed by
/// `W_{i−1}` (tagged [`BasisTag::ConeSource`]).
pub fn mapping_cone(psi: &ChainMap) -> Result<FreeChainComplex> {
    let (u, w) = (&psi.target, &psi.source);
    let amb = u.ambient;
    let len = if w.is_empty() { u.len() } else { u.len().max(w.len() + 1) };
    let mut basis = Vec::with_capacity(len);
    let mut mdeg = Vec::with_capacity(len);
    for i in 0..len {
        let mut b: Vec<BasisTag> = u.basis(i).iter().map(|t| BasisTag::ConeTarget(Box::new(t.clone()))).collect();
        let mut g: Vec<Monomial> = u.mdeg(i).to_vec();
        if i >= 1 {
            b.extend(w.basis(i - 1).iter().map(|t| BasisTag::ConeSource(Box::new(t.clone()))));
            g.extend_from_slice(w.mdeg(i - 1));
        }
        basis.push(b);
        mdeg.push(g);
    }
    let mut diffs = Vec::new();
    for i in 1..len {
        let (u_prev, w_prev) = (u.rank(i - 1), if i >= 2 { w.rank(i - 2) } else { 0 });
        let (u_cur, w_cur) = (u.rank(i), w.rank(i - 1));
        let mut m = MonomialMatrix::zero(amb, u_prev + w_prev, u_cur + w_cur);
        if let Some(du) = u.differential(i) {
            for (r, c, e) in du.nonzero() {
                m.set(r, c, e.clone());
            }
        }
        if let Some(f) = psi.maps.get(i - 1) {
            for (r, c, e) in f.nonzero() {
                m.set(r, u_cur + c, e.clone());
            }
        }
        if i >= 2 {
            if let Some(dw) = w.differential(i - 1) {
                for (r, c, e) in dw.nonzero() {
                    m.set(u_prev + r, u_cur + c, e.neg());
                }
            }
        }
        diffs.push(m);
    }
    FreeChainComplex::new(amb, basis, mdeg, diffs)
}

/// Distinguished vertex data for the one-vertex extension.
fn check_extension_input(w: &EdgeWeighting) -> Result<u32> {
    if w.m() < 2 {
        return Err(invalid("the cone construction needs at least two X-vertices"));
    }
    let alpha = w.min_weight();
    if w.incident_weights(crate::graph::Vertex { side: Side::X, index: 1 }).iter().any(|&x| x != alpha) {
        return Err(invalid(format!("row X1 of {w} is not constantly the minimum weight {alpha}")));
    }
    Ok(alpha)
}

/// The chain map `φ : (F̄^μ ⊗ S)(−X_1^α) → (F̄^μ ⊗ S) ⊕ T̄` for a weighting
/// whose first X-row is constantly the global minimum `α`.
///
/// Here `μ` is `ω` with `X_1` deleted, re-embedded so its X-indices start at
/// 2, and `T` is the Taylor complex on `X_1^α Y_b^α`. On a source face
/// `[A, B]` the first component is multiplication by `X_1^α`; the second is
/// zero unless `A = {a}`, where it is `−mdeg([a,B]) X_1^α / mdeg([B])` times
/// `[B]`.
pub fn build_phi(w: &EdgeWeighting) -> Result<ChainMap> {
    let alpha = check_extension_input(w)?;
    let amb = Ambient::new(w.m(), w.n());
    let mu = w.delete_vertex(Side::X, 1)?;
    let fbar_mu = build_bipartite_complex(&mu.labels()).truncate_shift()?.with_leading_x();
    let taylor_labels = (1..=w.n()).map(|b| Monomial::xy(amb, 1, alpha, b, alpha)).collect();
    let tbar = build_taylor(taylor_labels)?.truncate_shift()?;
    let target = FreeChainComplex::direct_sum(&[&fbar_mu, &tbar])?;
    let source = MultiTwist { monomial: Monomial::x_pow(amb, 1, alpha) }.apply(&fbar_mu)?;
    let x1a = Monomial::x_pow(amb, 1, alpha);

    let mut maps = Vec::with_capacity(source.len());
    for d in 0..source.len() {
        let mut f = MonomialMatrix::zero(amb, target.rank(d), source.rank(d));
        for (col, tag) in source.basis(d).iter().enumerate() {
            let BasisTag::Face(face) = tag else {
                return Err(Error::BasisMismatch(format!("unexpected source tag {tag}")));
            };
            // first component: X_1^α [A, B]
            f.add_term(col, col, 1, &x1a)?;
            if face.a().len() == 1 {
                let t_tag = BasisTag::Summand(1, Box::new(BasisTag::Subset(face.b())));
                let row = target
                    .index_of(d, &t_tag)
                    .ok_or_else(|| Error::BasisMismatch(format!("no Taylor generator {t_tag}")))?;
                let coeff = source.mdeg(d)[col].quotient(&target.mdeg(d)[row])?;
                f.add_term(row, col, -1, &coeff)?;
            }
        }
        maps.push(f);
    }
    ChainMap::new(source, target, maps)
}

/// Result of comparing `Cone(φ)` with `F̄^ω_{m+1,n}`.
#[derive(Clone, Debug)]
pub struct ConeIsomorphism {
    /// `Φ : Cone(φ) → F̄`.
    pub phi: ChainMap,
    /// `Ψ : F̄ → Cone(φ)`.
    pub psi: ChainMap,
    /// Both are chain maps and mutually inverse.
    pub verified: bool,
}

// Image of a cone basis element under Φ, with its sign. The source summand
// picks up −1: truncation negates every differential, so the shifted copy of
// W enters F̄ with the opposite orientation of its φ-column.
fn phi_image(tag: &BasisTag) -> Result<(BasisTag, i64)> {
    let bad = || Error::BasisMismatch(format!("{tag} is not a cone basis element of the extension"));
    match tag {
        BasisTag::ConeTarget(inner) => match inner.as_ref() {
            BasisTag::Summand(0, f) if matches!(f.as_ref(), BasisTag::Face(_)) => Ok((f.as_ref().clone(), 1)),
            BasisTag::Summand(1, s) => match s.as_ref() {
                BasisTag::Subset(b) => Ok((BasisTag::Face(Face::new(IndexSet::singleton(1), *b)?), 1)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        },
        BasisTag::ConeSource(inner) => match inner.as_ref() {
            BasisTag::Face(f) => Ok((BasisTag::Face(Face::new(f.a().with(1), f.b())?), -1)),
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

// Inverse of `phi_image`, by the three cases 1 ∉ A, A = {1}, A ⊋ {1}.
fn psi_image(tag: &BasisTag) -> Result<(BasisTag, i64)> {
    let BasisTag::Face(f) = tag else {
        return Err(Error::BasisMismatch(format!("{tag} is not a face")));
    };
    if !f.a().contains(1) {
        Ok((BasisTag::ConeTarget(Box::new(BasisTag::Summand(0, Box::new(tag.clone())))), 1))
    } else if f.a().len() == 1 {
        let t = BasisTag::Summand(1, Box::new(BasisTag::Subset(f.b())));
        Ok((BasisTag::ConeTarget(Box::new(t)), 1))
    } else {
        let g = Face::new(f.a().without(1), f.b())?;
        Ok((BasisTag::ConeSource(Box::new(BasisTag::Face(g))), -1))
    }
}

fn basis_map(
    source: &FreeChainComplex,
    target: &FreeChainComplex,
    image: fn(&BasisTag) -> Result<(BasisTag, i64)>,
) -> Result<ChainMap> {
    if source.ranks() != target.ranks() {
        return Err(Error::BasisMismatch(format!(
            "ranks {:?} vs {:?}",
            source.ranks(),
            target.ranks()
        )));
    }
    let amb = source.ambient;
    let one = Monomial::one(amb);
    let mut maps = Vec::with_capacity(source.len());
    for d in 0..source.len() {
        let mut f = MonomialMatrix::zero(amb, target.rank(d), source.rank(d));
        for (col, tag) in source.basis(d).iter().enumerate() {
            let (img, sign) = image(tag)?;
            let row = target
                .index_of(d, &img)
                .ok_or_else(|| Error::BasisMismatch(format!("{img} missing in degree {d}")))?;
            f.add_term(row, col, sign, &one)?;
        }
        maps.push(f);
    }
    ChainMap::new(source.clone(), target.clone(), maps)
}

/// Builds `Φ : Cone(φ) → F̄` and `Ψ : F̄ → Cone(φ)` from the basis
/// correspondences and verifies that both are chain maps with
/// `ΦΨ = id` and `ΨΦ = id`.
pub fn phi_psi_isomorphism(cone: &FreeChainComplex, fbar: &FreeChainComplex) -> Result<ConeIsomorphism> {
    let phi = basis_map(cone, fbar, phi_image)?;
    let psi = basis_map(fbar, cone, psi_image)?;
    let verified = phi.commutes()?.is_ok()
        && psi.commutes()?.is_ok()
        && phi.compose(&psi)?.is_identity()
        && psi.compose(&phi)?.is_identity();
    Ok(ConeIsomorphism { phi, psi, verified })
}

/// Everything needed to compare the one-vertex extension with the full
/// truncated complex.
#[derive(Clone, Debug)]
pub struct Extension {
    /// The chain map `φ`.
    pub phi: ChainMap,
    /// `Cone(φ)`.
    pub cone: FreeChainComplex,
    /// `F̄^ω` of the whole weighting.
    pub fbar: FreeChainComplex,
}

/// `φ`, its cone, and `F̄^ω` for a weighting with distinguished first row.
pub fn extension(w: &EdgeWeighting) -> Result<Extension> {
    let phi = build_phi(w)?;
    let cone = mapping_cone(&phi)?;
    let fbar = build_bipartite_complex(&w.labels()).truncate_shift()?;
    Ok(Extension { phi, cone, fbar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn entry(m: &MonomialMatrix, r: usize, c: usize) -> String {
        m.get(r, c).to_string()
    }

    fn col(m: &MonomialMatrix, c: usize) -> Vec<String> {
        (0..m.rows()).map(|r| entry(m, r, c)).collect()
    }

    #[test]
    fn unweighted_square_resolution() {
        let f = build_bipartite_complex(&EdgeWeighting::constant(2, 2, 1).unwrap().labels());
        assert_eq!(f.ranks(), [1, 4, 4, 1]);
        assert_eq!(col(f.differential(3).unwrap(), 0), ["-X2", "X1", "-Y2", "Y1"]);
        assert!(f.compose_is_zero().unwrap().is_ok());
        assert!(f.is_minimal().is_ok());
        assert!(f.check_multigraded().is_ok());
    }

    #[test]
    fn weighted_square_top_column() {
        // (alpha, beta, gamma) = (1, 2, 3): entry (1,12) has Y1^{beta-alpha}
        let w = EdgeWeighting::new(&[vec![1, 1], vec![2, 3]]).unwrap();
        let f = build_bipartite_complex(&w.labels());
        assert_eq!(col(f.differential(3).unwrap(), 0), ["-X2^3*Y1*Y2^2", "X1", "-X2*Y2^3", "Y1^2"]);
    }

    #[test]
    fn taylor_small_cases() {
        let amb = Ambient::new(1, 3);
        let labels: Vec<_> = (1..=3).map(|j| Monomial::xy(amb, 1, 1, j, 1)).collect();
        let t = build_taylor(labels).unwrap();
        assert_eq!(t.ranks(), [1, 3, 3, 1]);
        // [12] -> -Y1[2] + Y2[1]
        assert_eq!(col(t.differential(2).unwrap(), 0), ["Y2", "-Y1", "0"]);
        let single = build_taylor(alloc::vec![Monomial::xy(amb, 1, 2, 1, 2)]).unwrap();
        assert_eq!(single.ranks(), [1, 1]);
        assert_eq!(entry(single.differential(1).unwrap(), 0, 0), "X1^2*Y1^2");
        assert!(single.is_minimal().is_ok());
    }

    #[test]
    fn taylor_non_minimal() {
        let amb = Ambient::new(1, 1);
        let t = build_taylor(alloc::vec![Monomial::x_pow(amb, 1, 1), Monomial::xy(amb, 1, 1, 1, 1)]).unwrap();
        let unit = t.is_minimal().unwrap_err();
        assert_eq!(unit.degree, 2);
    }

    #[test]
    fn truncation() {
        let amb = Ambient::new(1, 3);
        let labels: Vec<_> = (1..=3).map(|j| Monomial::xy(amb, 1, 1, j, 1)).collect();
        let t = build_taylor(labels).unwrap();
        let tb = t.truncate_shift().unwrap();
        assert_eq!(tb.ranks(), [3, 3, 1]);
        for d in 1..3 {
            assert_eq!(*tb.differential(d).unwrap(), t.differential(d + 1).unwrap().neg());
        }
        let w = EdgeWeighting::new(&[vec![1, 1, 1], vec![2, 3, 4]]).unwrap();
        assert_eq!(build_bipartite_complex(&w.labels()).truncate_shift().unwrap().ranks(), [6, 9, 5, 1]);
        let short = build_taylor(alloc::vec![Monomial::x_pow(amb, 1, 1)]).unwrap().truncate_shift().unwrap();
        assert_eq!(short.ranks(), [1]);
        assert!(short.differential(1).is_none());
        assert!(short.truncate_shift().is_err());
    }

    #[test]
    fn flipped_sign_breaks_d_squared() {
        let f = build_bipartite_complex(&EdgeWeighting::constant(2, 2, 1).unwrap().labels());
        let mut d2 = f.differential(2).unwrap().clone();
        let e = d2.get(0, 0).neg();
        d2.set(0, 0, e);
        let broken = f.with_differential(2, d2).unwrap();
        let residual = broken.compose_is_zero().unwrap().unwrap_err();
        assert!(!residual.residual.is_zero());
    }

    #[test]
    fn cone_of_zero_map() {
        let amb = Ambient::new(1, 1);
        let z = FreeChainComplex::zero(amb);
        let phi = ChainMap::new(z.clone(), z, Vec::new()).unwrap();
        let cone = mapping_cone(&phi).unwrap();
        assert!(cone.is_empty());
        assert_eq!(cone.len(), 0);
    }

    #[test]
    fn phi_on_running_example() {
        // row 1 carries the minimum weight; rows (1,1,1), (2,3,4)
        let w = EdgeWeighting::new(&[vec![1, 1, 1], vec![2, 3, 4]]).unwrap();
        let phi = build_phi(&w).unwrap();
        let src = phi.source();
        let d = 1;
        let col_idx = src.index_of(d, &BasisTag::Face(Face::from_elems(&[2], &[1, 2]).unwrap())).unwrap();
        let m = phi.component(d).unwrap();
        let tgt = phi.target();
        let u_row = tgt
            .index_of(d, &BasisTag::Summand(0, Box::new(BasisTag::Face(Face::from_elems(&[2], &[1, 2]).unwrap()))))
            .unwrap();
        let t_row = tgt
            .index_of(d, &BasisTag::Summand(1, Box::new(BasisTag::Subset(IndexSet::from_elems(&[1, 2]).unwrap()))))
            .unwrap();
        assert_eq!(entry(m, u_row, col_idx), "X1");
        assert_eq!(entry(m, t_row, col_idx), "-X2^3*Y1*Y2^2");
        let nonzero_rows = (0..m.rows()).filter(|&r| !m.get(r, col_idx).is_zero()).count();
        assert_eq!(nonzero_rows, 2);
        assert!(phi.commutes().unwrap().is_ok());
        assert!(phi.check_multigraded().is_ok());
    }

    #[test]
    fn cone_matches_truncated_complex() {
        let w = EdgeWeighting::new(&[vec![1, 1, 1], vec![2, 3, 4]]).unwrap();
        let ext = extension(&w).unwrap();
        assert_eq!(ext.cone.ranks(), [6, 9, 5, 1]);
        assert!(ext.cone.compose_is_zero().unwrap().is_ok());
        let iso = phi_psi_isomorphism(&ext.cone, &ext.fbar).unwrap();
        assert!(iso.verified);
    }

    #[test]
    fn smallest_extension() {
        let w = EdgeWeighting::new(&[vec![2], vec![5]]).unwrap();
        let ext = extension(&w).unwrap();
        assert_eq!(ext.cone.ranks(), ext.fbar.ranks());
        assert!(phi_psi_isomorphism(&ext.cone, &ext.fbar).unwrap().verified);
    }

    #[test]
    fn permuted_basis_fails_verification() {
        let w = EdgeWeighting::new(&[vec![1, 1, 1], vec![2, 3, 4]]).unwrap();
        let ext = extension(&w).unwrap();
        let mut tags = ext.fbar.basis(1).to_vec();
        tags.swap(0, 4);
        let scrambled = ext.fbar.with_basis_tags(1, tags).unwrap();
        assert!(!phi_psi_isomorphism(&ext.cone, &scrambled).unwrap().verified);
    }

    #[test]
    fn phi_rejects_non_minimal_first_row() {
        let w = EdgeWeighting::new(&[vec![1, 2], vec![1, 1]]).unwrap();
        assert!(build_phi(&w).is_err());
        let w = EdgeWeighting::new(&[vec![1, 1]]).unwrap();
        assert!(build_phi(&w).is_err());
    }
}
