//! Combinatorial cell complexes: the product-of-simplices complex `V_{m,n}` and the full simplex.
//!
//! A face of `V_{m,n}` is a pair `(A, B)` of nonempty subsets of `[m]` and
//! `[n]`. It has dimension `|A| + |B| − 2` and sits in homological degree
//! `|A| + |B| − 1` of the cellular chain complex. The incidence function is
//! the sign pattern of the differential itself: removing the `i`-th element of
//! `A` carries `(−1)^{i−1}`, removing the `j`-th element of `B` carries
//! `(−1)^{|A|+j−1}`, and removals that would empty a side are dropped.
//!
//! Nothing geometric is ever built; every question is answered on these
//! combinatorial data.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::chain::BasisTag;
use crate::error::{invalid, Error, Result};
use crate::graph::{VertexLabeling, MAX_SIDE};
use crate::monomial::{Ambient, Monomial};

/// A finite subset of `{1, .., 32}`, ordered by size and then
/// lexicographically on its sorted elements (`1 < 2 < 12 < 13 < 23 < 123`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u32);

impl IndexSet {
    /// Empty set.
    pub const EMPTY: IndexSet = IndexSet(0);

    /// Set from 1-based elements.
    pub fn from_elems(elems: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &e in elems {
            if !(1..=MAX_SIDE).contains(&e) {
                return Err(invalid(format!("index {e} outside 1..={MAX_SIDE}")));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Self(mask))
    }

    /// `{1, .., k}`.
    pub fn full(k: usize) -> Self {
        assert!(k <= MAX_SIDE);
        if k == 32 {
            Self(u32::MAX)
        } else {
            Self((1u32 << k) - 1)
        }
    }

    /// `{e}`.
    pub fn singleton(e: usize) -> Self {
        assert!((1..=MAX_SIDE).contains(&e));
        Self(1 << (e - 1))
    }

    /// Bitmask (bit `e − 1` for element `e`).
    pub fn mask(&self) -> u32 {
        self.0
    }

    /// Set from a bitmask.
    pub fn from_mask(mask: u32) -> Self {
        Self(mask)
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// True for the empty set.
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Membership.
    pub fn contains(&self, e: usize) -> bool {
        (1..=MAX_SIDE).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    /// Ascending elements.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.0;
        (1..=MAX_SIDE).filter(move |e| mask & (1 << (e - 1)) != 0)
    }

    /// Largest element.
    pub fn max_elem(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(32 - self.0.leading_zeros() as usize)
        }
    }

    /// `self − {e}`.
    pub fn without(&self, e: usize) -> Self {
        Self(self.0 & !(1 << (e - 1)))
    }

    /// `self ∪ {e}`.
    pub fn with(&self, e: usize) -> Self {
        Self(self.0 | (1 << (e - 1)))
    }

    /// Subset test.
    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Every element shifted up by `k`.
    pub fn shifted(&self, k: usize) -> Self {
        assert!(self.max_elem().map_or(0, |m| m + k) <= MAX_SIDE);
        Self(self.0 << k)
    }

    /// Every element shifted down by `k`; elements `≤ k` must be absent.
    pub fn unshifted(&self, k: usize) -> Self {
        assert!(self.0 & ((1u32 << k) - 1) == 0);
        Self(self.0 >> k)
    }

    /// All nonempty subsets of `{1..k}` in the set order.
    pub fn all_nonempty(k: usize) -> Vec<IndexSet> {
        assert!(k < 32);
        let mut v: Vec<IndexSet> = (1u32..(1 << k)).map(IndexSet).collect();
        v.sort();
        v
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.max_elem().unwrap_or(0) <= 9 {
            for e in self.iter() {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            f.write_str("{")?;
            for (k, e) in self.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("}")
        }
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A cell `(A, B)` of `V_{m,n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    a: IndexSet,
    b: IndexSet,
}

impl Face {
    /// `(A, B)` with both sides nonempty.
    pub fn new(a: IndexSet, b: IndexSet) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(invalid("faces need nonempty A and B"));
        }
        Ok(Self { a, b })
    }

    /// Convenience constructor from element lists.
    pub fn from_elems(a: &[usize], b: &[usize]) -> Result<Self> {
        Self::new(IndexSet::from_elems(a)?, IndexSet::from_elems(b)?)
    }

    /// The vertex `(i, j)`.
    pub fn vertex(i: usize, j: usize) -> Self {
        Self { a: IndexSet::singleton(i), b: IndexSet::singleton(j) }
    }

    /// X-side index set.
    pub fn a(&self) -> IndexSet {
        self.a
    }

    /// Y-side index set.
    pub fn b(&self) -> IndexSet {
        self.b
    }

    /// Cell dimension `|A| + |B| − 2`.
    pub fn dimension(&self) -> usize {
        self.a.len() + self.b.len() - 2
    }

    /// Homological degree `|A| + |B| − 1`.
    pub fn degree(&self) -> usize {
        self.a.len() + self.b.len() - 1
    }

    /// Whether the face lives in `V_{m,n}`.
    pub fn fits(&self, m: usize, n: usize) -> bool {
        self.a.max_elem().unwrap_or(0) <= m && self.b.max_elem().unwrap_or(0) <= n
    }

    /// Face relation `(A', B') ⊆ (A, B)`.
    pub fn is_face_of(&self, other: &Face) -> bool {
        self.a.is_subset(&other.a) && self.b.is_subset(&other.b)
    }

    /// Vertices `(i, j)` of the face.
    pub fn vertices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.a.iter().flat_map(move |i| self.b.iter().map(move |j| (i, j)))
    }

    /// Signed codimension-one faces, X-removals first.
    pub fn boundary(&self) -> Vec<BoundaryTerm> {
        let s = self.a.len();
        let t = self.b.len();
        let mut out = Vec::with_capacity(s + t);
        if s >= 2 {
            for (i, a) in self.a.iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                out.push(BoundaryTerm { face: Face { a: self.a.without(a), b: self.b }, sign, position: i + 1 });
            }
        }
        if t >= 2 {
            for (j, b) in self.b.iter().enumerate() {
                // (-1)^{s + (j+1) - 1}
                let sign = if (s + j).is_multiple_of(2) { 1 } else { -1 };
                out.push(BoundaryTerm {
                    face: Face { a: self.a, b: self.b.without(b) },
                    sign,
                    position: s + j + 1,
                });
            }
        }
        out
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One signed incidence in a boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryTerm {
    /// Codimension-one face.
    pub face: Face,
    /// Incidence sign, `±1`.
    pub sign: i8,
    /// 1-based position of the removed index in the concatenation `A ++ B`.
    pub position: usize,
}

/// All faces of `V_{m,n}` in homological degree `d` (`|A| + |B| = d + 1`),
/// sorted.
pub fn enumerate_faces(m: usize, n: usize, d: usize) -> Vec<Face> {
    let mut out = Vec::new();
    for a in IndexSet::all_nonempty(m) {
        for b in IndexSet::all_nonempty(n) {
            if a.len() + b.len() == d + 1 {
                out.push(Face { a, b });
            }
        }
    }
    out.sort();
    out
}

/// `ℓ(A, B) = lcm{ f_{i,j} : i ∈ A, j ∈ B }`.
pub fn label_of(face: &Face, labeling: &VertexLabeling) -> Result<Monomial> {
    if !face.fits(labeling.m(), labeling.n()) {
        return Err(invalid(format!("{face} is not a face of V_({},{})", labeling.m(), labeling.n())));
    }
    let mut acc = Monomial::one(labeling.ambient());
    for (i, j) in face.vertices() {
        acc = acc.lcm(labeling.label(i, j))?;
    }
    Ok(acc)
}

/// A finite cell complex presented combinatorially, with the empty cell
/// implicit in dimension −1.
pub trait CellComplex {
    /// Cell identifier.
    type Cell: Clone + Ord + fmt::Debug;

    /// Highest cell dimension, `None` for the empty complex.
    fn top_dimension(&self) -> Option<usize>;

    /// Cells of dimension `dim`, sorted.
    fn cells(&self, dim: usize) -> Vec<Self::Cell>;

    /// Signed codimension-one faces of `cell` (empty for vertices).
    fn boundary(&self, cell: &Self::Cell) -> Vec<(Self::Cell, i8)>;

    /// True for the empty complex.
    fn is_empty(&self) -> bool {
        self.top_dimension().is_none()
    }
}

/// A cell complex whose cells carry lcm labels.
pub trait LabeledCells: CellComplex {
    /// Ring the labels live in.
    fn ambient(&self) -> Ambient;

    /// Label of a cell.
    fn label(&self, cell: &Self::Cell) -> Monomial;

    /// Basis tag of the cell in the cellular chain complex.
    fn basis_tag(&self, cell: &Self::Cell) -> BasisTag;
}

/// `V_{m,n}` (or a subcomplex of it) with its vertex labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledComplex {
    labeling: VertexLabeling,
    by_dim: Vec<Vec<Face>>,
    labels: BTreeMap<Face, Monomial>,
}

impl LabeledComplex {
    /// All of `V_{m,n}`.
    pub fn full(labeling: VertexLabeling) -> Self {
        let (m, n) = (labeling.m(), labeling.n());
        let by_dim: Vec<Vec<Face>> = (1..m + n).map(|d| enumerate_faces(m, n, d)).collect();
        let labels = by_dim
            .iter()
            .flatten()
            .map(|f| (*f, label_of(f, &labeling).expect("faces fit by construction")))
            .collect();
        Self { labeling, by_dim, labels }
    }

    /// A subcomplex given by an explicit face set, which must be closed under
    /// taking faces.
    pub fn from_faces(labeling: VertexLabeling, faces: &[Face]) -> Result<Self> {
        let set: BTreeSet<Face> = faces.iter().copied().collect();
        for f in &set {
            if !f.fits(labeling.m(), labeling.n()) {
                return Err(invalid(format!("{f} is not a face of V_({},{})", labeling.m(), labeling.n())));
            }
            for t in f.boundary() {
                if !set.contains(&t.face) {
                    return Err(invalid(format!("{f} present but its face {} is missing", t.face)));
                }
            }
        }
        let mut labels = BTreeMap::new();
        for f in &set {
            labels.insert(*f, label_of(f, &labeling)?);
        }
        Ok(Self::assemble(labeling, labels))
    }

    fn assemble(labeling: VertexLabeling, labels: BTreeMap<Face, Monomial>) -> Self {
        let mut by_dim: Vec<Vec<Face>> = Vec::new();
        for f in labels.keys() {
            let d = f.dimension();
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(*f);
        }
        for v in &mut by_dim {
            v.sort();
        }
        Self { labeling, by_dim, labels }
    }

    /// The vertex labeling.
    pub fn labeling(&self) -> &VertexLabeling {
        &self.labeling
    }

    /// Whether `face` belongs to this complex.
    pub fn contains(&self, face: &Face) -> bool {
        self.labels.contains_key(face)
    }

    /// Number of faces (excluding the empty cell).
    pub fn num_faces(&self) -> usize {
        self.labels.len()
    }

    /// All faces, sorted by `(A, B)`.
    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.labels.keys()
    }

    /// Cached label of a member face.
    pub fn face_label(&self, face: &Face) -> Option<&Monomial> {
        self.labels.get(face)
    }

    /// `C_{≤f}`: faces whose label divides `f`.
    pub fn restrict(&self, f: &Monomial) -> Result<LabeledComplex> {
        if f.ambient() != self.labeling.ambient() {
            return Err(Error::AmbientMismatch { left: self.labeling.ambient(), right: f.ambient() });
        }
        let mut labels = BTreeMap::new();
        for (face, l) in &self.labels {
            if l.divides(f)? {
                labels.insert(*face, l.clone());
            }
        }
        Ok(Self::assemble(self.labeling.clone(), labels))
    }
}

impl CellComplex for LabeledComplex {
    type Cell = Face;

    fn top_dimension(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|v| !v.is_empty())
    }

    fn cells(&self, dim: usize) -> Vec<Face> {
        self.by_dim.get(dim).cloned().unwrap_or_default()
    }

    fn boundary(&self, cell: &Face) -> Vec<(Face, i8)> {
        cell.boundary().into_iter().map(|t| (t.face, t.sign)).collect()
    }
}

impl LabeledCells for LabeledComplex {
    fn ambient(&self) -> Ambient {
        self.labeling.ambient()
    }

    fn label(&self, cell: &Face) -> Monomial {
        self.labels[cell].clone()
    }

    fn basis_tag(&self, cell: &Face) -> BasisTag {
        BasisTag::Face(*cell)
    }
}

/// The `(s−1)`-simplex on `s` labeled vertices; cells are nonempty subsets of
/// `[s]`, and removing the `j`-th vertex carries `(−1)^j`.
///
/// With this sign rule `V_{1,n}` and the simplex on its `n` generators give
/// identical matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexComplex {
    labels: Vec<Monomial>,
}

impl SimplexComplex {
    /// Simplex on the given vertex labels (at least one, common ambient).
    pub fn new(labels: Vec<Monomial>) -> Result<Self> {
        let first = labels.first().ok_or_else(|| invalid("a simplex needs at least one vertex"))?;
        if labels.len() >= 31 {
            return Err(invalid("simplex too large"));
        }
        if let Some(bad) = labels.iter().find(|l| l.ambient() != first.ambient()) {
            return Err(Error::AmbientMismatch { left: first.ambient(), right: bad.ambient() });
        }
        Ok(Self { labels })
    }

    /// Vertex count `s`.
    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Vertex labels.
    pub fn vertex_labels(&self) -> &[Monomial] {
        &self.labels
    }

    /// Total number of nonempty faces, `2^s − 1`.
    pub fn num_faces(&self) -> usize {
        (1usize << self.labels.len()) - 1
    }
}

impl CellComplex for SimplexComplex {
    type Cell = IndexSet;

    fn top_dimension(&self) -> Option<usize> {
        Some(self.labels.len() - 1)
    }

    fn cells(&self, dim: usize) -> Vec<IndexSet> {
        IndexSet::all_nonempty(self.labels.len()).into_iter().filter(|s| s.len() == dim + 1).collect()
    }

    fn boundary(&self, cell: &IndexSet) -> Vec<(IndexSet, i8)> {
        if cell.len() < 2 {
            return Vec::new();
        }
        cell.iter()
            .enumerate()
            .map(|(j, e)| (cell.without(e), if j % 2 == 0 { -1 } else { 1 }))
            .collect()
    }
}

impl LabeledCells for SimplexComplex {
    fn ambient(&self) -> Ambient {
        self.labels[0].ambient()
    }

    fn label(&self, cell: &IndexSet) -> Monomial {
        let mut acc = Monomial::one(self.ambient());
        for e in cell.iter() {
            acc = acc.lcm(&self.labels[e - 1]).expect("common ambient checked on construction");
        }
        acc
    }

    fn basis_tag(&self, cell: &IndexSet) -> BasisTag {
        BasisTag::Subset(*cell)
    }
}
