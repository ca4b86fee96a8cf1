//! Exact integer homology.
//!
//! Everything is reduced to Smith normal form over `Z`: a boundary matrix is
//! diagonalized by unimodular row and column operations, first with checked
//! `i64` arithmetic and, if that overflows, again with `BigInt`. Ranks over
//! `Q` count nonzero diagonal entries; ranks over `GF(p)` count the entries
//! not divisible by `p`; torsion is read off the normalized invariant factors.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::chain::FreeChainComplex;
use crate::complex::{CellComplex, IndexSet};
use crate::error::{invalid, Error, Result};
use crate::monomial::Monomial;

/// Coefficient field used for ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Characteristic {
    /// The rationals.
    #[default]
    Zero,
    /// `GF(p)`.
    Prime(u32),
}

impl Characteristic {
    /// Parses `0` or a prime.
    pub fn from_u32(p: u32) -> Result<Self> {
        match p {
            0 => Ok(Self::Zero),
            p if is_prime(p) => Ok(Self::Prime(p)),
            p => Err(invalid(format!("characteristic {p} is neither 0 nor prime"))),
        }
    }

    /// The characteristic as a number.
    pub fn as_u32(self) -> u32 {
        match self {
            Self::Zero => 0,
            Self::Prime(p) => p,
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u32())
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| d.saturating_mul(*d) <= p).all(|d| !p.is_multiple_of(d))
}

/// Dense integer matrix with machine-size entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    /// All-zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    /// Matrix from row vectors.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self { rows: rows.len(), cols, data: rows.concat() })
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
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    /// Sets entry `(r, c)`.
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    /// Nonzero diagonal of a Smith form, as normalized invariant factors
    /// `d_1 | d_2 | …` (all positive).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut diag = match diagonalize(self.rows, self.cols, self.data.clone()) {
            Some(d) => d.into_iter().map(BigInt::from).collect(),
            None => {
                let big = self.data.iter().map(|&x| BigInt::from(x)).collect();
                diagonalize(self.rows, self.cols, big).expect("bigint elimination cannot overflow")
            }
        };
        normalize(&mut diag);
        diag
    }

    /// Rank over the given field.
    pub fn rank(&self, ch: Characteristic) -> usize {
        rank_from_factors(&self.invariant_factors(), ch)
    }
}

fn rank_from_factors(factors: &[BigInt], ch: Characteristic) -> usize {
    match ch {
        Characteristic::Zero => factors.len(),
        Characteristic::Prime(p) => {
            let p = BigInt::from(p);
            factors.iter().filter(|d| !Zero::is_zero(&(*d % &p))).count()
        }
    }
}

// Turns an arbitrary nonzero diagonal into the divisibility chain.
fn normalize(diag: &mut [BigInt]) {
    use num_integer::Integer;
    if diag.iter().all(One::is_one) {
        return;
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
}

trait Scalar: Clone {
    fn is_zero(&self) -> bool;
    fn mag_lt(&self, other: &Self) -> bool;
    fn quot(&self, other: &Self) -> Option<Self>;
    // self - q * b
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn abs_val(&self) -> Option<Self>;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mag_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, other: &Self) -> Option<Self> {
        self.checked_div(*other)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn abs_val(&self) -> Option<Self> {
        self.checked_abs()
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mag_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn quot(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn abs_val(&self) -> Option<Self> {
        Some(self.abs())
    }
}

// Diagonalizes by unimodular operations; returns |diagonal| (nonzero part)
// or `None` on machine overflow.
fn diagonalize<T: Scalar>(rows: usize, cols: usize, mut a: Vec<T>) -> Option<Vec<T>> {
    let idx = |r: usize, c: usize| r * cols + c;
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = &a[idx(r, c)];
                if !v.is_zero() && best.is_none_or(|(br, bc)| v.mag_lt(&a[idx(br, bc)])) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        swap_rows(&mut a, cols, t, pr);
        swap_cols(&mut a, cols, rows, t, pc);
        loop {
            let piv = a[idx(t, t)].clone();
            let mut clean = true;
            for r in t + 1..rows {
                if a[idx(r, t)].is_zero() {
                    continue;
                }
                let q = a[idx(r, t)].quot(&piv)?;
                for c in t..cols {
                    a[idx(r, c)] = a[idx(r, c)].sub_mul(&q, &a[idx(t, c)])?;
                }
                clean &= a[idx(r, t)].is_zero();
            }
            for c in t + 1..cols {
                if a[idx(t, c)].is_zero() {
                    continue;
                }
                let q = a[idx(t, c)].quot(&piv)?;
                for r in t..rows {
                    a[idx(r, c)] = a[idx(r, c)].sub_mul(&q, &a[idx(r, t)])?;
                }
                clean &= a[idx(t, c)].is_zero();
            }
            if clean {
                break;
            }
            // a remainder smaller than the pivot is left in row or column t
            let mut best = (t, t);
            for r in t + 1..rows {
                let v = &a[idx(r, t)];
                if !v.is_zero() && v.mag_lt(&a[idx(best.0, best.1)]) {
                    best = (r, t);
                }
            }
            for c in t + 1..cols {
                let v = &a[idx(t, c)];
                if !v.is_zero() && v.mag_lt(&a[idx(best.0, best.1)]) {
                    best = (t, c);
                }
            }
            swap_rows(&mut a, cols, t, best.0);
            swap_cols(&mut a, cols, rows, t, best.1);
        }
        diag.push(a[idx(t, t)].abs_val()?);
    }
    Some(diag)
}

fn swap_rows<T>(a: &mut [T], cols: usize, r1: usize, r2: usize) {
    if r1 != r2 {
        for c in 0..cols {
            a.swap(r1 * cols + c, r2 * cols + c);
        }
    }
}

fn swap_cols<T>(a: &mut [T], cols: usize, rows: usize, c1: usize, c2: usize) {
    if c1 != c2 {
        for r in 0..rows {
            a.swap(r * cols + c1, r * cols + c2);
        }
    }
}

/// Chain complex of free abelian groups `C_0 ← C_1 ← … ← C_top`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
}

impl IntegerChainComplex {
    /// `boundaries[k − 1]` is `∂_k : C_k → C_{k−1}`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if boundaries.len() != dims.len().saturating_sub(1) {
            return Err(Error::Shape("one boundary per positive degree expected".into()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows != dims[k] || b.cols != dims[k + 1] {
                return Err(Error::Shape(format!("boundary {} has the wrong shape", k + 1)));
            }
        }
        Ok(Self { dims, boundaries })
    }

    /// Ranks of the chain groups.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_k` for `1 ≤ k < dims().len()`.
    pub fn boundary(&self, k: usize) -> Option<&IntegerMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// Betti numbers over `ch` and torsion coefficients of `H_k(C; Z)`,
    /// indexed by `k = 0..dims().len()`.
    pub fn homology(&self, ch: Characteristic) -> (Vec<usize>, Vec<Vec<BigInt>>) {
        let factors: Vec<Vec<BigInt>> = self.boundaries.iter().map(IntegerMatrix::invariant_factors).collect();
        let rank = |k: usize| -> usize {
            k.checked_sub(1)
                .and_then(|i| factors.get(i))
                .map_or(0, |f| rank_from_factors(f, ch))
        };
        let betti = (0..self.dims.len()).map(|k| self.dims[k] - rank(k) - rank(k + 1)).collect();
        let torsion = (0..self.dims.len())
            .map(|k| factors.get(k).map_or_else(Vec::new, |f| f.iter().filter(|d| !d.is_one()).cloned().collect()))
            .collect();
        (betti, torsion)
    }
}

/// Reduced homology of a nonempty cell complex, indexed by dimension
/// `0..=top` (`H̃_{−1}` of a nonempty complex always vanishes).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyProfile {
    /// Coefficient field of [`Self::betti`].
    pub characteristic: Characteristic,
    /// `dim H̃_d` for `d = 0..=top`.
    pub betti: Vec<usize>,
    /// Invariant factors `> 1` of the torsion of `H̃_d(C; Z)`, whatever the
    /// coefficient field.
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyProfile {
    /// All reduced Betti numbers vanish.
    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    /// Some torsion coefficient is present.
    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }

    /// Torsion coefficients as machine integers (saturating at `u64::MAX`).
    pub fn torsion_u64(&self) -> Vec<Vec<u64>> {
        self.torsion
            .iter()
            .map(|t| t.iter().map(|d| d.to_u64().unwrap_or(u64::MAX)).collect())
            .collect()
    }
}

/// Augmented cellular chain complex: degree 0 is the empty cell and degree
/// `d + 1` holds the `d`-cells.
pub fn augmented_chains<C>(c: &C) -> IntegerChainComplex
where
    C: CellComplex,
    C::Cell: Ord + Clone,
{
    let top = c.top_dimension();
    let mut dims = vec![1];
    let mut boundaries = Vec::new();
    let mut prev: BTreeMap<C::Cell, usize> = BTreeMap::new();
    if let Some(top) = top {
        for dim in 0..=top {
            let cells = c.cells(dim);
            let mut b = IntegerMatrix::zero(*dims.last().expect("nonempty"), cells.len());
            for (col, cell) in cells.iter().enumerate() {
                if dim == 0 {
                    b.set(0, col, 1);
                } else {
                    for (face, sign) in c.boundary(cell) {
                        b.set(prev[&face], col, i64::from(sign));
                    }
                }
            }
            dims.push(cells.len());
            boundaries.push(b);
            prev = cells.into_iter().enumerate().map(|(k, x)| (x, k)).collect();
        }
    }
    IntegerChainComplex::new(dims, boundaries).expect("shapes agree")
}

/// Reduced Betti numbers including degree −1: entry `k` is `dim H̃_{k−1}`.
/// Defined for every complex, including the one whose only face is `∅`.
pub fn reduced_betti_from_minus_one<C>(c: &C, ch: Characteristic) -> Vec<usize>
where
    C: CellComplex,
    C::Cell: Ord + Clone,
{
    augmented_chains(c).homology(ch).0
}

/// Reduced homology of a nonempty complex.
pub fn reduced_homology<C>(c: &C, ch: Characteristic) -> Result<HomologyProfile>
where
    C: CellComplex,
    C::Cell: Ord + Clone,
{
    if c.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let (mut betti, mut torsion) = augmented_chains(c).homology(ch);
    debug_assert_eq!(betti[0], 0);
    betti.remove(0);
    torsion.remove(0);
    Ok(HomologyProfile { characteristic: ch, betti, torsion })
}

/// Whether a nonempty complex has vanishing reduced homology over `ch`.
pub fn is_acyclic<C>(c: &C, ch: Characteristic) -> Result<bool>
where
    C: CellComplex,
    C::Cell: Ord + Clone,
{
    Ok(reduced_homology(c, ch)?.is_acyclic())
}

fn coefficient_matrix(
    f: &FreeChainComplex,
    d: usize,
    rows: &[usize],
    cols: &[usize],
    keep: impl Fn(&Monomial) -> bool,
) -> Result<IntegerMatrix> {
    let mut out = IntegerMatrix::zero(rows.len(), cols.len());
    let Some(m) = f.differential(d) else { return Ok(out) };
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            let e = m.get(r, c);
            if e.is_zero() {
                continue;
            }
            let t = e
                .single_term()
                .ok_or_else(|| invalid(format!("entry ({r},{c}) of differential {d} is not a single term")))?;
            if keep(&t.monomial) {
                out.set(i, j, t.coeff);
            }
        }
    }
    Ok(out)
}

/// The multidegree-`f` strand of a multigraded complex: the basis elements
/// whose multidegree divides `f`, with the scalar coefficients of the
/// differential between them.
///
/// For the cellular complex of a labeled complex `C`, `H_d` of the strand is
/// `H̃_{d−1}(C_{≤f})`.
pub fn strand(f: &FreeChainComplex, at: &Monomial) -> Result<IntegerChainComplex> {
    let mut sel: Vec<Vec<usize>> = Vec::with_capacity(f.len());
    for d in 0..f.len() {
        let mut keep = Vec::new();
        for (k, g) in f.mdeg(d).iter().enumerate() {
            if g.divides(at)? {
                keep.push(k);
            }
        }
        sel.push(keep);
    }
    let boundaries = (1..f.len())
        .map(|d| coefficient_matrix(f, d, &sel[d - 1], &sel[d], |_| true))
        .collect::<Result<Vec<_>>>()?;
    IntegerChainComplex::new(sel.iter().map(Vec::len).collect(), boundaries)
}

/// `F ⊗_S k`: only the constant entries of the differentials survive. When
/// `F` resolves `S/I`, the homology ranks are the Betti numbers of `S/I`.
pub fn tensor_with_field(f: &FreeChainComplex) -> Result<IntegerChainComplex> {
    let all: Vec<Vec<usize>> = (0..f.len()).map(|d| (0..f.rank(d)).collect()).collect();
    let boundaries = (1..f.len())
        .map(|d| coefficient_matrix(f, d, &all[d - 1], &all[d], Monomial::is_one))
        .collect::<Result<Vec<_>>>()?;
    IntegerChainComplex::new(f.ranks(), boundaries)
}

/// A simplicial complex on vertices `1..=k`, given by its faces (closed
/// under subsets, `∅` included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    faces: Vec<Vec<IndexSet>>,
}

impl SimplicialComplex {
    /// Builds the complex from a down-closed family of faces containing `∅`.
    pub fn new(mut faces: Vec<IndexSet>) -> Result<Self> {
        faces.sort();
        faces.dedup();
        if faces.first() != Some(&IndexSet::EMPTY) {
            return Err(invalid("a simplicial complex here must contain the empty face"));
        }
        for f in &faces {
            if f.iter().any(|e| faces.binary_search(&f.without(e)).is_err()) {
                return Err(invalid(format!("face {{{f}}} has a missing facet")));
            }
        }
        let top = faces.last().map_or(0, IndexSet::len);
        let mut by_size = vec![Vec::new(); top + 1];
        for f in faces {
            by_size[f.len()].push(f);
        }
        Ok(Self { faces: by_size })
    }
}

impl CellComplex for SimplicialComplex {
    type Cell = IndexSet;

    fn top_dimension(&self) -> Option<usize> {
        (self.faces.len() >= 2).then(|| self.faces.len() - 2)
    }

    fn cells(&self, dim: usize) -> Vec<IndexSet> {
        self.faces.get(dim + 1).cloned().unwrap_or_default()
    }

    fn boundary(&self, cell: &IndexSet) -> Vec<(IndexSet, i8)> {
        if cell.len() < 2 {
            return Vec::new();
        }
        cell.iter()
            .enumerate()
            .map(|(k, e)| (cell.without(e), if k % 2 == 0 { 1 } else { -1 }))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn smith_form_small() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(a.invariant_factors(), [BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert_eq!(a.rank(Characteristic::Zero), 3);
        assert_eq!(a.rank(Characteristic::Prime(2)), 0);
        assert_eq!(a.rank(Characteristic::Prime(3)), 1);
        assert_eq!(IntegerMatrix::zero(3, 0).rank(Characteristic::Zero), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let a = m(&[&[big, big - 1], &[big - 1, big - 2], &[3, 5]]);
        assert_eq!(a.rank(Characteristic::Zero), 2);
    }

    #[test]
    fn characteristic_parsing() {
        assert_eq!(Characteristic::from_u32(0).unwrap(), Characteristic::Zero);
        assert_eq!(Characteristic::from_u32(7).unwrap(), Characteristic::Prime(7));
        assert!(Characteristic::from_u32(1).is_err());
        assert!(Characteristic::from_u32(9).is_err());
    }

    fn sc(faces: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(faces.iter().map(|f| IndexSet::from_elems(f).unwrap()).collect()).unwrap()
    }

    #[test]
    fn circle_and_points() {
        let circle = sc(&[&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(reduced_homology(&circle, Characteristic::Zero).unwrap().betti, [0, 1]);
        let points = sc(&[&[], &[1], &[2]]);
        assert_eq!(reduced_homology(&points, Characteristic::Zero).unwrap().betti, [1]);
        let only_empty = sc(&[&[]]);
        assert_eq!(reduced_betti_from_minus_one(&only_empty, Characteristic::Zero), [1]);
        assert_eq!(reduced_homology(&only_empty, Characteristic::Zero), Err(Error::EmptyComplex));
        let filled = sc(&[&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]]);
        assert!(is_acyclic(&filled, Characteristic::Prime(2)).unwrap());
    }

    #[test]
    fn projective_plane_torsion() {
        // six-vertex RP^2
        let tris: [[usize; 3]; 10] = [
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 2, 6],
            [2, 3, 5],
            [2, 4, 5],
            [2, 4, 6],
            [3, 4, 6],
            [3, 5, 6],
        ];
        let mut faces = Vec::new();
        for t in tris {
            let s = IndexSet::from_elems(&t).unwrap();
            for mask in 0..8u32 {
                let sub: Vec<usize> = (0..3).filter(|k| mask >> k & 1 == 1).map(|k| t[k]).collect();
                faces.push(IndexSet::from_elems(&sub).unwrap());
            }
            faces.push(s);
        }
        let rp2 = SimplicialComplex::new(faces).unwrap();
        let q = reduced_homology(&rp2, Characteristic::Zero).unwrap();
        assert_eq!(q.betti, [0, 0, 0]);
        assert_eq!(q.torsion[1], [BigInt::from(2)]);
        let f2 = reduced_homology(&rp2, Characteristic::Prime(2)).unwrap();
        assert_eq!(f2.betti, [0, 1, 1]);
    }
}
