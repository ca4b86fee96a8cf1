//! Weighted complete bipartite graphs `K_{m,n}` and their edge-ideal generators.
//!
//! Both weighting kinds normalize to a [`VertexLabeling`], the map
//! `(i, j) -> generator` that labels the vertices of `V_{m,n}`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Result};
use crate::monomial::{Ambient, Monomial};

/// Largest supported partite-set size (index sets are stored as `u32` masks).
pub const MAX_SIDE: usize = 32;

/// One of the two partite sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// The `X_1..X_m` side.
    X,
    /// The `Y_1..Y_n` side.
    Y,
}

/// A vertex of `K_{m,n}`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    /// Partite set.
    pub side: Side,
    /// 1-based index within the side.
    pub index: usize,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::X => write!(f, "X{}", self.index),
            Side::Y => write!(f, "Y{}", self.index),
        }
    }
}

fn check_dims(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(invalid("both partite sets must be nonempty"));
    }
    if m > MAX_SIDE || n > MAX_SIDE {
        return Err(invalid(format!("partite sets are limited to {MAX_SIDE} vertices")));
    }
    Ok(())
}

/// Edge weighting `ω` on `K_{m,n}`; `weight(i, j) = ω(X_i Y_j) ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeWeighting {
    m: usize,
    n: usize,
    omega: Vec<u32>,
}

impl EdgeWeighting {
    /// From an `m × n` matrix of positive weights.
    pub fn new(rows: &[Vec<u32>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        check_dims(m, n)?;
        if rows.iter().any(|r| r.len() != n) {
            return Err(invalid("edge weight rows have different lengths"));
        }
        let omega: Vec<u32> = rows.iter().flatten().copied().collect();
        if omega.contains(&0) {
            return Err(invalid("edge weights must be positive"));
        }
        Ok(Self { m, n, omega })
    }

    /// From a row-major weight vector.
    pub fn from_row_major(m: usize, n: usize, omega: Vec<u32>) -> Result<Self> {
        check_dims(m, n)?;
        if omega.len() != m * n {
            return Err(invalid(format!("expected {} weights, got {}", m * n, omega.len())));
        }
        if omega.contains(&0) {
            return Err(invalid("edge weights must be positive"));
        }
        Ok(Self { m, n, omega })
    }

    /// The constant weighting `ω ≡ c`.
    pub fn constant(m: usize, n: usize, c: u32) -> Result<Self> {
        Self::from_row_major(m, n, alloc::vec![c; m * n])
    }

    /// Number of X-vertices.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of Y-vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `ω(X_i Y_j)`, 1-based.
    pub fn weight(&self, i: usize, j: usize) -> u32 {
        assert!((1..=self.m).contains(&i) && (1..=self.n).contains(&j));
        self.omega[(i - 1) * self.n + (j - 1)]
    }

    /// Row-major weights.
    pub fn as_row_major(&self) -> &[u32] {
        &self.omega
    }

    /// Weights as nested rows.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.omega.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    /// `α`, the minimum edge weight.
    pub fn min_weight(&self) -> u32 {
        *self.omega.iter().min().expect("weightings are nonempty")
    }

    /// Weights of the edges incident to `v`.
    pub fn incident_weights(&self, v: Vertex) -> Vec<u32> {
        match v.side {
            Side::X => (1..=self.n).map(|j| self.weight(v.index, j)).collect(),
            Side::Y => (1..=self.m).map(|i| self.weight(i, v.index)).collect(),
        }
    }

    /// `K_{m,n}^ω − v`: drops a row (X) or column (Y); remaining vertices keep
    /// their relative order.
    pub fn delete_vertex(&self, side: Side, index: usize) -> Result<Self> {
        match side {
            Side::X => {
                if !(1..=self.m).contains(&index) {
                    return Err(invalid(format!("no vertex X{index}")));
                }
                if self.m < 2 {
                    return Err(invalid("cannot delete the last X-vertex"));
                }
                let omega = (1..=self.m)
                    .filter(|&i| i != index)
                    .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
                    .map(|(i, j)| self.weight(i, j))
                    .collect();
                Ok(Self { m: self.m - 1, n: self.n, omega })
            }
            Side::Y => {
                if !(1..=self.n).contains(&index) {
                    return Err(invalid(format!("no vertex Y{index}")));
                }
                if self.n < 2 {
                    return Err(invalid("cannot delete the last Y-vertex"));
                }
                let omega = (1..=self.m)
                    .flat_map(|i| (1..=self.n).filter(|&j| j != index).map(move |j| (i, j)))
                    .map(|(i, j)| self.weight(i, j))
                    .collect();
                Ok(Self { m: self.m, n: self.n - 1, omega })
            }
        }
    }

    /// Generators `(X_i Y_j)^{ω(X_i Y_j)}`.
    pub fn labels(&self) -> VertexLabeling {
        let amb = Ambient::new(self.m, self.n);
        let labels = (1..=self.m)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let w = self.weight(i, j);
                Monomial::xy(amb, i, w, j, w)
            })
            .collect();
        VertexLabeling { m: self.m, n: self.n, labels }
    }

    /// Every weighting of `K_{m,n}` with entries in `1..=max_weight`, in
    /// row-major lexicographic order.
    pub fn enumerate(m: usize, n: usize, max_weight: u32) -> Result<WeightingIter> {
        check_dims(m, n)?;
        if max_weight == 0 {
            return Err(invalid("max weight must be positive"));
        }
        Ok(WeightingIter { m, n, max_weight, next: Some(alloc::vec![1; m * n]) })
    }
}

impl fmt::Display for EdgeWeighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.omega.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, w) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{w}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Odometer over all edge weightings with bounded entries.
#[derive(Clone, Debug)]
pub struct WeightingIter {
    m: usize,
    n: usize,
    max_weight: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for WeightingIter {
    type Item = EdgeWeighting;

    fn next(&mut self) -> Option<EdgeWeighting> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            if succ[pos] < self.max_weight {
                succ[pos] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos] = 1;
        }
        Some(EdgeWeighting { m: self.m, n: self.n, omega: cur })
    }
}

/// Vertex weighting `λ` on `K_{m,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexWeighting {
    x: Vec<u32>,
    y: Vec<u32>,
}

impl VertexWeighting {
    /// `λ(X_i) = x[i-1]`, `λ(Y_j) = y[j-1]`, all positive.
    pub fn new(x: Vec<u32>, y: Vec<u32>) -> Result<Self> {
        check_dims(x.len(), y.len())?;
        if x.contains(&0) || y.contains(&0) {
            return Err(invalid("vertex weights must be positive"));
        }
        Ok(Self { x, y })
    }

    /// Number of X-vertices.
    pub fn m(&self) -> usize {
        self.x.len()
    }

    /// Number of Y-vertices.
    pub fn n(&self) -> usize {
        self.y.len()
    }

    /// X-side weights.
    pub fn x_weights(&self) -> &[u32] {
        &self.x
    }

    /// Y-side weights.
    pub fn y_weights(&self) -> &[u32] {
        &self.y
    }

    /// Generators `X_i^{λ(X_i)} Y_j^{λ(Y_j)}`.
    pub fn labels(&self) -> VertexLabeling {
        let (m, n) = (self.m(), self.n());
        let amb = Ambient::new(m, n);
        let labels = (1..=m)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| Monomial::xy(amb, i, self.x[i - 1], j, self.y[j - 1]))
            .collect();
        VertexLabeling { m, n, labels }
    }
}

/// Generators `f_{i,j}` attached to the vertices `(i, j)` of `V_{m,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexLabeling {
    m: usize,
    n: usize,
    labels: Vec<Monomial>,
}

impl VertexLabeling {
    /// Validates an explicit labeling given row-major over `(i, j)`.
    ///
    /// Each label must be a non-unit monomial supported on `{X_i, Y_j}`.
    pub fn new(m: usize, n: usize, labels: Vec<Monomial>) -> Result<Self> {
        check_dims(m, n)?;
        if labels.len() != m * n {
            return Err(invalid(format!("expected {} labels, got {}", m * n, labels.len())));
        }
        let amb = Ambient::new(m, n);
        for (k, f) in labels.iter().enumerate() {
            let (i, j) = (k / n + 1, k % n + 1);
            if f.ambient() != amb {
                return Err(invalid(format!("label ({i},{j}) lives over {}", f.ambient())));
            }
            if f.is_one() {
                return Err(invalid(format!("label ({i},{j}) is 1")));
            }
            let stray = f
                .exponents()
                .iter()
                .enumerate()
                .any(|(pos, &e)| e > 0 && pos != amb.x(i) && pos != amb.y(j));
            if stray {
                return Err(invalid(format!("label ({i},{j}) = {f} uses other variables")));
            }
        }
        Ok(Self { m, n, labels })
    }

    /// Number of X-vertices.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of Y-vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient polynomial ring.
    pub fn ambient(&self) -> Ambient {
        Ambient::new(self.m, self.n)
    }

    /// `f_{i,j}` (1-based).
    pub fn label(&self, i: usize, j: usize) -> &Monomial {
        assert!((1..=self.m).contains(&i) && (1..=self.n).contains(&j));
        &self.labels[(i - 1) * self.n + (j - 1)]
    }

    /// All generators, row-major.
    pub fn generators(&self) -> &[Monomial] {
        &self.labels
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn rendered(l: &VertexLabeling) -> Vec<String> {
        l.generators().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn unweighted_square() {
        let w = EdgeWeighting::constant(2, 2, 1).unwrap();
        assert_eq!(rendered(&w.labels()), ["X1*Y1", "X1*Y2", "X2*Y1", "X2*Y2"]);
    }

    #[test]
    fn satisfy_graph_labels() {
        let w = EdgeWeighting::new(&[vec![2, 2], vec![3, 2]]).unwrap();
        assert_eq!(rendered(&w.labels()), ["X1^2*Y1^2", "X1^2*Y2^2", "X2^3*Y1^3", "X2^2*Y2^2"]);
        let single = EdgeWeighting::new(&[vec![5]]).unwrap();
        assert_eq!(rendered(&single.labels()), ["X1^5*Y1^5"]);
    }

    #[test]
    fn vertex_weighted_labels() {
        let v = VertexWeighting::new(vec![1, 3], vec![2, 4]).unwrap();
        assert_eq!(rendered(&v.labels()), ["X1*Y1^2", "X1*Y2^4", "X2^3*Y1^2", "X2^3*Y2^4"]);
        let unit = VertexWeighting::new(vec![1, 1], vec![1, 1]).unwrap();
        assert_eq!(unit.labels(), EdgeWeighting::constant(2, 2, 1).unwrap().labels());
        let star = VertexWeighting::new(vec![2], vec![1, 1, 1]).unwrap();
        assert_eq!(rendered(&star.labels()), ["X1^2*Y1", "X1^2*Y2", "X1^2*Y3"]);
    }

    #[test]
    fn deleting_vertices() {
        let w = EdgeWeighting::new(&[vec![2, 2], vec![3, 2]]).unwrap();
        assert_eq!(w.delete_vertex(Side::X, 2).unwrap().rows(), vec![vec![2, 2]]);
        let w = EdgeWeighting::new(&[vec![2, 3], vec![3, 2]]).unwrap();
        assert_eq!(w.delete_vertex(Side::Y, 1).unwrap().rows(), vec![vec![3], vec![2]]);
        let w = EdgeWeighting::new(&[vec![1, 1, 1], vec![2, 3, 4]]).unwrap();
        assert_eq!(w.delete_vertex(Side::X, 1).unwrap().rows(), vec![vec![2, 3, 4]]);
        let row = EdgeWeighting::new(&[vec![1, 2]]).unwrap();
        assert!(row.delete_vertex(Side::X, 1).is_err());
        assert!(row.delete_vertex(Side::Y, 3).is_err());
    }

    #[test]
    fn minimum_weight() {
        assert_eq!(EdgeWeighting::new(&[vec![2, 3], vec![3, 2]]).unwrap().min_weight(), 2);
        assert_eq!(EdgeWeighting::new(&[vec![7]]).unwrap().min_weight(), 7);
        assert_eq!(EdgeWeighting::new(&[vec![1, 2], vec![3, 4]]).unwrap().min_weight(), 1);
    }

    #[test]
    fn rejects_bad_weightings() {
        assert!(EdgeWeighting::new(&[vec![1, 0]]).is_err());
        assert!(EdgeWeighting::new(&[vec![1, 2], vec![1]]).is_err());
        assert!(EdgeWeighting::new(&[]).is_err());
        assert!(VertexWeighting::new(vec![], vec![1]).is_err());
        let amb = Ambient::new(1, 1);
        assert!(VertexLabeling::new(1, 1, vec![Monomial::one(amb)]).is_err());
    }

    #[test]
    fn enumeration_order_and_count() {
        let all: Vec<_> = EdgeWeighting::enumerate(2, 2, 3).unwrap().collect();
        assert_eq!(all.len(), 81);
        assert_eq!(all[0].as_row_major(), &[1, 1, 1, 1]);
        assert_eq!(all[1].as_row_major(), &[1, 1, 1, 2]);
        assert_eq!(all[80].as_row_major(), &[3, 3, 3, 3]);
    }

    #[test]
    fn deletion_commutes_with_labeling() {
        for w in EdgeWeighting::enumerate(2, 3, 2).unwrap() {
            let full = w.labels();
            let del = w.delete_vertex(Side::Y, 2).unwrap().labels();
            // drop column 2 of the label map, then forget Y2 from the ambient
            let expect: Vec<Vec<u32>> = (1..=2)
                .flat_map(|i| [1usize, 3].into_iter().map(move |j| (i, j)))
                .map(|(i, j)| {
                    let f = full.label(i, j);
                    let mut e = vec![f.x_exp(1), f.x_exp(2), f.y_exp(1), f.y_exp(3)];
                    e.shrink_to_fit();
                    e
                })
                .collect();
            let got: Vec<Vec<u32>> = del.generators().iter().map(|g| g.exponents().to_vec()).collect();
            assert_eq!(got, expect);
        }
    }
}
