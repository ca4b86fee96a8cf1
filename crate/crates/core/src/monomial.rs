//! Monomials and integer-coefficient monomial sums in `X_1..X_m, Y_1..Y_n`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Variable counts `(m, n)` of the ring `k[X_1..X_m, Y_1..Y_n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ambient {
    /// Number of `X` variables.
    pub m: usize,
    /// Number of `Y` variables.
    pub n: usize,
}

impl Ambient {
    /// Ring with `m` X-variables and `n` Y-variables.
    pub const fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }

    /// Total number of variables.
    pub const fn num_vars(&self) -> usize {
        self.m + self.n
    }

    /// Exponent-vector position of `X_i` (1-based `i`).
    pub fn x(&self, i: usize) -> usize {
        assert!(1 <= i && i <= self.m, "X_{i} outside 1..={}", self.m);
        i - 1
    }

    /// Exponent-vector position of `Y_j` (1-based `j`).
    pub fn y(&self, j: usize) -> usize {
        assert!(1 <= j && j <= self.n, "Y_{j} outside 1..={}", self.n);
        self.m + j - 1
    }

    /// Ring with one extra X-variable adjoined in front.
    pub const fn with_leading_x(&self) -> Self {
        Self { m: self.m + 1, n: self.n }
    }

    /// Printable name of the variable at exponent position `pos`.
    pub fn var_name(&self, pos: usize) -> VarName {
        if pos < self.m {
            VarName { y: false, index: pos + 1 }
        } else {
            VarName { y: true, index: pos - self.m + 1 }
        }
    }

    fn check(&self, other: &Ambient) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch { left: *self, right: *other })
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// Name of a single variable, rendered `X3` or `Y1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarName {
    /// True for a `Y` variable.
    pub y: bool,
    /// 1-based index.
    pub index: usize,
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.y { 'Y' } else { 'X' }, self.index)
    }
}

/// A monomial `X^a Y^b`, stored as an exponent vector over its ambient ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    ambient: Ambient,
    exps: Vec<u32>,
}

impl Monomial {
    /// The unit monomial `1`.
    pub fn one(ambient: Ambient) -> Self {
        Self { ambient, exps: vec![0; ambient.num_vars()] }
    }

    /// Monomial from a full exponent vector (`X` positions first).
    pub fn from_exponents(ambient: Ambient, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != ambient.num_vars() {
            return Err(Error::Shape(format!(
                "{} exponents for ambient {}",
                exps.len(),
                ambient
            )));
        }
        Ok(Self { ambient, exps })
    }

    /// Builds a monomial from `(X exponents, Y exponents)`.
    pub fn from_parts(xs: &[u32], ys: &[u32]) -> Self {
        let mut exps = Vec::with_capacity(xs.len() + ys.len());
        exps.extend_from_slice(xs);
        exps.extend_from_slice(ys);
        Self { ambient: Ambient::new(xs.len(), ys.len()), exps }
    }

    /// `X_i^e` (1-based `i`).
    pub fn x_pow(ambient: Ambient, i: usize, e: u32) -> Self {
        let mut m = Self::one(ambient);
        m.exps[ambient.x(i)] = e;
        m
    }

    /// `Y_j^e` (1-based `j`).
    pub fn y_pow(ambient: Ambient, j: usize, e: u32) -> Self {
        let mut m = Self::one(ambient);
        m.exps[ambient.y(j)] = e;
        m
    }

    /// `X_i^a Y_j^b`.
    pub fn xy(ambient: Ambient, i: usize, a: u32, j: usize, b: u32) -> Self {
        let mut m = Self::one(ambient);
        m.exps[ambient.x(i)] = a;
        m.exps[ambient.y(j)] = b;
        m
    }

    /// Ambient ring.
    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Exponent vector, `X_1..X_m` then `Y_1..Y_n`.
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `X_i`.
    pub fn x_exp(&self, i: usize) -> u32 {
        self.exps[self.ambient.x(i)]
    }

    /// Exponent of `Y_j`.
    pub fn y_exp(&self, j: usize) -> u32 {
        self.exps[self.ambient.y(j)]
    }

    /// Total degree.
    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    /// True for the unit monomial.
    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.ambient.check(&other.ambient)?;
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Ok(Monomial { ambient: self.ambient, exps })
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.ambient.check(&other.ambient)?;
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        Ok(Monomial { ambient: self.ambient, exps })
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.ambient.check(&other.ambient)?;
        Ok(self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b))
    }

    /// `self / divisor`; fails unless `divisor` divides `self`.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial> {
        self.ambient.check(&divisor.ambient)?;
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&divisor.exps) {
            match a.checked_sub(*b) {
                Some(e) => exps.push(e),
                None => {
                    return Err(Error::NotDivisible {
                        dividend: format!("{self}"),
                        divisor: format!("{divisor}"),
                    })
                }
            }
        }
        Ok(Monomial { ambient: self.ambient, exps })
    }

    /// Product, with exponent overflow reported as an error.
    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.ambient.check(&other.ambient)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { ambient: self.ambient, exps })
    }

    /// Re-embeds into the ring with a new first X-variable (exponent 0).
    pub fn with_leading_x(&self) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + 1);
        exps.push(0);
        exps.extend_from_slice(&self.exps);
        Monomial { ambient: self.ambient.with_leading_x(), exps }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (pos, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", self.ambient.var_name(pos))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A signed monomial `coeff * monomial`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    /// Integer coefficient.
    pub coeff: i64,
    /// Monomial part.
    pub monomial: Monomial,
}

impl Term {
    /// `coeff * monomial`.
    pub fn new(coeff: i64, monomial: Monomial) -> Self {
        Self { coeff, monomial }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coeff {
            1 => write!(f, "{}", self.monomial),
            -1 => write!(f, "-{}", self.monomial),
            c if self.monomial.is_one() => write!(f, "{c}"),
            c => write!(f, "{c}*{}", self.monomial),
        }
    }
}

/// Finite sum of monomials with nonzero integer coefficients.
///
/// At most one entry per monomial, no zero coefficients: two sums are equal
/// iff they are equal as polynomials.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct MonomialSum {
    terms: BTreeMap<Monomial, i64>,
}

impl MonomialSum {
    /// The empty sum.
    pub fn zero() -> Self {
        Self::default()
    }

    /// Sum with a single term (empty if `coeff == 0`).
    pub fn from_term(term: Term) -> Self {
        let mut s = Self::zero();
        s.add_assign_term(term.coeff, &term.monomial).expect("single term cannot overflow");
        s
    }

    /// True when no terms remain.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Alias for [`MonomialSum::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(m, &c)| Term::new(c, m.clone()))
    }

    /// The only term, if the sum has exactly one.
    pub fn single_term(&self) -> Option<Term> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Adds `coeff * mono` in place, dropping the entry if it cancels.
    pub fn add_assign_term(&mut self, coeff: i64, mono: &Monomial) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        if let Some((m, _)) = self.terms.iter().next() {
            m.ambient.check(&mono.ambient)?;
        }
        match self.terms.get_mut(mono) {
            Some(c) => {
                *c = c.checked_add(coeff).ok_or(Error::Overflow)?;
                if *c == 0 {
                    self.terms.remove(mono);
                }
            }
            None => {
                self.terms.insert(mono.clone(), coeff);
            }
        }
        Ok(())
    }

    /// `self + term`.
    pub fn add(&self, term: &Term) -> Result<MonomialSum> {
        let mut out = self.clone();
        out.add_assign_term(term.coeff, &term.monomial)?;
        Ok(out)
    }

    /// `self + other`.
    pub fn add_sum(&self, other: &MonomialSum) -> Result<MonomialSum> {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_assign_term(c, m)?;
        }
        Ok(out)
    }

    /// `-self`.
    pub fn neg(&self) -> MonomialSum {
        MonomialSum { terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect() }
    }

    /// Multiplies every term by the signed monomial `term`.
    pub fn scale(&self, term: &Term) -> Result<MonomialSum> {
        let mut out = MonomialSum::zero();
        for (m, &c) in &self.terms {
            let coeff = c.checked_mul(term.coeff).ok_or(Error::Overflow)?;
            out.add_assign_term(coeff, &m.mul(&term.monomial)?)?;
        }
        Ok(out)
    }

    /// Product of two sums. Matrix products of single-term entries only ever
    /// hit the one-term case, but chain-map checks compose arbitrary entries.
    pub fn mul(&self, other: &MonomialSum) -> Result<MonomialSum> {
        let mut out = MonomialSum::zero();
        for (m, &c) in &other.terms {
            out = out.add_sum(&self.scale(&Term::new(c, m.clone()))?)?;
        }
        Ok(out)
    }

    /// Applies `f` to every monomial (must be injective to keep canonical form).
    pub(crate) fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> MonomialSum {
        let mut out = MonomialSum::zero();
        for (m, &c) in &self.terms {
            out.add_assign_term(c, &f(m)).expect("re-embedding keeps ambients aligned");
        }
        out
    }
}

impl fmt::Display for MonomialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms().enumerate() {
            if k == 0 {
                write!(f, "{t}")?;
            } else if t.coeff < 0 {
                write!(f, " - {}", Term::new(-t.coeff, t.monomial.clone()))?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
