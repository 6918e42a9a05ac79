//! Link descriptors and their first-order invariants.
//!
//! Quasi-smoothness of general weighted input is not verified; the `(w, d)`
//! data is trusted as given.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{as_natural, big_lcm, BigRational};
use crate::error::{Error, Result};

/// Brieskorn–Pham exponents `(a_0, ..., a_n)`, kept sorted ascending.
///
/// Permuting coordinates gives isomorphic links, so the sorted tuple is the
/// canonical identity. Exponents equal to 1 are accepted (the link is then a
/// standard sphere).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(mut a: Vec<u64>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least two exponents, got {}",
                a.len()
            )));
        }
        if a.contains(&0) {
            return Err(Error::InvalidInput("exponents must be >= 1".into()));
        }
        a.sort_unstable();
        Ok(ExponentVector(a))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Number of exponents, `n + 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `n`, the complex dimension of the hypersurface's ambient projective quotient.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    /// Real dimension of the link, `2n - 1`.
    pub fn dimension(&self) -> usize {
        2 * self.n() - 1
    }

    pub fn has_unit_exponent(&self) -> bool {
        self.0.first() == Some(&1)
    }

    pub fn largest(&self) -> u64 {
        *self.0.last().expect("non-empty")
    }

    pub fn degree(&self) -> BigUint {
        big_lcm(&self.0)
    }

    /// `sum 1/a_i`.
    pub fn reciprocal_sum(&self) -> BigRational {
        self.0
            .iter()
            .map(|&a| BigRational::new(BigInt::one(), BigInt::from(a)))
            .sum()
    }

    pub fn to_hypersurface(&self) -> WeightedHypersurface {
        let (w, d) = weights_degree(self);
        WeightedHypersurface { w, d }
    }
}

impl TryFrom<Vec<u64>> for ExponentVector {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        ExponentVector::new(v)
    }
}

impl From<ExponentVector> for Vec<u64> {
    fn from(a: ExponentVector) -> Self {
        a.0
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Weight vector with `gcd = 1` plus a degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedHypersurface {
    #[serde(with = "crate::serde_str::vec")]
    w: Vec<BigUint>,
    #[serde(with = "crate::serde_str")]
    d: BigUint,
}

impl WeightedHypersurface {
    pub fn new(w: Vec<BigUint>, d: BigUint) -> Result<Self> {
        if w.len() < 2 {
            return Err(Error::InvalidInput("need at least two weights".into()));
        }
        if d.is_zero() || w.iter().any(Zero::is_zero) {
            return Err(Error::InvalidInput(
                "weights and degree must be positive".into(),
            ));
        }
        let g = w.iter().fold(BigUint::zero(), |g, x| g.gcd(x));
        if !g.is_one() {
            return Err(Error::InvalidInput(format!(
                "weights must have gcd 1, got {g}"
            )));
        }
        Ok(WeightedHypersurface { w, d })
    }

    pub fn from_u64(w: &[u64], d: u64) -> Result<Self> {
        Self::new(
            w.iter().map(|&x| BigUint::from(x)).collect(),
            BigUint::from(d),
        )
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.w
    }

    pub fn degree(&self) -> &BigUint {
        &self.d
    }

    pub fn n(&self) -> usize {
        self.w.len() - 1
    }

    pub fn dimension(&self) -> usize {
        2 * self.n() - 1
    }

    /// The rational weights `d / w_i` in lowest terms.
    pub fn ratios(&self) -> Vec<BigRational> {
        self.w
            .iter()
            .map(|wi| BigRational::new(BigInt::from(self.d.clone()), BigInt::from(wi.clone())))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinkSource {
    Exponents(ExponentVector),
    Weighted(WeightedHypersurface),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDescriptor {
    pub source: LinkSource,
    pub hypersurface: WeightedHypersurface,
    pub dimension: usize,
}

impl LinkDescriptor {
    pub fn from_exponents(a: ExponentVector) -> Self {
        let hypersurface = a.to_hypersurface();
        let dimension = a.dimension();
        LinkDescriptor {
            source: LinkSource::Exponents(a),
            hypersurface,
            dimension,
        }
    }

    pub fn from_weighted(h: WeightedHypersurface) -> Self {
        let dimension = h.dimension();
        LinkDescriptor {
            source: LinkSource::Weighted(h.clone()),
            hypersurface: h,
            dimension,
        }
    }

    pub fn exponents(&self) -> Option<&ExponentVector> {
        match &self.source {
            LinkSource::Exponents(a) => Some(a),
            LinkSource::Weighted(_) => None,
        }
    }
}

/// `d = lcm(a_i)`, `w_i = d / a_i`.
pub fn weights_degree(a: &ExponentVector) -> (Vec<BigUint>, BigUint) {
    let d = a.degree();
    let w = a
        .as_slice()
        .iter()
        .map(|&ai| &d / BigUint::from(ai))
        .collect();
    (w, d)
}

/// Milnor number `prod (d/w_i - 1)`.
pub fn milnor_number(h: &WeightedHypersurface) -> Result<BigUint> {
    let one = BigRational::one();
    let mut mu = BigRational::one();
    for r in h.ratios() {
        if r < one {
            return Err(Error::InvalidInput(format!("d/w_i = {r} is below 1")));
        }
        mu *= r - &one;
    }
    as_natural(&mu).ok_or_else(|| {
        Error::InvalidInput(format!(
            "Milnor number {mu} is not an integer; (w, d) is not a supported isolated singularity"
        ))
    })
}

pub fn milnor_number_bp(a: &ExponentVector) -> BigUint {
    a.as_slice().iter().map(|&x| BigUint::from(x - 1)).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanoClass {
    Positive,
    Null,
    Negative,
}

/// `sum w_i - d`; the link is Fano exactly when this is positive.
pub fn fano_index(h: &WeightedHypersurface) -> BigInt {
    let total: BigUint = h.w.iter().sum();
    BigInt::from(total) - BigInt::from(h.d.clone())
}

pub fn fano_class(h: &WeightedHypersurface) -> FanoClass {
    let idx = fano_index(h);
    if idx.is_positive() {
        FanoClass::Positive
    } else if idx.is_zero() {
        FanoClass::Null
    } else {
        FanoClass::Negative
    }
}

/// Genus of a quasi-smooth degree-`d` curve in `P(w0, w1, w2)`.
pub fn curve_genus(w: [u64; 3], d: u64) -> Result<BigUint> {
    if d == 0 || w.contains(&0) {
        return Err(Error::InvalidInput(
            "weights and degree must be positive".into(),
        ));
    }
    let q = |n: u64, m: u64| BigRational::new(BigInt::from(n), BigInt::from(m));
    let dq = BigRational::from_integer(BigInt::from(d));
    let [w0, w1, w2] = w;
    let mut g = q(d, 1) * q(d, 1) / (q(w0, 1) * q(w1, 1) * q(w2, 1));
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        g -= &dq * q(w[i].gcd(&w[j]), w[i] * w[j]);
    }
    for wi in w {
        g += q(d.gcd(&wi), wi);
    }
    g -= BigRational::one();
    g /= BigRational::from_integer(BigInt::from(2));
    as_natural(&g)
        .ok_or_else(|| Error::InvalidInput(format!("genus evaluates to {g}, not a natural number")))
}
