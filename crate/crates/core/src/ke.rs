//! Fano positivity and the three Kähler–Einstein sufficiency inequalities for
//! Brieskorn–Pham links.
//!
//! A passing report is a certificate that sufficient conditions hold; a
//! failing one says nothing about existence.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link::{fano_class, ExponentVector, FanoClass, WeightedHypersurface};

/// Index pairs over which the third inequality takes `min 1/(b_i b_j)`.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum PairRule {
    /// Unordered pairs `i != j` (equal exponent values at distinct positions count).
    #[default]
    Distinct,
    /// Also `i = j`, i.e. `min` includes `1/b_i²`.
    WithDiagonal,
}

impl std::str::FromStr for PairRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distinct" => Ok(PairRule::Distinct),
            "with-diagonal" | "diagonal" => Ok(PairRule::WithDiagonal),
            other => Err(Error::Usage(format!(
                "unknown pair rule {other:?}; expected distinct or with-diagonal"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KEReport {
    pub a: ExponentVector,
    /// `C_i = lcm` of all exponents except `a_i`.
    #[serde(with = "crate::serde_str::vec")]
    pub c: Vec<BigUint>,
    /// `b_i = gcd(C_i, a_i)`.
    #[serde(with = "crate::serde_str::vec")]
    pub b: Vec<BigUint>,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub pair_rule: PairRule,
    pub passes: bool,
    pub fano: bool,
    pub positive_ricci: bool,
}

fn lcm_except(a: &[u64], skip: usize) -> BigUint {
    a.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .fold(BigUint::one(), |acc, (_, &x)| acc.lcm(&BigUint::from(x)))
}

/// `n/(n-1)` for `n + 1` exponents.
fn slope(len: usize) -> BigRational {
    let n = len as i64 - 1;
    BigRational::new(BigInt::from(n), BigInt::from(n - 1))
}

pub fn ke_check(a: &ExponentVector) -> Result<KEReport> {
    ke_check_with(a, PairRule::Distinct)
}

pub fn ke_check_with(a: &ExponentVector, pair_rule: PairRule) -> Result<KEReport> {
    let v = a.as_slice();
    if v.len() < 3 {
        return Err(Error::Dimension(format!(
            "{a}: the KE conditions need at least three exponents"
        )));
    }
    let c: Vec<BigUint> = (0..v.len()).map(|i| lcm_except(v, i)).collect();
    let b: Vec<BigUint> = c
        .iter()
        .zip(v)
        .map(|(ci, &ai)| ci.gcd(&BigUint::from(ai)))
        .collect();
    let s = a.reciprocal_sum();
    let one = BigRational::one();
    let k = slope(v.len());
    let min_inv = BigRational::new(BigInt::one(), BigInt::from(a.largest()));
    let mut max_bb = BigUint::one();
    let diagonal = usize::from(pair_rule == PairRule::Distinct);
    for i in 0..b.len() {
        for j in (i + diagonal)..b.len() {
            let p = &b[i] * &b[j];
            if p > max_bb {
                max_bb = p;
            }
        }
    }
    let min_bb = BigRational::new(BigInt::one(), BigInt::from(max_bb));
    let cond1 = s > one;
    let cond2 = s < &one + &k * min_inv;
    let cond3 = s < &one + &k * min_bb;
    let fano = fano_class(&a.to_hypersurface()) == FanoClass::Positive;
    Ok(KEReport {
        a: a.clone(),
        c,
        b,
        cond1,
        cond2,
        cond3,
        pair_rule,
        passes: cond1 && cond2 && cond3,
        fano,
        positive_ricci: fano,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Positivity {
    pub fano: bool,
    pub positive_ricci_metric_exists: bool,
}

/// `Σ w_i > d` is both the Fano condition and the hypothesis under which a
/// Sasakian metric of positive Ricci curvature exists.
pub fn positivity(h: &WeightedHypersurface) -> Positivity {
    let idx: BigInt = h
        .weights()
        .iter()
        .map(|w| BigInt::from(w.clone()))
        .sum::<BigInt>()
        - BigInt::from(h.degree().clone());
    let fano = idx.is_positive();
    Positivity {
        fano,
        positive_ricci_metric_exists: fano,
    }
}
