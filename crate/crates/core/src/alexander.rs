//! Characteristic polynomial of the monodromy, Betti numbers and torsion orders.
//!
//! `Δ(t)` is kept in the basis `{t^m - 1}`: `Δ(t) = Π (t^m - 1)^{e_m}`.
//! Exponents may be negative there; only the cyclotomic multiplicities have to
//! be non-negative. The expanded polynomial can have astronomically large
//! degree, so it is never formed except in tests.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{as_integer, divisors, euler_phi, gcd_u64, lcm_u64, moebius, BigRational};
use crate::error::{Error, Result};
use crate::link::{ExponentVector, WeightedHypersurface};

/// Largest `Π(a_i - 1)` the brute-force oracle accepts.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Element `Σ c_m Λ_m` of the divisor ring, with `Λ_a Λ_b = gcd(a,b) Λ_lcm(a,b)`
/// and `Λ_1` the identity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DivisorElement {
    coefficients: BTreeMap<BigUint, BigRational>,
}

impl DivisorElement {
    pub fn one() -> Self {
        Self::lambda(BigUint::one(), BigRational::one())
    }

    /// `c · Λ_m`.
    pub fn lambda(m: BigUint, c: BigRational) -> Self {
        let mut coefficients = BTreeMap::new();
        if !c.is_zero() {
            coefficients.insert(m, c);
        }
        DivisorElement { coefficients }
    }

    pub fn coefficients(&self) -> &BTreeMap<BigUint, BigRational> {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    fn add_term(&mut self, m: BigUint, c: BigRational) {
        let entry = self.coefficients.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coefficients.retain(|_, v| !v.is_zero());
        }
    }

    pub fn sub(&self, other: &DivisorElement) -> DivisorElement {
        let mut out = self.clone();
        for (m, c) in &other.coefficients {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &DivisorElement) -> DivisorElement {
        let mut acc: BTreeMap<BigUint, BigRational> = BTreeMap::new();
        for (a, ca) in &self.coefficients {
            for (b, cb) in &other.coefficients {
                let g = a.gcd(b);
                let l = a / &g * b;
                let c = ca * cb * BigRational::from_integer(BigInt::from(g));
                *acc.entry(l).or_insert_with(BigRational::zero) += c;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        DivisorElement { coefficients: acc }
    }
}

/// `Δ(t) = Π_m (t^m - 1)^{e_m}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CharPoly {
    #[serde(with = "crate::serde_str::map")]
    exponents: BTreeMap<BigUint, BigInt>,
}

impl CharPoly {
    pub fn from_exponents<I: IntoIterator<Item = (BigUint, BigInt)>>(it: I) -> Self {
        let mut exponents = BTreeMap::new();
        for (m, e) in it {
            *exponents.entry(m).or_insert_with(BigInt::zero) += e;
        }
        exponents.retain(|_, e: &mut BigInt| !e.is_zero());
        CharPoly { exponents }
    }

    pub fn exponents(&self) -> &BTreeMap<BigUint, BigInt> {
        &self.exponents
    }

    pub fn exponent(&self, m: u64) -> BigInt {
        self.exponents
            .get(&BigUint::from(m))
            .cloned()
            .unwrap_or_default()
    }

    /// `Σ m·e_m`, which equals the Milnor number.
    pub fn degree(&self) -> BigInt {
        self.exponents
            .iter()
            .map(|(m, e)| BigInt::from(m.clone()) * e)
            .sum()
    }

    /// Multiplicity of `(t - 1)`, i.e. `Σ e_m`.
    pub fn t_minus_one_multiplicity(&self) -> BigInt {
        self.exponents.values().sum()
    }

    /// Multiplicity of each cyclotomic factor `Φ_k`, using
    /// `t^m - 1 = Π_{k | m} Φ_k`. Requires every `m` to fit in `u64`.
    pub fn cyclotomic_multiplicities(&self) -> Result<BTreeMap<u64, BigInt>> {
        let mut out: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (m, e) in &self.exponents {
            let m = m
                .to_u64()
                .ok_or_else(|| Error::Overflow(format!("basis index {m} exceeds u64")))?;
            for k in divisors(m) {
                *out.entry(k).or_insert_with(BigInt::zero) += e;
            }
        }
        out.retain(|_, e| !e.is_zero());
        Ok(out)
    }

    /// Integer coefficients of the expanded polynomial (lowest degree first).
    /// Only sensible for small degree; exact division by `t^m - 1` is checked.
    pub fn expand(&self) -> Result<Vec<BigInt>> {
        let mut poly = vec![BigInt::one()];
        let mut divisors_pending = Vec::new();
        for (m, e) in &self.exponents {
            let m = m
                .to_usize()
                .ok_or_else(|| Error::Overflow("degree too large".into()))?;
            let e = e
                .to_i64()
                .ok_or_else(|| Error::Overflow("exponent too large".into()))?;
            for _ in 0..e.abs() {
                if e > 0 {
                    let mut next = vec![BigInt::zero(); poly.len() + m];
                    for (i, c) in poly.iter().enumerate() {
                        next[i + m] += c;
                        next[i] -= c;
                    }
                    poly = next;
                } else {
                    divisors_pending.push(m);
                }
            }
        }
        for m in divisors_pending {
            // divide by t^m - 1: q_i = -(p_i) + q_{i-m}, from the bottom up
            if poly.len() <= m {
                return Err(Error::Internal("Δ(t) is not a polynomial".into()));
            }
            let qlen = poly.len() - m;
            let mut q = vec![BigInt::zero(); qlen];
            for i in 0..qlen {
                let prev = if i >= m {
                    q[i - m].clone()
                } else {
                    BigInt::zero()
                };
                q[i] = prev - &poly[i];
            }
            for i in qlen..poly.len() {
                let expect = if i >= m {
                    q[i - m].clone()
                } else {
                    BigInt::zero()
                };
                let rem = &poly[i] - &expect;
                if !rem.is_zero() {
                    return Err(Error::Internal("Δ(t) is not a polynomial".into()));
                }
            }
            poly = q;
        }
        Ok(poly)
    }
}

/// `Δ(t)` from the weights via the divisor product `Π ((1/v_i) Λ_{u_i} - Λ_1)`,
/// where `d / w_i = u_i / v_i` in lowest terms.
pub fn milnor_orlik_divisor(h: &WeightedHypersurface) -> Result<CharPoly> {
    let mut acc = DivisorElement::one();
    for r in h.ratios() {
        if r < BigRational::one() {
            return Err(Error::InvalidInput(format!("d/w_i = {r} is below 1")));
        }
        let u = r.numer().magnitude().clone();
        let v = r.denom().clone();
        let factor = DivisorElement::lambda(u, BigRational::new(BigInt::one(), v))
            .sub(&DivisorElement::one());
        acc = acc.mul(&factor);
        if acc.is_zero() {
            break;
        }
    }
    let mut exps = Vec::with_capacity(acc.coefficients.len());
    for (m, c) in acc.coefficients {
        let e = as_integer(&c).ok_or_else(|| {
            Error::Internal(format!(
                "divisor coefficient {c} at Λ_{m} is not an integer"
            ))
        })?;
        exps.push((m, e));
    }
    Ok(CharPoly::from_exponents(exps))
}

pub fn charpoly_bp(a: &ExponentVector) -> CharPoly {
    milnor_orlik_divisor(&a.to_hypersurface()).expect("Brieskorn–Pham data is always integral")
}

/// Independent oracle for BP links: the monodromy eigenvalues are the
/// products `Π ζ_{a_i}^{x_i}` with `0 < x_i < a_i`.
///
/// Tuples are tallied by the multiplicative order of their eigenvalue; each
/// order-`n` class splits evenly over the `φ(n)` primitive roots, giving the
/// multiplicity of `Φ_n`, and Möbius inversion of `Φ_n = Π_{m|n} (t^m-1)^{μ(n/m)}`
/// moves back to the `(t^m - 1)` basis.
pub fn brute_force_charpoly(a: &ExponentVector) -> Result<CharPoly> {
    let scale = a
        .as_slice()
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x - 1))
        .filter(|&s| s <= BRUTE_FORCE_LIMIT);
    if scale.is_none() {
        return Err(Error::ScaleExceeded(format!(
            "Π(a_i - 1) for {a} exceeds {BRUTE_FORCE_LIMIT}"
        )));
    }
    if a.has_unit_exponent() {
        return Ok(CharPoly::default());
    }
    let d = lcm_u64(a.as_slice()).ok_or_else(|| Error::Overflow("degree exceeds u64".into()))?;
    let residues = residue_counts(a.as_slice(), d);

    let mut by_order: BTreeMap<u64, u64> = BTreeMap::new();
    for (s, &c) in residues.iter().enumerate() {
        if c > 0 {
            let order = d / gcd_u64(s as u64, d);
            *by_order.entry(order).or_default() += c;
        }
    }

    let mut exps: BTreeMap<u64, i64> = BTreeMap::new();
    for (&n, &count) in &by_order {
        let phi = euler_phi(n);
        if count % phi != 0 {
            return Err(Error::Internal(format!(
                "{count} eigenvalues of order {n} do not split over φ({n}) = {phi} conjugates"
            )));
        }
        let mult = (count / phi) as i64;
        for m in divisors(n) {
            *exps.entry(m).or_default() += mult * moebius(n / m);
        }
    }
    Ok(CharPoly::from_exponents(
        exps.into_iter()
            .map(|(m, e)| (BigUint::from(m), BigInt::from(e))),
    ))
}

/// Number of tuples `0 < x_i < a_i` with `Σ x_i·(d/a_i) ≡ s (mod d)`.
fn residue_counts(a: &[u64], d: u64) -> Vec<u64> {
    let d_us = d as usize;
    let mut cur = vec![0u64; d_us];
    cur[0] = 1;
    for &ai in a {
        let w = (d / ai) as usize;
        let mut next = vec![0u64; d_us];
        for (s, &c) in cur.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut t = s;
            for _ in 1..ai {
                t += w;
                if t >= d_us {
                    t -= d_us;
                }
                next[t] += c;
            }
        }
        cur = next;
    }
    cur
}

/// `b_n = b_{n-1}` of the link: the multiplicity of `(t - 1)` in `Δ`.
pub fn betti(cp: &CharPoly) -> Result<BigUint> {
    let b = cp.t_minus_one_multiplicity();
    b.to_biguint()
        .ok_or_else(|| Error::Internal(format!("negative (t-1) multiplicity {b}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaAtOne {
    pub is_rational_hs: bool,
    /// `|Δ(1)|`, the order of `H_{n-1}`; absent when `Δ(1) = 0`.
    #[serde(with = "crate::serde_str::option")]
    pub torsion_order: Option<BigUint>,
}

impl DeltaAtOne {
    pub fn is_integral_hs(&self) -> bool {
        self.torsion_order.as_ref().is_some_and(One::is_one)
    }
}

/// `(t^m - 1)/(t - 1) → m` at `t = 1`, so when `Σ e_m = 0`,
/// `|Δ(1)| = Π m^{e_m}`.
pub fn delta_at_one(cp: &CharPoly) -> Result<DeltaAtOne> {
    let total = cp.t_minus_one_multiplicity();
    if total.is_positive() {
        return Ok(DeltaAtOne {
            is_rational_hs: false,
            torsion_order: None,
        });
    }
    if total.is_negative() {
        return Err(Error::Internal(format!(
            "negative (t-1) multiplicity {total}"
        )));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (m, e) in cp.exponents() {
        let p = e
            .magnitude()
            .to_u32()
            .ok_or_else(|| Error::Overflow(format!("exponent {e} too large to evaluate")))?;
        if e.is_positive() {
            num *= m.pow(p);
        } else {
            den *= m.pow(p);
        }
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal("|Δ(1)| is not an integer".into()));
    }
    Ok(DeltaAtOne {
        is_rational_hs: true,
        torsion_order: Some(q),
    })
}
