//! Milnor-fiber signatures of Brieskorn–Pham links, Kervaire–Milnor classes and
//! the Kervaire congruence rule.
//!
//! Sign convention: `τ(5,3,2,2,2) = +8`, `τ(2,2,2) = -1`.

use std::f64::consts::PI;

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alexander::{betti, charpoly_bp};
use crate::arith::{lcm_u64, BernoulliTable};
use crate::error::{Error, Result};
use crate::graph::is_homotopy_sphere;
use crate::link::ExponentVector;

/// Below this many outer lattice iterations the count runs on one thread.
const PARALLEL_THRESHOLD: u64 = 1 << 18;

/// Largest `N` the cotangent sum accepts.
pub const ZAGIER_TERM_LIMIT: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignatureMethod {
    Combinatorial,
    ZagierCheck,
}

/// Certified error data of a cotangent-sum evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZagierDiagnostic {
    /// Working precision in bits; 53 means plain `f64`.
    pub precision_bits: u32,
    /// Number of evaluated terms (half the sum, by symmetry).
    pub terms: u64,
    pub approximation: f64,
    /// Rigorous bound on `|approximation - exact value|` at the certifying precision.
    pub error_bound: f64,
}

/// `tau = count_plus - count_minus`; `count_plus + count_minus + nullity = μ`.
///
/// `nullity` counts lattice points whose coordinate sum is an integer; it is
/// the nullity of the intersection form and equals the middle Betti number of
/// the link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureResult {
    pub tau: i64,
    pub count_plus: u64,
    pub count_minus: u64,
    pub nullity: u64,
    pub method: SignatureMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<ZagierDiagnostic>,
}

fn require_odd_length(a: &ExponentVector) -> Result<()> {
    if a.len().is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "{a} has an even number of exponents; the link has dimension {} which is not 4k-1",
            a.dimension()
        )));
    }
    Ok(())
}

#[derive(Default, Clone, Copy)]
struct Counts {
    plus: u64,
    minus: u64,
    null: u64,
}

impl Counts {
    fn merge(self, o: Counts) -> Counts {
        Counts {
            plus: self.plus + o.plus,
            minus: self.minus + o.minus,
            null: self.null + o.null,
        }
    }
}

/// Counts lattice points for a fixed base sum over the odometer `rest`, with
/// the last coordinate handled in closed form per window.
struct LatticeCounter {
    d: u64,
    rest: Vec<(u64, u64)>, // (a_i, d / a_i)
    last_range: u64,       // a_last - 1
    last_w: u64,           // d / a_last
}

impl LatticeCounter {
    #[inline]
    fn tally(&self, s: u64, c: &mut Counts) {
        let (d, w, big_a) = (self.d, self.last_w, self.last_range);
        // values s + x*w, 1 <= x <= A, lie in (s, s + d): at most one boundary t
        let k0 = s / d;
        let r = (k0 + 1) * d - s;
        let below = ((r - 1) / w).min(big_a);
        let on = u64::from(r.is_multiple_of(w) && r / w <= big_a);
        let above = big_a - below - on;
        if k0.is_multiple_of(2) {
            c.plus += below;
            c.minus += above;
        } else {
            c.minus += below;
            c.plus += above;
        }
        c.null += on;
    }

    fn run(&self, base: u64) -> Counts {
        let mut c = Counts::default();
        if self.rest.is_empty() {
            self.tally(base, &mut c);
            return c;
        }
        let k = self.rest.len();
        let mut x = vec![1u64; k];
        let mut s = base + self.rest.iter().map(|&(_, w)| w).sum::<u64>();
        loop {
            self.tally(s, &mut c);
            let mut i = 0;
            loop {
                let (a, w) = self.rest[i];
                if x[i] + 1 < a {
                    x[i] += 1;
                    s += w;
                    break;
                }
                s -= (x[i] - 1) * w;
                x[i] = 1;
                i += 1;
                if i == k {
                    return c;
                }
            }
        }
    }
}

/// Exact signature by counting lattice points `0 < x_i < a_i` according to
/// `Σ x_i/a_i mod 2`.
///
/// All but the largest coordinate are enumerated; the largest is resolved by
/// integer interval arithmetic, so the cost is `Π_{i<last}(a_i - 1)`.
pub fn signature_combinatorial(a: &ExponentVector) -> Result<SignatureResult> {
    require_odd_length(a)?;
    let empty = SignatureResult {
        tau: 0,
        count_plus: 0,
        count_minus: 0,
        nullity: 0,
        method: SignatureMethod::Combinatorial,
        diagnostic: None,
    };
    if a.has_unit_exponent() {
        return Ok(empty);
    }
    let v = a.as_slice();
    let d = lcm_u64(v)
        .filter(|d| {
            d.checked_mul(v.len() as u64 + 1)
                .is_some_and(|x| x < u64::MAX / 2)
        })
        .ok_or_else(|| Error::Overflow(format!("lcm of {a} exceeds the lattice-count range")))?;
    let n = v.len();
    let last = v[n - 1];
    let mut rest: Vec<(u64, u64)> = v[..n - 1].iter().map(|&ai| (ai, d / ai)).collect();
    // the largest remaining coordinate is split across workers
    let (par_a, par_w) = rest.pop().expect("at least three exponents");
    let counter = LatticeCounter {
        d,
        rest,
        last_range: last - 1,
        last_w: d / last,
    };
    let outer: u64 = counter.rest.iter().map(|&(ai, _)| ai - 1).product::<u64>() * (par_a - 1);
    let c = if outer >= PARALLEL_THRESHOLD {
        (1..par_a)
            .into_par_iter()
            .map(|y| counter.run(y * par_w))
            .reduce(Counts::default, Counts::merge)
    } else {
        (1..par_a)
            .map(|y| counter.run(y * par_w))
            .fold(Counts::default(), Counts::merge)
    };
    Ok(SignatureResult {
        tau: c.plus as i64 - c.minus as i64,
        count_plus: c.plus,
        count_minus: c.minus,
        nullity: c.null,
        ..empty
    })
}

/// `cot(π p / q)` expressed through an angle in `[0, π/4]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reduced {
    Zero,
    /// `sign · 1/tan(π num/den)` (`recip`) or `sign · tan(π num/den)`.
    Trig {
        negate: bool,
        recip: bool,
        num: u64,
        den: u64,
    },
}

/// Exact octant reduction; `p` must not be a multiple of `q`.
fn reduce_cot(p: u64, q: u64) -> Reduced {
    let mut p = p % q;
    debug_assert!(p != 0, "cot pole");
    if 2 * p == q {
        return Reduced::Zero;
    }
    let negate = 2 * p > q;
    if negate {
        p = q - p;
    }
    if 4 * p <= q {
        Reduced::Trig {
            negate,
            recip: true,
            num: p,
            den: q,
        }
    } else {
        Reduced::Trig {
            negate,
            recip: false,
            num: q - 2 * p,
            den: 2 * q,
        }
    }
}

/// `cot(π p / q)` in `f64`, relative error a few ulps.
pub fn cot_pi_frac(p: u64, q: u64) -> f64 {
    match reduce_cot(p, q) {
        Reduced::Zero => 0.0,
        Reduced::Trig {
            negate,
            recip,
            num,
            den,
        } => {
            let t = (PI * num as f64 / den as f64).tan();
            let v = if recip { 1.0 / t } else { t };
            if negate {
                -v
            } else {
                v
            }
        }
    }
}

/// `sin`/`cos` of `π m / (4N)` for `0 <= m <= N` from two short tables.
struct QuarterTable {
    shift: u32,
    mask: usize,
    hi: Vec<(f64, f64)>,
    lo: Vec<(f64, f64)>,
}

impl QuarterTable {
    fn new(n: u64) -> Self {
        // a power-of-two step turns the index split into a shift and a mask
        let step = (((n + 1) as f64).sqrt().ceil() as usize).next_power_of_two();
        let q = 4.0 * n as f64;
        let sc = |m: usize| {
            let x = PI * m as f64 / q;
            (x.sin(), x.cos())
        };
        let hi = (0..=(n as usize / step) + 1)
            .map(|h| sc(h * step))
            .collect();
        let lo = (0..step).map(sc).collect();
        QuarterTable {
            shift: step.trailing_zeros(),
            mask: step - 1,
            hi,
            lo,
        }
    }

    #[inline]
    fn sin_cos(&self, m: u64) -> (f64, f64) {
        let m = m as usize;
        let (sh, ch) = self.hi[m >> self.shift];
        let (sl, cl) = self.lo[m & self.mask];
        (sh * cl + ch * sl, ch * cl - sh * sl)
    }

    /// `cot(π k / (2N))` for odd `0 < k < N`, where the angle lies in `(0, π/2)`.
    #[inline]
    fn cot_half(&self, k: u64, n: u64) -> f64 {
        if 2 * k <= n {
            let (s, c) = self.sin_cos(2 * k);
            c / s
        } else {
            // cot θ = tan(π/2 - θ)
            let (s, c) = self.sin_cos(2 * (n - k));
            s / c
        }
    }
}

/// Extended-precision policy for the cotangent sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZagierConfig {
    /// Skip the `f64` certificate and go straight to the extended ladder.
    pub extended_only: bool,
    /// Precisions (bits) tried in order once `f64` fails to certify.
    pub precisions: Vec<usize>,
}

impl Default for ZagierConfig {
    fn default() -> Self {
        ZagierConfig {
            extended_only: false,
            precisions: vec![128, 256, 512],
        }
    }
}

struct ZagierSetup {
    n: u64,
    half: u64,
    sign: f64,
    /// distinct exponent and multiplicity
    groups: Vec<(u64, u32)>,
    factors: usize,
}

fn zagier_setup(a: &ExponentVector, multiple: u64) -> Result<ZagierSetup> {
    require_odd_length(a)?;
    if multiple == 0 {
        return Err(Error::Usage("multiple must be positive".into()));
    }
    let v = a.as_slice();
    let n = lcm_u64(v)
        .and_then(|l| l.checked_mul(multiple))
        .filter(|&n| n <= ZAGIER_TERM_LIMIT)
        .ok_or_else(|| {
            Error::ScaleExceeded(format!(
                "common multiple for {a} exceeds {ZAGIER_TERM_LIMIT} terms"
            ))
        })?;
    let mut groups: Vec<(u64, u32)> = Vec::new();
    for &x in v {
        match groups.last_mut() {
            Some((e, m)) if *e == x => *m += 1,
            _ => groups.push((x, 1)),
        }
    }
    let k = (v.len() - 1) / 2;
    Ok(ZagierSetup {
        n,
        half: n / 2,
        sign: if k.is_multiple_of(2) { 1.0 } else { -1.0 },
        groups,
        factors: v.len() + 1,
    })
}

struct F64Sum {
    value: f64,
    error: f64,
    abs_sum: f64,
}

/// `cot(π(2r+1)/(2e))^m` for `r in 0..e`, from the same two-level tables as
/// the main factor.
fn exponent_table(e: u64, m: u32) -> Vec<f64> {
    let q = QuarterTable::new(e);
    (0..e)
        .map(|r| {
            let k = 2 * r + 1;
            let v = match k.cmp(&e) {
                std::cmp::Ordering::Less => q.cot_half(k, e),
                std::cmp::Ordering::Equal => 0.0,
                // cot(π - θ) = -cot θ
                std::cmp::Ordering::Greater => -q.cot_half(2 * e - k, e),
            };
            v.powi(m as i32)
        })
        .collect()
}

/// The symmetric half of the sum in `f64` with a rigorous error bound.
///
/// Terms `j` and `N-1-j` coincide (an even number of factors changes sign), and
/// the middle term of odd `N` vanishes.
fn zagier_f64(z: &ZagierSetup) -> F64Sum {
    let eps = f64::EPSILON / 2.0;
    let tables: Vec<Vec<f64>> = z
        .groups
        .iter()
        .map(|&(e, m)| exponent_table(e, m))
        .collect();
    let quarter = QuarterTable::new(z.n);
    let (mut sum, mut comp, mut abs_sum) = (0.0f64, 0.0f64, 0.0f64);
    let mut idx = vec![0usize; tables.len()];
    for j in 0..z.half {
        let mut t = quarter.cot_half(2 * j + 1, z.n);
        for (tab, r) in tables.iter().zip(idx.iter_mut()) {
            t *= tab[*r];
            *r += 1;
            if *r == tab.len() {
                *r = 0;
            }
        }
        // Neumaier compensated summation
        let s = sum + t;
        comp += if sum.abs() >= t.abs() {
            (sum - s) + t
        } else {
            (t - s) + sum
        };
        sum = s;
        abs_sum += t.abs();
    }
    let n_terms = z.half as f64;
    // every factor is within 32 ulps (table reconstruction dominates); powers
    // and products add one rounding per factor
    let f = z.factors as f64;
    let rho = 33.0 * f * eps * 1.01;
    let sum_err = (2.0 * eps + 2.0 * n_terms * eps * eps) * abs_sum;
    let total = sum + comp;
    let value = z.sign * 2.0 * total / z.n as f64;
    let abs_total = 2.0 * abs_sum / z.n as f64;
    let error = (rho * abs_total + 2.0 * sum_err / z.n as f64) * 1.01 + 4.0 * eps * value.abs();
    F64Sum {
        value,
        error,
        abs_sum: abs_total,
    }
}

fn big_cot(p: u64, q: u64, prec: usize, cc: &mut Consts) -> BigFloat {
    let rm = RoundingMode::ToEven;
    match reduce_cot(p, q) {
        Reduced::Zero => BigFloat::from_u64(0, prec),
        Reduced::Trig {
            negate,
            recip,
            num,
            den,
        } => {
            let x = cc
                .pi(prec, rm)
                .mul(&BigFloat::from_u64(num, prec), prec, rm)
                .div(&BigFloat::from_u64(den, prec), prec, rm);
            let t = x.tan(prec, rm, cc);
            let v = if recip {
                BigFloat::from_u64(1, prec).div(&t, prec, rm)
            } else {
                t
            };
            if negate {
                v.neg()
            } else {
                v
            }
        }
    }
}

/// Certifies `candidate` at `prec` bits, given a bound on `Σ|t_j| / N`.
fn zagier_extended(
    z: &ZagierSetup,
    prec: usize,
    candidate: i64,
    abs_sum: f64,
) -> Result<Option<f64>> {
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().map_err(|e| Error::Internal(format!("constant cache: {e:?}")))?;
    let two_n = 2 * z.n;
    let tables: Vec<Vec<BigFloat>> = z
        .groups
        .iter()
        .map(|&(e, m)| {
            (0..e)
                .map(|r| {
                    let c = big_cot(2 * r + 1, 2 * e, prec, &mut cc);
                    (1..m).fold(c.clone(), |acc, _| acc.mul(&c, prec, rm))
                })
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; tables.len()];
    let mut sum = BigFloat::from_u64(0, prec);
    for j in 0..z.half {
        let mut t = big_cot(2 * j + 1, two_n, prec, &mut cc);
        for (tab, r) in tables.iter().zip(idx.iter_mut()) {
            t = t.mul(&tab[*r], prec, rm);
            *r += 1;
            if *r == tab.len() {
                *r = 0;
            }
        }
        sum = sum.add(&t, prec, rm);
    }
    let scale =
        BigFloat::from_f64(2.0 * z.sign, prec).div(&BigFloat::from_u64(z.n, prec), prec, rm);
    let value = sum.mul(&scale, prec, rm);
    if value.is_nan() || value.is_inf() {
        return Err(Error::NumericalFailure(
            "non-finite extended-precision sum".into(),
        ));
    }
    // per-factor error <= 8 units in the last place (argument rounding through
    // the octant-reduced tangent), plus naive summation and the final scaling
    let u = (2.0f64).powi(-(prec as i32));
    let f = z.factors as f64;
    let bound = ((9.0 * f * 1.01 + z.half as f64 + 4.0) * u * abs_sum * 1.01).max(u);
    let dist = value
        .sub(&BigFloat::from_i64(candidate, prec), prec, rm)
        .abs();
    let limit = BigFloat::from_f64(0.25 - bound, prec);
    Ok((bound < 0.25 && dist.cmp(&limit).is_some_and(|c| c < 0)).then_some(bound))
}

/// Cotangent-sum signature with `N = multiple · lcm(a)`, rounded to an integer
/// only under a certified error bound below `1/4`.
pub fn signature_zagier(a: &ExponentVector, multiple: u64) -> Result<SignatureResult> {
    signature_zagier_with(a, multiple, &ZagierConfig::default())
}

pub fn signature_zagier_with(
    a: &ExponentVector,
    multiple: u64,
    config: &ZagierConfig,
) -> Result<SignatureResult> {
    let z = zagier_setup(a, multiple)?;
    let approx = zagier_f64(&z);
    if !approx.value.is_finite() {
        return Err(Error::NumericalFailure(format!(
            "non-finite cotangent sum for {a}"
        )));
    }
    let candidate = approx.value.round();
    let mut certified: Option<(u32, f64)> = None;
    if !config.extended_only && (approx.value - candidate).abs() + approx.error < 0.25 {
        certified = Some((53, approx.error));
    } else {
        for &prec in &config.precisions {
            if let Some(bound) = zagier_extended(&z, prec, candidate as i64, approx.abs_sum)? {
                certified = Some((prec as u32, bound));
                break;
            }
        }
    }
    let (bits, bound) = certified.ok_or_else(|| {
        Error::NumericalFailure(format!(
            "cotangent sum for {a} not certified: approx {} with f64 error bound {}",
            approx.value, approx.error
        ))
    })?;
    let tau = candidate as i64;
    let (plus, minus, nullity) = counts_from_tau(a, tau)?;
    Ok(SignatureResult {
        tau,
        count_plus: plus,
        count_minus: minus,
        nullity,
        method: SignatureMethod::ZagierCheck,
        diagnostic: Some(ZagierDiagnostic {
            precision_bits: bits,
            terms: z.half,
            approximation: approx.value,
            error_bound: bound,
        }),
    })
}

/// Lattice counts implied by `τ`, `μ` and the nullity (the Betti number).
fn counts_from_tau(a: &ExponentVector, tau: i64) -> Result<(u64, u64, u64)> {
    let mu = a
        .as_slice()
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x - 1))
        .ok_or_else(|| Error::Overflow(format!("Milnor number of {a} exceeds u64")))?;
    let b = betti(&charpoly_bp(a))?
        .to_u64()
        .ok_or_else(|| Error::Overflow("Betti number exceeds u64".into()))?;
    let rest = mu as i128 - b as i128;
    if (rest + tau as i128) % 2 != 0 || (tau as i128).abs() > rest {
        return Err(Error::Internal(format!(
            "τ = {tau} inconsistent with μ = {mu}, b = {b} for {a}"
        )));
    }
    Ok((
        ((rest + tau as i128) / 2) as u64,
        ((rest - tau as i128) / 2) as u64,
        b,
    ))
}

/// `|bP_{4m}| = 2^{2m-2}(2^{2m-1} - 1) · numerator(4 B_m / m)`.
pub fn bp_order(m: u64) -> Result<BigUint> {
    bp_orders(m).map(|mut v| v.pop().expect("non-empty"))
}

/// `|bP_8| ..= |bP_{4 m_max}|`, sharing one Bernoulli table.
pub fn bp_orders(m_max: u64) -> Result<Vec<BigUint>> {
    if m_max < 2 {
        return Err(Error::Usage(format!("bP_4m needs m >= 2, got {m_max}")));
    }
    let table = BernoulliTable::new(m_max as usize);
    Ok((2..=m_max)
        .map(|m| {
            let b = table.get(m as usize).expect("table covers m");
            let q = b * num_rational::BigRational::from_integer((4u32).into())
                / num_rational::BigRational::from_integer(m.into());
            let num = q.numer().magnitude().clone();
            let two = BigUint::from(2u32);
            two.pow(2 * m as u32 - 2) * (two.pow(2 * m as u32 - 1) - BigUint::one()) * num
        })
        .collect())
}

/// Position of a homotopy sphere in `bP_{4m} ≅ Z/|bP_{4m}|`.
///
/// `km_index = (τ/8) mod |bP_{4m}|`; index 0 is the standard sphere (the
/// class often labelled `Σ_{|bP|}`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffeoClass {
    pub dimension: u64,
    #[serde(with = "crate::serde_str")]
    pub bp_order: BigUint,
    #[serde(with = "crate::serde_str")]
    pub km_index: BigUint,
    pub is_standard: bool,
    pub tau: i64,
}

pub fn km_class(a: &ExponentVector) -> Result<DiffeoClass> {
    if !is_homotopy_sphere(a) {
        return Err(Error::Domain(format!(
            "{a} is not a homotopy sphere of dimension >= 5"
        )));
    }
    require_odd_length(a)?;
    let sig = signature_combinatorial(a)?;
    km_class_from_tau(a.dimension() as u64, sig.tau)
}

/// Class of a homotopy `(4m-1)`-sphere with Milnor-fiber signature `tau`.
pub fn km_class_from_tau(dimension: u64, tau: i64) -> Result<DiffeoClass> {
    if dimension < 7 || dimension % 4 != 3 {
        return Err(Error::Domain(format!(
            "dimension {dimension} is not 4m-1 with m >= 2"
        )));
    }
    if tau % 8 != 0 {
        return Err(Error::Internal(format!(
            "signature {tau} of a homotopy sphere is not divisible by 8"
        )));
    }
    let bp = bp_order((dimension + 1) / 4)?;
    let q = num_bigint::BigInt::from(tau / 8);
    let idx = q
        .mod_floor(&num_bigint::BigInt::from(bp.clone()))
        .magnitude()
        .clone();
    Ok(DiffeoClass {
        dimension,
        bp_order: bp,
        is_standard: idx.is_zero(),
        km_index: idx,
        tau,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KervaireType {
    Standard,
    Kervaire,
    NotApplicable,
}

/// Congruence rule for homotopy `(4m+1)`-spheres with exactly one odd exponent:
/// standard if it is `±1 mod 8`, Kervaire if `±3 mod 8`.
///
/// In dimensions 5, 13, 29 and 61 the Kervaire sphere is diffeomorphic to the
/// standard one; the rule still reports the Arf-invariant side.
pub fn kervaire_type(a: &ExponentVector) -> KervaireType {
    let odd: Vec<u64> = a
        .as_slice()
        .iter()
        .copied()
        .filter(|x| x % 2 == 1)
        .collect();
    if a.dimension() % 4 != 1 || odd.len() != 1 || !is_homotopy_sphere(a) {
        return KervaireType::NotApplicable;
    }
    match odd[0] % 8 {
        1 | 7 => KervaireType::Standard,
        3 | 5 => KervaireType::Kervaire,
        _ => unreachable!("odd residue"),
    }
}
