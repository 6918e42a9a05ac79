//! Exact integer and rational primitives shared by every other module.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// gcd and lcm of a non-empty list of positive integers.
///
/// The lcm is accumulated in a `BigUint`, so no input list can overflow it.
pub fn gcd_lcm(values: &[u64]) -> Result<(BigUint, BigUint)> {
    if values.is_empty() {
        return Err(Error::Usage("gcd/lcm of an empty list".into()));
    }
    if values.contains(&0) {
        return Err(Error::Usage("gcd/lcm requires positive integers".into()));
    }
    let mut g = BigUint::zero();
    let mut l = BigUint::one();
    for &v in values {
        let v = BigUint::from(v);
        g = g.gcd(&v);
        l = l.lcm(&v);
    }
    Ok((g, l))
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// lcm of a list in `u64`, `None` on overflow.
pub fn lcm_u64(values: &[u64]) -> Option<u64> {
    values.iter().try_fold(1u64, |acc, &v| {
        if v == 0 {
            return None;
        }
        (acc / gcd_u64(acc, v)).checked_mul(v)
    })
}

pub fn big_lcm(values: &[u64]) -> BigUint {
    values
        .iter()
        .fold(BigUint::one(), |acc, &v| acc.lcm(&BigUint::from(v)))
}

/// Prime factorization by trial division.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1, "euler_phi requires m >= 1");
    factorize(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1))
}

/// Möbius function.
pub fn moebius(m: u64) -> i64 {
    let f = factorize(m);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All positive divisors of `m`, ascending.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(m) {
        let len = ds.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin; the base set is exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big_rational(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// Returns the value as an integer when the rational has denominator 1.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

pub fn as_natural(q: &BigRational) -> Option<BigUint> {
    as_integer(q).and_then(|z| (!z.is_negative()).then(|| z.magnitude().clone()))
}

/// Bernoulli numbers in the topologist's indexing, `B_m = |B_{2m}|`, so that
/// `B_1 = 1/6`, `B_2 = 1/30`, `B_3 = 1/42`.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    // entries[m - 1] = B_m
    entries: Vec<BigRational>,
}

impl BernoulliTable {
    /// Builds `B_1 ..= B_max` from the binomial recurrence
    /// `sum_{k=0}^{n} C(n+1, k) b_k = 0` over the modern sequence `b_n`.
    pub fn new(max_m: usize) -> Self {
        let top = 2 * max_m;
        let mut modern: Vec<BigRational> = Vec::with_capacity(top + 1);
        modern.push(BigRational::one());
        // binomial row C(n+1, k), rebuilt each step
        let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
        for n in 1..=top {
            let mut next = vec![BigInt::one(); n + 2];
            for k in 1..=n {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            let mut acc = BigRational::zero();
            for (k, b) in modern.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * BigRational::from_integer(row[k].clone());
                }
            }
            let bn = -acc / BigRational::from_integer(BigInt::from(n as u64 + 1));
            modern.push(bn);
        }
        let entries = (1..=max_m).map(|m| modern[2 * m].abs()).collect();
        BernoulliTable { entries }
    }

    pub fn max_index(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, m: usize) -> Option<&BigRational> {
        m.checked_sub(1).and_then(|i| self.entries.get(i))
    }
}

/// `B_m` in the topologist's indexing.
pub fn bernoulli(m: usize) -> BigRational {
    assert!(m >= 1, "bernoulli index starts at 1");
    BernoulliTable::new(m)
        .get(m)
        .cloned()
        .expect("table covers m")
}
