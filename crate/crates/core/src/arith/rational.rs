use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A value in `T ∪ {∞}`. `Inf` compares above every finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valued<T> {
    Finite(T),
    Inf,
}

/// Exact rational valuation or infinity.
pub type ValOrInf = Valued<BigRational>;

impl<T> Valued<T> {
    pub fn is_inf(&self) -> bool {
        matches!(self, Valued::Inf)
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Valued::Finite(v) => Some(v),
            Valued::Inf => None,
        }
    }

    pub fn as_finite(&self) -> Option<&T> {
        match self {
            Valued::Finite(v) => Some(v),
            Valued::Inf => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Valued<U> {
        match self {
            Valued::Finite(v) => Valued::Finite(f(v)),
            Valued::Inf => Valued::Inf,
        }
    }
}

impl<T: Add<Output = T>> Add for Valued<T> {
    type Output = Valued<T>;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Valued::Finite(a), Valued::Finite(b)) => Valued::Finite(a + b),
            _ => Valued::Inf,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Valued<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valued::Finite(v) => write!(f, "{v}"),
            Valued::Inf => write!(f, "inf"),
        }
    }
}

/// Minimum over an iterator of valuations; `Inf` for an empty iterator.
pub fn min_val<T: Ord>(it: impl IntoIterator<Item = Valued<T>>) -> Valued<T> {
    it.into_iter().fold(Valued::Inf, |acc, v| if v.cmp(&acc) == Ordering::Less { v } else { acc })
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// Products of residues are formed in u128, so any u32-sized prime is safe.
pub fn check_prime(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > u32::MAX as u64 {
        return Err(Error::Unsupported(format!("prime {p} exceeds 32 bits")));
    }
    Ok(p)
}

/// p-adic valuation of a nonzero integer, `Inf` for zero.
pub fn vp_int(n: &BigInt, p: u64) -> Valued<i64> {
    if n.is_zero() {
        return Valued::Inf;
    }
    let pb = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0i64;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return Valued::Finite(k);
        }
        n = q;
        k += 1;
    }
}

pub fn vp_i64(q: &BigRational, p: u64) -> Valued<i64> {
    match vp_int(q.numer(), p) {
        Valued::Inf => Valued::Inf,
        Valued::Finite(a) => Valued::Finite(a - vp_int(q.denom(), p).finite().unwrap_or(0)),
    }
}

/// p-adic valuation of a rational number.
pub fn vp(q: &BigRational, p: u64) -> Result<ValOrInf> {
    check_prime(p)?;
    Ok(vp_i64(q, p).map(|v| BigRational::from_integer(v.into())))
}

pub fn mod_p(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut k: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while k > 0 {
        if k & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        k >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Reduction of a p-integral rational modulo p.
pub fn reduce_mod_p(q: &BigRational, p: u64) -> Result<u64> {
    let d = mod_p(q.denom(), p);
    if d == 0 {
        return Err(Error::NotIntegral(q.to_string()));
    }
    Ok(mul_mod(mod_p(q.numer(), p), inv_mod(d, p), p))
}

/// Symmetric representative of a residue, in `(-p/2, p/2]`.
pub fn balanced(r: u64, p: u64) -> i64 {
    let r = r % p;
    if r > p / 2 {
        r as i64 - p as i64
    } else {
        r as i64
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn pow_p(p: u64, k: i64) -> BigRational {
    let base = BigRational::from_integer(p.into());
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base, (-k) as usize).recip()
    }
}

pub fn is_integral(q: &BigRational, p: u64) -> bool {
    !matches!(vp_i64(q, p), Valued::Finite(v) if v < 0)
}

pub fn floor_i64(q: &BigRational) -> i64 {
    q.floor().to_integer().to_i64().expect("floor fits i64")
}

/// `(g, a, b)` with `a*x + b*y = g = gcd(x, y)`.
pub fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    let e = x.extended_gcd(&y);
    (e.gcd, e.x, e.y)
}

pub fn is_one(q: &BigRational) -> bool {
    q.is_one()
}
