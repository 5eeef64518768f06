use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::rational::{is_integral, vp_i64, Valued};

/// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(cs: Vec<BigInt>) -> Self {
        Self::new(cs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_integral(&self, p: u64) -> bool {
        self.coeffs.iter().all(|c| is_integral(c, p))
    }

    /// Gauss valuation: minimum p-adic valuation of the coefficients.
    pub fn gauss_val(&self, p: u64) -> Valued<i64> {
        super::rational::min_val(self.coeffs.iter().map(|c| vp_i64(c, p)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigRational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        QPoly { coeffs: v }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut r = Self::one();
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        r
    }

    pub fn div_rem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((QPoly::new(q), QPoly::new(r)))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Monic gcd over Q.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn compose(&self, g: &QPoly) -> QPoly {
        self.coeffs.iter().rev().fold(QPoly::zero(), |acc, c| &(&acc * g) + &QPoly::constant(c.clone()))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let coef = if a.is_integer() { a.to_string() } else { format!("({a})") };
            if mono.is_empty() {
                out.push_str(&coef);
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{coef}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::new(v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, o: QPoly) -> QPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Coefficients `a_s` (each of degree `< deg φ`) with `g = Σ a_s φ^s`.
pub fn phi_expansion(g: &QPoly, phi: &QPoly) -> Result<Vec<QPoly>> {
    match phi.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::InvalidChain("expansion along a constant".into())),
        _ => {}
    }
    let mut out = Vec::new();
    let mut g = g.clone();
    while !g.is_zero() {
        let (q, r) = g.div_rem(phi)?;
        out.push(r);
        g = q;
    }
    Ok(out)
}
