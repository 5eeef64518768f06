use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

use super::rational::{balanced, check_prime, inv_mod, mul_mod};

/// Element of a finite-field tower level `F_j`.
///
/// Level 0 elements are residues `0..p`; a level `j > 0` element is the full
/// (zero padded) coefficient vector over `F_{j-1}` in the basis `1, z, .., z^{d-1}`,
/// `z` the class of `y` modulo the level's defining polynomial. The representation
/// is canonical, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TowerElem {
    Prime(u64),
    Ext(Vec<TowerElem>),
}

impl TowerElem {
    pub fn is_zero(&self) -> bool {
        match self {
            TowerElem::Prime(a) => *a == 0,
            TowerElem::Ext(v) => v.iter().all(TowerElem::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            TowerElem::Prime(a) => *a == 1,
            TowerElem::Ext(v) => v[0].is_one() && v[1..].iter().all(TowerElem::is_zero),
        }
    }

    /// Coefficient vector over the level below; empty for prime-field elements.
    pub fn components(&self) -> &[TowerElem] {
        match self {
            TowerElem::Prime(_) => &[],
            TowerElem::Ext(v) => v,
        }
    }

    /// Whether the element lies in the prime field; returns its residue.
    pub fn as_prime(&self) -> Option<u64> {
        match self {
            TowerElem::Prime(a) => Some(*a),
            TowerElem::Ext(v) if v[1..].iter().all(TowerElem::is_zero) => v[0].as_prime(),
            TowerElem::Ext(_) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            TowerElem::Prime(a) => serde_json::Value::from(*a),
            TowerElem::Ext(v) => serde_json::Value::Array(v.iter().map(TowerElem::to_json).collect()),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TowerElem> {
        match v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(TowerElem::Prime)
                .ok_or_else(|| Error::InvalidElement(format!("{n} is not a residue"))),
            serde_json::Value::Array(a) => Ok(TowerElem::Ext(a.iter().map(TowerElem::from_json).collect::<Result<_>>()?)),
            other => Err(Error::InvalidElement(other.to_string())),
        }
    }
}

impl Serialize for TowerElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Polynomial in `y` with coefficients in some tower level, lowest degree first,
/// no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqPoly {
    coeffs: Vec<TowerElem>,
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<TowerElem>) -> Self {
        while coeffs.last().is_some_and(TowerElem::is_zero) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn zero() -> Self {
        FqPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[TowerElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&TowerElem> {
        self.coeffs.get(i)
    }

    pub fn leading(&self) -> Option<&TowerElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(TowerElem::is_one)
    }

    /// Multiplicity of `y` as a factor.
    pub fn ord_y(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn div_y_pow(&self, k: usize) -> FqPoly {
        FqPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn into_coeffs(self) -> Vec<TowerElem> {
        self.coeffs
    }

    /// Key used for canonical ordering: degree first, then coefficients from the constant term up.
    pub fn sort_key(&self) -> (usize, &[TowerElem]) {
        (self.coeffs.len(), &self.coeffs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(TowerElem::to_json).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FqPoly> {
        match v {
            serde_json::Value::Array(a) => Ok(FqPoly::new(a.iter().map(TowerElem::from_json).collect::<Result<_>>()?)),
            other => Err(Error::InvalidElement(format!("expected coefficient array, got {other}"))),
        }
    }
}

impl Serialize for FqPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// A tower `F_p = F_0 ⊂ F_1 ⊂ … ⊂ F_h` with `F_{j+1} = F_j[y]/(ψ_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerField {
    p: u64,
    moduli: Arc<Vec<FqPoly>>,
}

/// Handle on one level of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    tower: TowerField,
    level: usize,
}

const ENUM_LIMIT: u64 = 1 << 16;

impl TowerField {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(TowerField { p, moduli: Arc::new(Vec::new()) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Index of the top level.
    pub fn height(&self) -> usize {
        self.moduli.len()
    }

    /// Defining polynomial `ψ_j` of `F_{j+1}` over `F_j`.
    pub fn modulus(&self, j: usize) -> &FqPoly {
        &self.moduli[j]
    }

    pub fn moduli(&self) -> &[FqPoly] {
        &self.moduli
    }

    pub fn field(&self, level: usize) -> Fq {
        assert!(level <= self.height(), "level {level} above tower height {}", self.height());
        Fq { tower: self.clone(), level }
    }

    pub fn top(&self) -> Fq {
        self.field(self.height())
    }

    /// `[F_level : F_p]`.
    pub fn degree(&self, level: usize) -> u64 {
        self.moduli[..level].iter().map(|m| m.deg() as u64).product()
    }

    /// Adjoin a root of `psi`, a monic irreducible polynomial over the top level.
    pub fn extend(&self, psi: FqPoly) -> Result<TowerField> {
        let top = self.top();
        for c in psi.coeffs() {
            top.validate(c)?;
        }
        if psi.degree().unwrap_or(0) == 0 {
            return Err(Error::Reducible("constant modulus".into()));
        }
        if !psi.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.height() >= 1 && psi.deg() == 1 && psi.coeffs()[0].is_zero() {
            return Err(Error::ModulusIsY);
        }
        let fac = super::factor::fq_factor(&top, &psi)?;
        if fac.len() != 1 || fac[0].1 != 1 {
            let shown: Vec<String> = fac
                .iter()
                .map(|(g, a)| if *a == 1 { format!("({})", top.fmt_poly(g, "y")) } else { format!("({})^{a}", top.fmt_poly(g, "y")) })
                .collect();
            return Err(Error::Reducible(shown.join(" * ")));
        }
        let mut m = (*self.moduli).clone();
        m.push(psi);
        Ok(TowerField { p: self.p, moduli: Arc::new(m) })
    }

    /// Tower of the first `height` extensions.
    pub fn truncate(&self, height: usize) -> TowerField {
        TowerField { p: self.p, moduli: Arc::new(self.moduli[..height].to_vec()) }
    }

    /// Drop the degree-one level `F_j`, identifying it with `F_{j-1}`.
    pub fn remove_linear_level(&self, j: usize) -> Result<TowerField> {
        if j == 0 || j > self.height() || self.moduli[j - 1].deg() != 1 {
            return Err(Error::LevelOutOfRange(j));
        }
        let mut m: Vec<FqPoly> = self.moduli[..j - 1].to_vec();
        for k in j..self.height() {
            m.push(self.unwrap_poly(k, j, &self.moduli[k]));
        }
        Ok(TowerField { p: self.p, moduli: Arc::new(m) })
    }

    /// Image of a level-`level` element after removing the linear level `j`.
    pub fn unwrap_elem(&self, level: usize, j: usize, x: &TowerElem) -> TowerElem {
        if level < j {
            return x.clone();
        }
        match x {
            TowerElem::Ext(v) if level == j => v[0].clone(),
            TowerElem::Ext(v) => TowerElem::Ext(v.iter().map(|c| self.unwrap_elem(level - 1, j, c)).collect()),
            TowerElem::Prime(_) => unreachable!("prime element above level 0"),
        }
    }

    pub fn unwrap_poly(&self, level: usize, j: usize, g: &FqPoly) -> FqPoly {
        FqPoly::new(g.coeffs().iter().map(|c| self.unwrap_elem(level, j, c)).collect())
    }

    // ---- level-indexed element arithmetic ----

    fn ext_deg(&self, level: usize) -> usize {
        self.moduli[level - 1].deg()
    }

    pub(crate) fn e_zero(&self, level: usize) -> TowerElem {
        if level == 0 {
            TowerElem::Prime(0)
        } else {
            TowerElem::Ext(vec![self.e_zero(level - 1); self.ext_deg(level)])
        }
    }

    pub(crate) fn e_embed(&self, level: usize, x: TowerElem) -> TowerElem {
        let mut v = vec![x];
        v.resize(self.ext_deg(level), self.e_zero(level - 1));
        TowerElem::Ext(v)
    }

    pub(crate) fn e_from_u64(&self, level: usize, n: u64) -> TowerElem {
        if level == 0 {
            TowerElem::Prime(n % self.p)
        } else {
            self.e_embed(level, self.e_from_u64(level - 1, n))
        }
    }

    /// Embed a level-`from` element into level `to >= from`.
    pub(crate) fn e_lift(&self, from: usize, to: usize, x: TowerElem) -> TowerElem {
        (from + 1..=to).fold(x, |acc, l| self.e_embed(l, acc))
    }

    pub(crate) fn e_add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        match (a, b) {
            (TowerElem::Prime(x), TowerElem::Prime(y)) => TowerElem::Prime((x + y) % self.p),
            (TowerElem::Ext(u), TowerElem::Ext(v)) => TowerElem::Ext(u.iter().zip(v).map(|(x, y)| self.e_add(x, y)).collect()),
            _ => panic!("mismatched tower levels"),
        }
    }

    pub(crate) fn e_neg(&self, a: &TowerElem) -> TowerElem {
        match a {
            TowerElem::Prime(x) => TowerElem::Prime((self.p - x) % self.p),
            TowerElem::Ext(u) => TowerElem::Ext(u.iter().map(|x| self.e_neg(x)).collect()),
        }
    }

    pub(crate) fn e_sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.e_add(a, &self.e_neg(b))
    }

    pub(crate) fn e_mul(&self, level: usize, a: &TowerElem, b: &TowerElem) -> TowerElem {
        match (a, b) {
            (TowerElem::Prime(x), TowerElem::Prime(y)) => TowerElem::Prime(mul_mod(*x, *y, self.p)),
            (TowerElem::Ext(u), TowerElem::Ext(v)) => {
                if a.is_zero() || b.is_zero() {
                    return self.e_zero(level);
                }
                let prod = self.p_mul(level - 1, &FqPoly::new(u.clone()), &FqPoly::new(v.clone()));
                self.e_from_base_poly(level, &prod)
            }
            _ => panic!("mismatched tower levels"),
        }
    }

    pub(crate) fn e_from_base_poly(&self, level: usize, g: &FqPoly) -> TowerElem {
        let r = self.p_rem(level - 1, g, &self.moduli[level - 1]);
        let mut v = r.into_coeffs();
        v.resize(self.ext_deg(level), self.e_zero(level - 1));
        TowerElem::Ext(v)
    }

    pub(crate) fn e_inv(&self, level: usize, a: &TowerElem) -> Result<TowerElem> {
        if a.is_zero() {
            return Err(Error::InvalidElement("inverse of zero".into()));
        }
        match a {
            TowerElem::Prime(x) => Ok(TowerElem::Prime(inv_mod(*x, self.p))),
            TowerElem::Ext(u) => {
                let (g, s, _) = self.p_xgcd(level - 1, &FqPoly::new(u.clone()), &self.moduli[level - 1]);
                debug_assert_eq!(g.deg(), 0);
                let ginv = self.e_inv(level - 1, &g.coeffs()[0])?;
                Ok(self.e_from_base_poly(level, &self.p_scale(level - 1, &s, &ginv)))
            }
        }
    }

    pub(crate) fn e_pow(&self, level: usize, a: &TowerElem, e: &BigUint) -> TowerElem {
        let mut r = self.e_from_u64(level, 1);
        for i in (0..e.bits()).rev() {
            r = self.e_mul(level, &r, &r);
            if e.bit(i) {
                r = self.e_mul(level, &r, a);
            }
        }
        r
    }

    pub(crate) fn order(&self, level: usize) -> BigUint {
        num_traits::pow(BigUint::from(self.p), self.degree(level) as usize)
    }

    // ---- level-indexed polynomial arithmetic (coefficients in F_level) ----

    pub(crate) fn p_add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
        let mut v = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            v[i] = self.e_add(&v[i], c);
        }
        FqPoly::new(v)
    }

    pub(crate) fn p_neg(&self, a: &FqPoly) -> FqPoly {
        FqPoly::new(a.coeffs.iter().map(|c| self.e_neg(c)).collect())
    }

    pub(crate) fn p_sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.p_add(a, &self.p_neg(b))
    }

    pub(crate) fn p_scale(&self, level: usize, a: &FqPoly, c: &TowerElem) -> FqPoly {
        FqPoly::new(a.coeffs.iter().map(|x| self.e_mul(level, x, c)).collect())
    }

    pub(crate) fn p_mul(&self, level: usize, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly::zero();
        }
        let mut v = vec![self.e_zero(level); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] = self.e_add(&v[i + j], &self.e_mul(level, x, y));
                }
            }
        }
        FqPoly::new(v)
    }

    pub(crate) fn p_divrem(&self, level: usize, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
        let db = b.degree().expect("division by zero polynomial");
        if a.coeffs.len() <= db {
            return (FqPoly::zero(), a.clone());
        }
        let lc = &b.coeffs[db];
        let lc_inv = if lc.is_one() { None } else { Some(self.e_inv(level, lc).expect("nonzero leading coefficient")) };
        let mut r = a.coeffs.clone();
        let mut q = vec![self.e_zero(level); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = match &lc_inv {
                None => r[k + db].clone(),
                Some(li) => self.e_mul(level, &r[k + db], li),
            };
            if !c.is_zero() {
                for (j, bc) in b.coeffs.iter().enumerate() {
                    r[k + j] = self.e_sub(&r[k + j], &self.e_mul(level, &c, bc));
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (FqPoly::new(q), FqPoly::new(r))
    }

    pub(crate) fn p_rem(&self, level: usize, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.p_divrem(level, a, b).1
    }

    pub(crate) fn p_monic(&self, level: usize, a: &FqPoly) -> FqPoly {
        match a.leading() {
            None => a.clone(),
            Some(l) if l.is_one() => a.clone(),
            Some(l) => self.p_scale(level, a, &self.e_inv(level, l).expect("nonzero")),
        }
    }

    pub(crate) fn p_gcd(&self, level: usize, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.p_rem(level, &a, &b);
            a = b;
            b = r;
        }
        self.p_monic(level, &a)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` a (not necessarily monic) gcd.
    pub(crate) fn p_xgcd(&self, level: usize, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly, FqPoly) {
        let one = FqPoly::new(vec![self.e_from_u64(level, 1)]);
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), FqPoly::zero());
        let (mut t0, mut t1) = (FqPoly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = self.p_divrem(level, &r0, &r1);
            let s2 = self.p_sub(&s0, &self.p_mul(level, &q, &s1));
            let t2 = self.p_sub(&t0, &self.p_mul(level, &q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }

    pub(crate) fn p_powmod(&self, level: usize, a: &FqPoly, e: &BigUint, m: &FqPoly) -> FqPoly {
        let mut r = self.p_rem(level, &FqPoly::new(vec![self.e_from_u64(level, 1)]), m);
        let a = self.p_rem(level, a, m);
        for i in (0..e.bits()).rev() {
            r = self.p_rem(level, &self.p_mul(level, &r, &r), m);
            if e.bit(i) {
                r = self.p_rem(level, &self.p_mul(level, &r, &a), m);
            }
        }
        r
    }

    pub(crate) fn p_derivative(&self, level: usize, a: &FqPoly) -> FqPoly {
        FqPoly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.e_mul(level, c, &self.e_from_u64(level, i as u64)))
                .collect(),
        )
    }

    pub(crate) fn p_eval(&self, level: usize, a: &FqPoly, x: &TowerElem) -> TowerElem {
        a.coeffs
            .iter()
            .rev()
            .fold(self.e_zero(level), |acc, c| self.e_add(&self.e_mul(level, &acc, x), c))
    }

    /// `a(y + c)`.
    pub(crate) fn p_shift(&self, level: usize, a: &FqPoly, c: &TowerElem) -> FqPoly {
        let lin = FqPoly::new(vec![c.clone(), self.e_from_u64(level, 1)]);
        a.coeffs.iter().rev().fold(FqPoly::zero(), |acc, k| {
            self.p_add(&self.p_mul(level, &acc, &lin), &FqPoly::new(vec![k.clone()]))
        })
    }

    pub(crate) fn validate(&self, level: usize, x: &TowerElem) -> Result<()> {
        match (level, x) {
            (0, TowerElem::Prime(a)) if *a < self.p => Ok(()),
            (l, TowerElem::Ext(v)) if l > 0 && v.len() == self.ext_deg(l) => {
                v.iter().try_for_each(|c| self.validate(l - 1, c))
            }
            _ => Err(Error::InvalidElement(format!("{} is not an element of level {level}", x.to_json()))),
        }
    }

    pub(crate) fn fmt_elem(&self, level: usize, x: &TowerElem) -> String {
        match x {
            TowerElem::Prime(a) => balanced(*a, self.p).to_string(),
            TowerElem::Ext(v) => {
                if v[1..].iter().all(TowerElem::is_zero) {
                    return self.fmt_elem(level - 1, &v[0]);
                }
                let z = format!("z{}", level - 1);
                let poly = FqPoly::new(v.clone());
                format!("({})", self.fmt_poly(level - 1, &poly, &z))
            }
        }
    }

    pub(crate) fn fmt_poly(&self, level: usize, g: &FqPoly, var: &str) -> String {
        if g.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in g.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = self.fmt_elem(level, c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) if !m.contains(' ') => (true, m.to_string()),
                _ => (false, s),
            };
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
            if mono.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl Fq {
    pub fn prime(p: u64) -> Result<Fq> {
        Ok(TowerField::new(p)?.field(0))
    }

    pub fn tower(&self) -> &TowerField {
        &self.tower
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn p(&self) -> u64 {
        self.tower.p
    }

    pub fn base(&self) -> Fq {
        self.tower.field(self.level - 1)
    }

    pub fn degree(&self) -> u64 {
        self.tower.degree(self.level)
    }

    pub fn order(&self) -> BigUint {
        self.tower.order(self.level)
    }

    pub fn zero(&self) -> TowerElem {
        self.tower.e_zero(self.level)
    }

    pub fn one(&self) -> TowerElem {
        self.tower.e_from_u64(self.level, 1)
    }

    pub fn from_i64(&self, n: i64) -> TowerElem {
        let p = self.p() as i64;
        self.tower.e_from_u64(self.level, n.rem_euclid(p) as u64)
    }

    /// Image of an element of a lower level.
    pub fn lift_from(&self, from: usize, x: TowerElem) -> TowerElem {
        self.tower.e_lift(from, self.level, x)
    }

    /// Class of `y` in `F_j = F_{j-1}[y]/(ψ_{j-1})`.
    pub fn generator(&self) -> TowerElem {
        assert!(self.level > 0, "prime field has no generator");
        let y = FqPoly::new(vec![self.tower.e_zero(self.level - 1), self.tower.e_from_u64(self.level - 1, 1)]);
        self.tower.e_from_base_poly(self.level, &y)
    }

    /// Class of a polynomial over the level below.
    pub fn from_base_poly(&self, g: &FqPoly) -> TowerElem {
        self.tower.e_from_base_poly(self.level, g)
    }

    /// Coordinates over the level below as a polynomial in the generator.
    pub fn to_base_poly(&self, x: &TowerElem) -> FqPoly {
        FqPoly::new(x.components().to_vec())
    }

    pub fn validate(&self, x: &TowerElem) -> Result<()> {
        self.tower.validate(self.level, x)
    }

    pub fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.tower.e_add(a, b)
    }

    pub fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.tower.e_sub(a, b)
    }

    pub fn neg(&self, a: &TowerElem) -> TowerElem {
        self.tower.e_neg(a)
    }

    pub fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.tower.e_mul(self.level, a, b)
    }

    pub fn inv(&self, a: &TowerElem) -> Result<TowerElem> {
        self.tower.e_inv(self.level, a)
    }

    pub fn pow(&self, a: &TowerElem, e: &BigUint) -> TowerElem {
        self.tower.e_pow(self.level, a, e)
    }

    /// Integer power; negative exponents invert (`a` must be nonzero then).
    pub fn pow_i(&self, a: &TowerElem, e: i64) -> Result<TowerElem> {
        let r = self.pow(a, &BigUint::from(e.unsigned_abs()));
        if e < 0 {
            self.inv(&r)
        } else {
            Ok(r)
        }
    }

    /// `a^(1/p)`, i.e. `a^(q/p)`.
    pub fn pth_root(&self, a: &TowerElem) -> TowerElem {
        self.pow(a, &(self.order() / BigUint::from(self.p())))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> TowerElem {
        fn go<R: Rng + ?Sized>(t: &TowerField, level: usize, rng: &mut R) -> TowerElem {
            if level == 0 {
                TowerElem::Prime(rng.gen_range(0..t.p))
            } else {
                TowerElem::Ext((0..t.ext_deg(level)).map(|_| go(t, level - 1, rng)).collect())
            }
        }
        go(&self.tower, self.level, rng)
    }

    /// All elements; only for small fields.
    pub fn elements(&self) -> Result<Vec<TowerElem>> {
        let q = self.order();
        if q > BigUint::from(ENUM_LIMIT) {
            return Err(Error::Unsupported(format!("enumerating a field of order {q}")));
        }
        fn go(t: &TowerField, level: usize) -> Vec<TowerElem> {
            if level == 0 {
                return (0..t.p).map(TowerElem::Prime).collect();
            }
            let sub = go(t, level - 1);
            let mut out = vec![vec![]];
            for _ in 0..t.ext_deg(level) {
                out = out
                    .into_iter()
                    .flat_map(|v: Vec<TowerElem>| {
                        sub.iter().map(move |c| {
                            let mut w = v.clone();
                            w.push(c.clone());
                            w
                        })
                    })
                    .collect();
            }
            out.into_iter().map(TowerElem::Ext).collect()
        }
        Ok(go(&self.tower, self.level))
    }

    pub fn poly_const(&self, c: TowerElem) -> FqPoly {
        FqPoly::new(vec![c])
    }

    pub fn poly_one(&self) -> FqPoly {
        self.poly_const(self.one())
    }

    pub fn poly_y(&self) -> FqPoly {
        FqPoly::new(vec![self.zero(), self.one()])
    }

    /// `y + c`.
    pub fn poly_linear(&self, c: TowerElem) -> FqPoly {
        FqPoly::new(vec![c, self.one()])
    }

    pub fn poly_from_i64(&self, cs: &[i64]) -> FqPoly {
        FqPoly::new(cs.iter().map(|&c| self.from_i64(c)).collect())
    }

    pub fn poly_add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.tower.p_add(a, b)
    }

    pub fn poly_sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.tower.p_sub(a, b)
    }

    pub fn poly_scale(&self, a: &FqPoly, c: &TowerElem) -> FqPoly {
        self.tower.p_scale(self.level, a, c)
    }

    pub fn poly_mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.tower.p_mul(self.level, a, b)
    }

    pub fn poly_pow(&self, a: &FqPoly, k: usize) -> FqPoly {
        (0..k).fold(self.poly_one(), |acc, _| self.poly_mul(&acc, a))
    }

    pub fn poly_divrem(&self, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
        self.tower.p_divrem(self.level, a, b)
    }

    pub fn poly_rem(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.tower.p_rem(self.level, a, b)
    }

    pub fn poly_monic(&self, a: &FqPoly) -> FqPoly {
        self.tower.p_monic(self.level, a)
    }

    pub fn poly_gcd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.tower.p_gcd(self.level, a, b)
    }

    pub fn poly_powmod(&self, a: &FqPoly, e: &BigUint, m: &FqPoly) -> FqPoly {
        self.tower.p_powmod(self.level, a, e, m)
    }

    pub fn poly_derivative(&self, a: &FqPoly) -> FqPoly {
        self.tower.p_derivative(self.level, a)
    }

    pub fn poly_eval(&self, a: &FqPoly, x: &TowerElem) -> TowerElem {
        self.tower.p_eval(self.level, a, x)
    }

    /// `a(y + c)`.
    pub fn poly_shift(&self, a: &FqPoly, c: &TowerElem) -> FqPoly {
        self.tower.p_shift(self.level, a, c)
    }

    /// Multiplicity of the monic irreducible `q` in `a` (`a` nonzero).
    pub fn poly_ord(&self, a: &FqPoly, q: &FqPoly) -> usize {
        let mut a = a.clone();
        let mut k = 0;
        while !a.is_zero() && q.deg() > 0 {
            let (quo, r) = self.poly_divrem(&a, q);
            if !r.is_zero() {
                break;
            }
            a = quo;
            k += 1;
        }
        k
    }

    pub fn fmt_elem(&self, x: &TowerElem) -> String {
        self.tower.fmt_elem(self.level, x)
    }

    pub fn fmt_poly(&self, g: &FqPoly, var: &str) -> String {
        self.tower.fmt_poly(self.level, g, var)
    }

    /// `(g1)^a1 (g2)^a2 ...` rendering of a factorization.
    pub fn fmt_factored(&self, factors: &[(FqPoly, usize)]) -> String {
        if factors.is_empty() {
            return "1".into();
        }
        factors
            .iter()
            .map(|(g, a)| {
                let s = self.fmt_poly(g, "y");
                let s = if g.deg() == 1 && g.coeffs()[0].is_zero() { s } else { format!("({s})") };
                if *a == 1 {
                    s
                } else {
                    format!("{s}^{a}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for TowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)?;
        for (j, m) in self.moduli.iter().enumerate() {
            write!(f, " [z{} : {}]", j, self.fmt_poly(j, m, "y"))?;
        }
        Ok(())
    }
}
