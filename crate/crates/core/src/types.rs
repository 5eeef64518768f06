//! Types: MacLane chains closed by a monic irreducible residual polynomial,
//! their representatives, optimization and equivalence.

use std::fmt;

use num_rational::BigRational;

use crate::arith::qpoly::QPoly;
use crate::arith::rational::{balanced, Valued};
use crate::arith::tower::{Fq, FqPoly, TowerElem, TowerField};
use crate::arith::is_irreducible;
use crate::error::{Error, Result};
use crate::residual::{lift_residue, ri, ResidualResult};
use crate::valuation::{build_chain, MacLaneChain};

/// `(ψ_0; (φ_1, ν_1, ψ_1); …; (φ_r, ν_r, ψ_r))`, stored as the chain and `ψ_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type {
    chain: MacLaneChain,
    psi: FqPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Levels `1 <= i <= r` with `e_i = f_i = 1`.
    pub stationary: Vec<usize>,
    pub optimal: bool,
    pub strongly_optimal: bool,
}

impl Type {
    pub fn new(chain: MacLaneChain, psi: FqPoly) -> Result<Type> {
        let field = chain.tower().top();
        for c in psi.coeffs() {
            field.validate(c)?;
        }
        if !psi.is_monic() {
            return Err(Error::InvalidType("ψ_r is not monic".into()));
        }
        if !chain.is_empty() && psi.ord_y() > 0 {
            return Err(Error::InvalidType("ψ_r must not be y".into()));
        }
        if !is_irreducible(&field, &psi) {
            return Err(Error::InvalidType(format!("ψ_r = {} is not irreducible", field.fmt_poly(&psi, "y"))));
        }
        Ok(Type { chain, psi })
    }

    pub fn order_zero(p: u64, psi: FqPoly) -> Result<Type> {
        Type::new(MacLaneChain::gauss(p)?, psi)
    }

    pub fn from_steps(p: u64, steps: &[(QPoly, BigRational)], psi: FqPoly) -> Result<Type> {
        Type::new(build_chain(p, steps)?, psi)
    }

    pub fn chain(&self) -> &MacLaneChain {
        &self.chain
    }

    pub fn psi(&self) -> &FqPoly {
        &self.psi
    }

    pub fn p(&self) -> u64 {
        self.chain.p()
    }

    pub fn order(&self) -> usize {
        self.chain.len()
    }

    pub fn tower(&self) -> &TowerField {
        self.chain.tower()
    }

    /// `F_r`, where `ψ_r` lives.
    pub fn field(&self) -> Fq {
        self.chain.tower().top()
    }

    /// `ψ_i` over `F_i` for `0 <= i <= r`.
    pub fn psi_at(&self, i: usize) -> &FqPoly {
        if i == self.order() {
            &self.psi
        } else {
            &self.chain.level(i + 1).psi_prev
        }
    }

    /// `f_i = deg ψ_i`.
    pub fn f_at(&self, i: usize) -> i64 {
        self.psi_at(i).deg() as i64
    }

    /// `e(µ_r)`.
    pub fn ramification(&self) -> i64 {
        self.chain.e_mu(self.order())
    }

    /// `f_0 f_1 ⋯ f_r`.
    pub fn residual_degree(&self) -> i64 {
        (0..=self.order()).map(|i| self.f_at(i)).product()
    }

    /// Degree of every representative: `e_r f_r m_r`.
    pub fn rep_degree(&self) -> usize {
        let n = self.chain.nums(self.order());
        (n.e * n.m * self.psi.deg() as i64) as usize
    }

    pub fn residual(&self, g: &QPoly) -> Result<ResidualResult> {
        ri(&self.chain, self.order(), g)
    }

    /// `ord_t(g)`: multiplicity of `ψ_r` in `R_r(g)`.
    pub fn ord(&self, g: &QPoly) -> Result<usize> {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let r = self.residual(g)?;
        Ok(self.field().poly_ord(&r.poly, &self.psi))
    }

    /// Monic `φ` with `deg φ = e_r f_r m_r` and `ord_t(φ) = 1`.
    pub fn is_representative(&self, phi: &QPoly) -> bool {
        phi.is_monic() && phi.is_integral(self.p()) && phi.deg() == self.rep_degree() && self.ord(phi).ok() == Some(1)
    }

    /// A canonical representative, built from symmetric residue lifts.
    pub fn representative(&self) -> Result<QPoly> {
        let p = self.p();
        let r = self.order();
        let out = if r == 0 {
            QPoly::from_bigints(
                self.psi.coeffs().iter().map(|c| balanced(c.as_prime().expect("prime field"), p).into()).collect(),
            )
        } else {
            let n = self.chain.nums(r);
            let f = self.psi.deg() as i64;
            let phi = &self.chain.level(r).phi;
            let mut out = phi.pow((n.e * f) as usize);
            for (j, zeta) in self.psi.coeffs().iter().enumerate().take(f as usize) {
                if zeta.is_zero() {
                    continue;
                }
                let target = (f - j as i64) * (n.e * n.big_v + n.h);
                let a = lift_residue(&self.chain, r - 1, target, zeta)?;
                out = &out + &(&a * &phi.pow(j * n.e as usize));
            }
            out
        };
        if !out.is_integral(p) {
            return Err(Error::NonIntegralRepresentative(r));
        }
        Ok(out)
    }

    /// `(t; (φ, ν, ψ))`; `φ` must be a representative of `t`.
    pub fn extend(&self, phi: &QPoly, nu: &BigRational, psi: FqPoly) -> Result<Type> {
        if !self.is_representative(phi) {
            return Err(Error::InvalidType("key polynomial is not a representative of the type".into()));
        }
        let chain = self.chain.augment(phi, nu)?;
        if chain.level(self.order() + 1).psi_prev != self.psi {
            return Err(Error::InvalidType("R_r(φ) differs from ψ_r".into()));
        }
        Type::new(chain, psi)
    }

    /// The order-`k` truncation `(ψ_0; …; (φ_k, ν_k, ψ_k))`.
    pub fn truncate(&self, k: usize) -> Type {
        Type { chain: self.chain.truncate(k), psi: self.psi_at(k).clone() }
    }

    pub fn classify(&self) -> Classification {
        let r = self.order();
        let stationary: Vec<usize> =
            (1..=r).filter(|&i| self.chain.level(i).e == 1 && self.f_at(i) == 1).collect();
        Classification {
            optimal: stationary.iter().all(|&i| i == r),
            strongly_optimal: stationary.is_empty(),
            stationary,
        }
    }

    /// Collapse the highest stationary level below `r`.
    pub fn optimize_step(&self) -> Result<Type> {
        let r = self.order();
        let i = (1..r)
            .rev()
            .find(|&i| self.chain.is_stationary(i))
            .ok_or_else(|| Error::InvalidType("type is already optimal".into()))?;
        let chain = self.chain.collapse_step(i)?;
        let psi = self.tower().unwrap_poly(r, i + 1, &self.psi);
        Type::new(chain, psi)
    }

    pub fn optimize(&self) -> Result<Type> {
        let mut t = self.clone();
        while !t.classify().optimal {
            t = t.optimize_step()?;
        }
        Ok(t)
    }

    /// Okutsu depth and frame of the type's valuation.
    pub fn okutsu_data(&self) -> Result<(usize, Vec<QPoly>)> {
        let t = self.optimize()?;
        let r = t.order();
        let depth = if r > 0 && !t.classify().strongly_optimal { r - 1 } else { r };
        Ok((depth, (1..=depth).map(|i| t.chain.level(i).phi.clone()).collect()))
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tower = self.tower();
        write!(f, "({}", tower.field(0).fmt_poly(self.psi_at(0), "y"))?;
        for i in 1..=self.order() {
            let lv = self.chain.level(i);
            write!(f, "; ({}, {}, {})", lv.phi, lv.nu, tower.field(i).fmt_poly(self.psi_at(i), "y"))?;
        }
        write!(f, ")")
    }
}

pub fn representative(t: &Type) -> Result<QPoly> {
    t.representative()
}

pub fn ord_type(t: &Type, g: &QPoly) -> Result<usize> {
    t.ord(g)
}

/// The first condition on which two types disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivFailure {
    Prime,
    Order { left: usize, right: usize },
    Slope { level: usize },
    KeyPolynomial { level: usize },
    Psi { level: usize },
    /// Transporting `ψ_level` produced `y`.
    Degenerate { level: usize },
}

impl fmt::Display for EquivFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivFailure::Prime => write!(f, "different primes"),
            EquivFailure::Order { left, right } => write!(f, "optimized orders differ ({left} vs {right})"),
            EquivFailure::Slope { level } => write!(f, "slopes differ at level {level}"),
            EquivFailure::KeyPolynomial { level } => write!(f, "key polynomials are not close enough at level {level}"),
            EquivFailure::Psi { level } => write!(f, "residual polynomials psi_{level} do not correspond"),
            EquivFailure::Degenerate { level } => write!(f, "psi_{level} transports to y"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivWitness {
    /// `η_i ∈ F_i` for the levels compared so far, `η_0 = 0`.
    pub etas: Vec<TowerElem>,
    pub verdict: std::result::Result<(), EquivFailure>,
}

impl EquivWitness {
    pub fn is_equivalent(&self) -> bool {
        self.verdict.is_ok()
    }
}

/// Isomorphism between the residue towers of two types, built level by level.
struct TowerIso<'a> {
    dst: &'a TowerField,
    /// `ι(z_k) ∈ F*_{k+1}`.
    images: Vec<TowerElem>,
}

impl TowerIso<'_> {
    fn map(&self, level: usize, x: &TowerElem) -> TowerElem {
        if level == 0 {
            return x.clone();
        }
        let up = self.dst.field(level);
        let w = &self.images[level - 1];
        x.components().iter().rev().fold(up.zero(), |acc, c| {
            let c = up.lift_from(level - 1, self.map(level - 1, c));
            up.add(&up.mul(&acc, w), &c)
        })
    }

    fn map_poly(&self, level: usize, g: &FqPoly) -> FqPoly {
        FqPoly::new(g.coeffs().iter().map(|c| self.map(level, c)).collect())
    }
}

/// Decide whether two types have the same valuation and key-polynomial class.
pub fn equivalent(a: &Type, b: &Type) -> Result<EquivWitness> {
    let mut etas = vec![TowerElem::Prime(0)];
    if a.p() != b.p() {
        return Ok(EquivWitness { etas, verdict: Err(EquivFailure::Prime) });
    }
    let (ta, tb) = (a.optimize()?, b.optimize()?);
    let r = ta.order();
    let fail = |etas, e| Ok(EquivWitness { etas, verdict: Err(e) });
    if tb.order() != r {
        return fail(etas, EquivFailure::Order { left: r, right: tb.order() });
    }
    let mut iso = TowerIso { dst: tb.tower(), images: Vec::new() };
    for i in 0..=r {
        let dst = tb.tower().field(i);
        let eta = iso.map(i, &etas[i]);
        let moved = dst.poly_shift(&iso.map_poly(i, ta.psi_at(i)), &dst.neg(&eta));
        if i >= 1 && moved.deg() == 1 && moved.ord_y() == 1 {
            return fail(etas, EquivFailure::Degenerate { level: i });
        }
        if &moved != tb.psi_at(i) {
            return fail(etas, EquivFailure::Psi { level: i });
        }
        if i == r {
            break;
        }
        let up = tb.tower().field(i + 1);
        iso.images.push(up.sub(&up.generator(), &up.lift_from(i, eta)));

        let k = i + 1;
        let (la, lb) = (ta.chain.level(k), tb.chain.level(k));
        if la.nu != lb.nu {
            return fail(etas, EquivFailure::Slope { level: k });
        }
        if la.m != lb.m {
            return fail(etas, EquivFailure::KeyPolynomial { level: k });
        }
        let diff = &lb.phi - &la.phi;
        let field = ta.tower().field(k);
        let eta_k = match ta.chain.v_norm(k, &diff)? {
            Valued::Inf => field.zero(),
            Valued::Finite(v) => {
                let vphi = la.e * la.big_v + la.h;
                if v < vphi {
                    return fail(etas, EquivFailure::KeyPolynomial { level: k });
                }
                if v > vphi || la.e > 1 {
                    field.zero()
                } else {
                    let res = ri(&ta.chain, k, &diff)?;
                    res.poly.coeffs()[0].clone()
                }
            }
        };
        etas.push(eta_k);
    }
    Ok(EquivWitness { etas, verdict: Ok(()) })
}

/// Residual polynomial of `g` with respect to `φ*_i = φ_i + a` (with `R_i(a) = η`)
/// from the data `(s, R)` of `g` with respect to `φ_i`, when `e_i = 1`:
/// returns `(s*, R*)` with `s* = ord_{y+η} R` and `R* = (y-η)^s P(y-η)`, `R = (y+η)^{s*} P`.
pub fn transport_residual(field: &Fq, r: &FqPoly, s: usize, eta: &TowerElem) -> Result<(usize, FqPoly)> {
    if r.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lin = field.poly_linear(eta.clone());
    let s_star = field.poly_ord(r, &lin);
    let pp = field.poly_divrem(r, &field.poly_pow(&lin, s_star)).0;
    let neg = field.neg(eta);
    let moved = field.poly_mul(&field.poly_pow(&field.poly_linear(neg.clone()), s), &field.poly_shift(&pp, &neg));
    Ok((s_star, moved))
}
