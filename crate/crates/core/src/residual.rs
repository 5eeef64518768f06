//! Residual polynomials `R_i(g)`, computed by mapping the leading forms of the
//! φ_i-expansion coefficients into `Gr(µ_i)` and normalizing.
//!
//! A level-`i` graded term `x_i^a p_i^b C(y_i)` maps into `Gr(µ_{i+1})` as
//! `z_i^(ℓ'_i a - ℓ_i b) p_{i+1}^(h_i a + e_i b) C(z_i)`, where `z_i` is the class
//! of `y` in `F_{i+1}`. Inverting that map gives the lifts used to build
//! representatives.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::arith::qpoly::{phi_expansion, QPoly};
use crate::arith::rational::{balanced, pow_p, reduce_mod_p, Valued};
use crate::arith::tower::{FqPoly, TowerElem};
use crate::error::{Error, Result};
use crate::polygon::{lower_hull, PolyPoint};
use crate::valuation::MacLaneChain;

/// `x_i^exp_x p_i^exp_p coeff(y_i)` in `Gr(µ_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTerm {
    pub exp_p: i64,
    pub exp_x: i64,
    pub coeff: FqPoly,
}

/// `H_{µ_i}(g) = x_i^s p_i^u R_i(g)(y_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualResult {
    pub s: i64,
    pub u: i64,
    pub poly: FqPoly,
}

pub fn r0(p: u64, g: &QPoly) -> Result<ResidualResult> {
    let u = g.gauss_val(p).finite().ok_or(Error::ZeroPolynomial)?;
    let scale = pow_p(p, -u);
    let coeffs = g
        .coeffs()
        .iter()
        .map(|c| reduce_mod_p(&(c * &scale), p).map(TowerElem::Prime))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualResult { s: 0, u, poly: FqPoly::new(coeffs) })
}

/// Reduce `x^e = y p^h` and merge terms of equal `(exp_x, exp_p)`. Exponents of `x` must be nonnegative.
pub fn graded_normalize(chain: &MacLaneChain, i: usize, terms: &[GradedTerm]) -> Vec<GradedTerm> {
    let n = chain.nums(i);
    let field = chain.tower().field(i);
    let mut acc: BTreeMap<(i64, i64), FqPoly> = BTreeMap::new();
    for t in terms {
        assert!(t.exp_x >= 0, "negative power of x_{i}");
        let q = t.exp_x / n.e;
        let key = (t.exp_x % n.e, t.exp_p + q * n.h);
        let mut v = vec![field.zero(); q as usize];
        v.extend(t.coeff.coeffs().iter().cloned());
        let shifted = FqPoly::new(v);
        acc.entry(key).and_modify(|c| *c = field.poly_add(c, &shifted)).or_insert(shifted);
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((exp_x, exp_p), coeff)| GradedTerm { exp_p, exp_x, coeff })
        .collect()
}

/// Image in `F_{i+1}` of the unit part of a level-`i` term, and its `p_{i+1}` exponent.
pub(crate) fn term_to_next(chain: &MacLaneChain, i: usize, s: i64, u: i64, poly: &FqPoly) -> Result<(i64, TowerElem)> {
    let n = chain.nums(i);
    let up = chain.tower().field(i + 1);
    let z = up.generator();
    let twist = up.pow_i(&z, n.lp * s - n.l * u)?;
    Ok((n.h * s + n.e * u, up.mul(&twist, &up.from_base_poly(poly))))
}

/// `c_i(a) ∈ F_i^*`, the coefficient of `H_{µ_i}(a) = c_i(a) p_i^{v_{i-1}(a)}` for
/// `0 < deg a < m_i` or constant `a ≠ 0`.
pub fn residual_coefficient(chain: &MacLaneChain, i: usize, a: &QPoly) -> Result<TowerElem> {
    if i == 0 || i > chain.len() {
        return Err(Error::LevelOutOfRange(i));
    }
    let prev = if i == 1 { r0(chain.p(), a)? } else { ri(chain, i - 1, a)? };
    Ok(term_to_next(chain, i - 1, prev.s, prev.u, &prev.poly)?.1)
}

struct Expansion {
    /// `(s, w_s, a_s)` with `w_s = v_{i-1}(a_s) + s V_i`.
    points: Vec<(u64, i64, QPoly)>,
}

fn expansion(chain: &MacLaneChain, i: usize, g: &QPoly) -> Result<Expansion> {
    let lv = chain.level(i);
    let mut points = Vec::new();
    for (s, a) in phi_expansion(g, &lv.phi)?.into_iter().enumerate() {
        if let Valued::Finite(w) = chain.v_norm(i - 1, &a)? {
            points.push((s as u64, w + s as i64 * lv.big_v, a));
        }
    }
    if points.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(Expansion { points })
}

fn component_range(chain: &MacLaneChain, i: usize, ex: &Expansion) -> Result<(u64, u64)> {
    let pts: Vec<PolyPoint> = ex.points.iter().map(|(s, w, _)| PolyPoint::new(*s, BigRational::from_integer((*w).into()))).collect();
    let hull = lower_hull(&pts)?;
    let lv = chain.level(i);
    let c = hull.component(&BigRational::new(lv.h.into(), lv.e.into()));
    Ok((c.left.s, c.right.s))
}

/// Left end point `(s_i(g), u_i(g))` of the ν_i-component of `N_i(g)`,
/// with `u_i` in the normalized scale of `µ_{i-1}`.
pub fn left_end(chain: &MacLaneChain, i: usize, g: &QPoly) -> Result<(i64, i64)> {
    if i == 0 {
        let r = r0(chain.p(), g)?;
        return Ok((0, r.u));
    }
    if i > chain.len() {
        return Err(Error::LevelOutOfRange(i));
    }
    let ex = expansion(chain, i, g)?;
    let (left, _) = component_range(chain, i, &ex)?;
    let w = ex.points.iter().find(|(s, _, _)| *s == left).expect("vertex").1;
    Ok((left as i64, w))
}

pub fn ri(chain: &MacLaneChain, i: usize, g: &QPoly) -> Result<ResidualResult> {
    if i == 0 {
        return r0(chain.p(), g);
    }
    if i > chain.len() {
        return Err(Error::LevelOutOfRange(i));
    }
    let lv = chain.level(i);
    let ex = expansion(chain, i, g)?;
    let (left, right) = component_range(chain, i, &ex)?;
    let w_left = ex.points.iter().find(|(s, _, _)| *s == left).expect("vertex").1;
    let line = lv.e * w_left + left as i64 * lv.h;
    let mut terms = Vec::new();
    for (s, w, a) in &ex.points {
        if *s < left || *s > right || lv.e * w + *s as i64 * lv.h != line {
            continue;
        }
        let c = residual_coefficient(chain, i, a)?;
        terms.push(GradedTerm { exp_p: *w, exp_x: *s as i64, coeff: FqPoly::new(vec![c]) });
    }
    let norm = graded_normalize(chain, i, &terms);
    let [t] = norm.as_slice() else {
        return Err(Error::InvalidChain(format!("leading form at level {i} is not homogeneous")));
    };
    let k = t.coeff.ord_y() as i64;
    Ok(ResidualResult { s: t.exp_x + lv.e * k, u: t.exp_p - lv.h * k, poly: t.coeff.div_y_pow(k as usize) })
}

/// `(s_i(g), R_i(g))`: the residual ideal of `g` is generated by `y^⌈s/e_i⌉ R_i(g)(y)`.
pub fn residual_ideal_data(chain: &MacLaneChain, i: usize, g: &QPoly) -> Result<(i64, FqPoly)> {
    let r = ri(chain, i, g)?;
    Ok((r.s, r.poly))
}

/// A polynomial `a` with `deg a < m_{k+1}`, `v_k(a) = target` and `c_{k+1}(a) = zeta`
/// (`zeta ∈ F_{k+1}`, nonzero). Residues are lifted to their symmetric representatives.
pub fn lift_residue(chain: &MacLaneChain, k: usize, target: i64, zeta: &TowerElem) -> Result<QPoly> {
    if k >= chain.len() {
        return Err(Error::LevelOutOfRange(k + 1));
    }
    if zeta.is_zero() {
        return Err(Error::InvalidElement("cannot lift zero".into()));
    }
    let up = chain.tower().field(k + 1);
    up.validate(zeta)?;
    let p = chain.p();
    if k == 0 {
        let poly = up.to_base_poly(zeta);
        let coeffs: Vec<BigRational> = poly
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(balanced(c.as_prime().expect("prime field"), p).into()))
            .collect();
        return Ok(QPoly::new(coeffs).scale(&pow_p(p, target)));
    }
    let n = chain.nums(k);
    let s0 = (target * n.l).rem_euclid(n.e);
    let u0 = (target - s0 * n.h) / n.e;
    let z = up.generator();
    let zp = up.mul(zeta, &up.pow_i(&z, n.l * u0 - n.lp * s0)?);
    let pz = up.to_base_poly(&zp);
    let t = pz.ord_y();
    let s1 = s0 + t as i64 * n.e;
    let u1 = u0 - t as i64 * n.h;
    let rpoly = pz.div_y_pow(t);
    let phi = &chain.level(k).phi;
    let mut out = QPoly::zero();
    for (j, c) in rpoly.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let pw = s1 + j as i64 * n.e;
        let b = lift_residue(chain, k - 1, u1 - j as i64 * n.h - pw * n.big_v, c)?;
        out = &out + &(&b * &phi.pow(pw as usize));
    }
    Ok(out)
}
