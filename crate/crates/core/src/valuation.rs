//! MacLane chains of inductive valuations `µ_0 < µ_1 < … < µ_r` on `Q_p[x]`.
//!
//! Values are carried in the normalized scale `v_i = e(µ_i) µ_i`, which is
//! integer valued on `Z_p[x]`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::arith::qpoly::{phi_expansion, QPoly};
use crate::arith::rational::{ext_gcd, min_val, ValOrInf, Valued};
use crate::arith::tower::{FqPoly, TowerField};
use crate::arith::is_irreducible;
use crate::error::{Error, Result};
use crate::polygon::{lower_hull, NewtonPolygon, PolyPoint};
use crate::residual::{r0, ri};

/// One augmentation step `µ_i = [µ_{i-1}; φ_i, ν_i]` with its cached numerical data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub phi: QPoly,
    pub nu: BigRational,
    /// `ψ_{i-1} = R_{i-1}(φ_i)`, defining `F_i` over `F_{i-1}`.
    pub psi_prev: FqPoly,
    pub e: i64,
    pub h: i64,
    /// `f_{i-1} = deg ψ_{i-1}`.
    pub f_prev: i64,
    pub m: i64,
    /// `V_i = e(µ_{i-1}) µ_{i-1}(φ_i)`.
    pub big_v: i64,
    pub l: i64,
    pub lp: i64,
    /// `e(µ_i)`.
    pub e_mu: i64,
}

/// Numerical data of a level, including the virtual level 0 (`φ_0 = x`, `ν_0 = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelNums {
    pub e: i64,
    pub h: i64,
    pub l: i64,
    pub lp: i64,
    pub m: i64,
    pub big_v: i64,
    pub e_mu: i64,
}

impl LevelNums {
    const GAUSS: LevelNums = LevelNums { e: 1, h: 0, l: 0, lp: 1, m: 1, big_v: 0, e_mu: 1 };
}

/// Outcome of testing a candidate key polynomial against the top valuation of a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KeyCheck {
    /// A key polynomial not `µ_r`-equivalent to `φ_r`; carries `R_r(φ)`.
    Proper { psi: FqPoly },
    /// A key polynomial of degree `m_r` equivalent to `φ_r`.
    Improper,
    NotKey(String),
}

impl KeyCheck {
    pub fn is_key(&self) -> bool {
        !matches!(self, KeyCheck::NotKey(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacLaneChain {
    p: u64,
    levels: Vec<Arc<Level>>,
    tower: TowerField,
}

fn to_i64(n: &BigInt) -> Result<i64> {
    n.to_i64().ok_or_else(|| Error::Unsupported(format!("integer {n} out of range")))
}

impl MacLaneChain {
    /// The chain of length zero: the Gauss valuation `µ_0`.
    pub fn gauss(p: u64) -> Result<Self> {
        Ok(MacLaneChain { p, levels: Vec::new(), tower: TowerField::new(p)? })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Level `i` for `1 <= i <= len`.
    pub fn level(&self, i: usize) -> &Level {
        &self.levels[i - 1]
    }

    pub fn levels(&self) -> impl Iterator<Item = &Level> {
        self.levels.iter().map(|l| &**l)
    }

    /// Residue tower `F_0 ⊂ … ⊂ F_r`.
    pub fn tower(&self) -> &TowerField {
        &self.tower
    }

    pub fn steps(&self) -> Vec<(QPoly, BigRational)> {
        self.levels().map(|l| (l.phi.clone(), l.nu.clone())).collect()
    }

    pub fn nums(&self, i: usize) -> LevelNums {
        if i == 0 {
            return LevelNums::GAUSS;
        }
        let l = self.level(i);
        LevelNums { e: l.e, h: l.h, l: l.l, lp: l.lp, m: l.m, big_v: l.big_v, e_mu: l.e_mu }
    }

    pub fn e_mu(&self, i: usize) -> i64 {
        self.nums(i).e_mu
    }

    /// `λ_i = h_i / e_i`.
    pub fn lambda(&self, i: usize) -> BigRational {
        let n = self.nums(i);
        BigRational::new(n.h.into(), n.e.into())
    }

    fn check_level(&self, i: usize) -> Result<()> {
        if i > self.len() {
            return Err(Error::LevelOutOfRange(i));
        }
        Ok(())
    }

    /// `e(µ_i) µ_i(g)`; `Inf` for `g = 0`.
    pub fn v_norm(&self, i: usize, g: &QPoly) -> Result<Valued<i64>> {
        self.check_level(i)?;
        if g.is_zero() {
            return Ok(Valued::Inf);
        }
        if i == 0 {
            return Ok(g.gauss_val(self.p));
        }
        let lv = self.level(i);
        let step = lv.e * lv.big_v + lv.h;
        let mut vals = Vec::new();
        for (s, a) in phi_expansion(g, &lv.phi)?.iter().enumerate() {
            vals.push(self.v_norm(i - 1, a)?.map(|w| lv.e * w + s as i64 * step));
        }
        Ok(min_val(vals))
    }

    /// `µ_i(g)` as an exact rational.
    pub fn mu(&self, i: usize, g: &QPoly) -> Result<ValOrInf> {
        let v = self.v_norm(i, g)?;
        let e = self.e_mu(i);
        Ok(v.map(|v| BigRational::new(v.into(), e.into())))
    }

    /// Points `(s, e(µ_k) µ_k(a_s φ^s))` of the φ-expansion of `g`, zero coefficients omitted.
    pub fn expansion_points(&self, k: usize, phi: &QPoly, g: &QPoly) -> Result<Vec<(u64, i64, QPoly)>> {
        self.check_level(k)?;
        let vphi = self.v_norm(k, phi)?.finite().ok_or(Error::ZeroPolynomial)?;
        let mut out = Vec::new();
        for (s, a) in phi_expansion(g, phi)?.into_iter().enumerate() {
            if let Valued::Finite(w) = self.v_norm(k, &a)? {
                out.push((s as u64, w + s as i64 * vphi, a));
            }
        }
        Ok(out)
    }

    /// `N_{µ_k, φ}(g)` with ordinates in µ units.
    pub fn newton_polygon_along(&self, k: usize, phi: &QPoly, g: &QPoly) -> Result<NewtonPolygon> {
        let pts = self.expansion_points(k, phi, g)?;
        let e = self.e_mu(k);
        let pts: Vec<PolyPoint> = pts
            .into_iter()
            .map(|(s, w, _)| PolyPoint::new(s, BigRational::new(w.into(), e.into())))
            .collect();
        lower_hull(&pts)
    }

    /// `N_i(g) = N_{µ_{i-1}, φ_i}(g)` for `1 <= i <= len`.
    pub fn newton_polygon(&self, i: usize, g: &QPoly) -> Result<NewtonPolygon> {
        if i == 0 || i > self.len() {
            return Err(Error::LevelOutOfRange(i));
        }
        self.newton_polygon_along(i - 1, &self.level(i).phi, g)
    }

    /// Test whether `phi` is a key polynomial for the top valuation `µ_r`.
    pub fn key_check(&self, phi: &QPoly) -> KeyCheck {
        if !phi.is_monic() {
            return KeyCheck::NotKey("not monic".into());
        }
        if !phi.is_integral(self.p) {
            return KeyCheck::NotKey("coefficients are not p-integral".into());
        }
        let r = self.len();
        if r == 0 {
            let psi = match r0(self.p, phi) {
                Ok(res) => res.poly,
                Err(e) => return KeyCheck::NotKey(e.to_string()),
            };
            if psi.deg() == 0 || !is_irreducible(&self.tower.field(0), &psi) {
                return KeyCheck::NotKey("reduction modulo p is not irreducible".into());
            }
            return KeyCheck::Proper { psi };
        }
        let n = self.nums(r);
        let deg = phi.deg() as i64;
        if deg % n.m != 0 {
            return KeyCheck::NotKey(format!("degree {deg} is not a multiple of m_{r} = {}", n.m));
        }
        let res = match ri(self, r, phi) {
            Ok(res) => res,
            Err(e) => return KeyCheck::NotKey(e.to_string()),
        };
        if deg == n.m && res.s == 1 && res.poly.deg() == 0 {
            return KeyCheck::Improper;
        }
        if res.s != 0 {
            return KeyCheck::NotKey(format!("Newton polygon is not one-sided: s_{r}(phi) = {}", res.s));
        }
        if deg != n.e * n.m * res.poly.deg() as i64 {
            return KeyCheck::NotKey(format!(
                "degree {deg} differs from e_{r} m_{r} deg R_{r}(phi) = {}",
                n.e * n.m * res.poly.deg() as i64
            ));
        }
        if !is_irreducible(&self.tower.field(r), &res.poly) {
            return KeyCheck::NotKey(format!("residual polynomial R_{r}(phi) is reducible"));
        }
        KeyCheck::Proper { psi: res.poly }
    }

    /// `[µ_r; φ, ν]`, rejecting improper steps.
    pub fn augment(&self, phi: &QPoly, nu: &BigRational) -> Result<Self> {
        if !nu.is_positive() {
            return Err(Error::NonPositiveSlope(nu.to_string()));
        }
        if phi.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !phi.is_monic() {
            return Err(Error::NotMonic);
        }
        if let Some(c) = phi.coeffs().iter().find(|c| !crate::arith::rational::is_integral(c, self.p)) {
            return Err(Error::NotIntegral(c.to_string()));
        }
        let r = self.len();
        let prev = self.nums(r);
        if r > 0 && phi.deg() as i64 % prev.m != 0 {
            return Err(Error::DegreeNotMultiple { deg: phi.deg(), m: prev.m as usize });
        }
        let psi = match self.key_check(phi) {
            KeyCheck::Proper { psi } => psi,
            KeyCheck::Improper => return Err(Error::ImproperStep),
            KeyCheck::NotKey(why) => return Err(Error::NotKeyPolynomial(why)),
        };
        let f_prev = psi.deg() as i64;
        let lambda = nu * BigRational::from_integer(prev.e_mu.into());
        let e = to_i64(lambda.denom())?;
        let h = to_i64(lambda.numer())?;
        let big_v = self.v_norm(r, phi)?.finite().ok_or(Error::ZeroPolynomial)?;
        let expected_v = if r == 0 { 0 } else { prev.e * f_prev * (prev.e * prev.big_v + prev.h) };
        if big_v != expected_v {
            return Err(Error::InvalidChain(format!("V = {big_v} violates the recurrence (expected {expected_v})")));
        }
        let (g, a, _) = ext_gcd(h, e);
        debug_assert_eq!(g, 1);
        let l = a.rem_euclid(e);
        let lp = (1 - l * h) / e;
        let tower = self.tower.extend(psi.clone())?;
        let level = Level {
            phi: phi.clone(),
            nu: nu.clone(),
            psi_prev: psi,
            e,
            h,
            f_prev,
            m: phi.deg() as i64,
            big_v,
            l,
            lp,
            e_mu: prev.e_mu * e,
        };
        let mut levels = self.levels.clone();
        levels.push(Arc::new(level));
        Ok(MacLaneChain { p: self.p, levels, tower })
    }

    /// The first `k` levels.
    pub fn truncate(&self, k: usize) -> Self {
        MacLaneChain { p: self.p, levels: self.levels[..k].to_vec(), tower: self.tower.truncate(k) }
    }

    /// Merge levels `i` and `i + 1` (which must have `deg φ_i = deg φ_{i+1}`) into
    /// `(φ_{i+1}, ν_i + ν_{i+1})`. The residue level `F_{i+1}` disappears.
    pub fn collapse_step(&self, i: usize) -> Result<Self> {
        if i == 0 || i >= self.len() {
            return Err(Error::LevelOutOfRange(i));
        }
        let (lo, hi) = (self.level(i), self.level(i + 1));
        if lo.m != hi.m {
            return Err(Error::NotStationary { level: i, lower: lo.m as usize, upper: hi.m as usize });
        }
        let mut c = self.truncate(i - 1).augment(&hi.phi, &(&lo.nu + &hi.nu))?;
        for k in i + 2..=self.len() {
            let lv = self.level(k);
            c = c.augment(&lv.phi, &lv.nu)?;
        }
        if c.tower != self.tower.remove_linear_level(i + 1)? {
            return Err(Error::InvalidChain("collapsed chain has an inconsistent residue tower".into()));
        }
        Ok(c)
    }

    /// Whether level `i < len` is stationary (`e_i = f_i = 1`).
    pub fn is_stationary(&self, i: usize) -> bool {
        i >= 1 && i < self.len() && self.level(i).e == 1 && self.level(i + 1).f_prev == 1
    }
}

pub fn build_chain(p: u64, steps: &[(QPoly, BigRational)]) -> Result<MacLaneChain> {
    steps.iter().try_fold(MacLaneChain::gauss(p)?, |c, (phi, nu)| c.augment(phi, nu))
}

pub fn mu_eval(chain: &MacLaneChain, i: usize, g: &QPoly) -> Result<ValOrInf> {
    chain.mu(i, g)
}

pub fn key_check(chain: &MacLaneChain, phi: &QPoly) -> KeyCheck {
    chain.key_check(phi)
}

pub fn augment(chain: &MacLaneChain, phi: &QPoly, nu: &BigRational) -> Result<MacLaneChain> {
    chain.augment(phi, nu)
}

pub fn collapse_step(chain: &MacLaneChain, i: usize) -> Result<MacLaneChain> {
    chain.collapse_step(i)
}
