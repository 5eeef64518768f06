#![allow(dead_code)]

pub mod suites;

use maclane_core::arith::rational::{floor_i64, int, pow_p, rat};
use maclane_core::{build_chain, Fq, FqPoly, MacLaneChain, QPoly, Type};
use num_rational::BigRational;

/// The quartic of the worked example for an odd prime `p`.
pub fn quartic(p: i64) -> QPoly {
    let c2 = -2 * (p + p * p - p.pow(3));
    let c0 = p.pow(2) + 2 * p.pow(3) - p.pow(4) - 2 * p.pow(5) + p.pow(6) + p.pow(8);
    QPoly::from_ints(&[c0, 0, c2, 0, 1])
}

pub fn phi2(p: i64) -> QPoly {
    QPoly::from_ints(&[-p, 0, 1])
}

pub fn phi3(p: i64) -> QPoly {
    QPoly::from_ints(&[-p - p * p, 0, 1])
}

pub fn phi4(p: i64) -> QPoly {
    QPoly::from_ints(&[-p - p * p + p.pow(3), 0, 1])
}

pub fn steps4(p: i64) -> Vec<(QPoly, BigRational)> {
    vec![(QPoly::x(), rat(1, 2)), (phi2(p), int(1)), (phi3(p), int(1)), (phi4(p), int(1))]
}

pub fn chain(p: i64, levels: usize) -> MacLaneChain {
    build_chain(p as u64, &steps4(p)[..levels]).unwrap()
}

/// `ψ` from integer coefficients over the top level of `chain`'s tower.
pub fn psi_over(chain: &MacLaneChain, cs: &[i64]) -> FqPoly {
    chain.tower().top().poly_from_i64(cs)
}

pub fn t4(p: i64, psi: &[i64]) -> Type {
    let c = chain(p, 4);
    let psi = psi_over(&c, psi);
    Type::new(c, psi).unwrap()
}

pub fn prime_field(p: u64) -> Fq {
    Fq::prime(p).unwrap()
}

pub fn p_pow(p: i64, k: i64) -> QPoly {
    QPoly::constant(pow_p(p as u64, k))
}

/// Square roots of -1 modulo p, smallest first.
pub fn sqrt_minus_one(p: i64) -> Vec<i64> {
    (1..p).filter(|i| (i * i + 1) % p == 0).collect()
}

use maclane_core::arith::is_irreducible;
use maclane_core::TowerElem;
use rand::Rng;

/// Random monic irreducible of degree `deg` over `field`; never `y` when `avoid_y`.
pub fn random_irreducible<R: Rng>(field: &Fq, deg: usize, avoid_y: bool, rng: &mut R) -> FqPoly {
    loop {
        let mut cs: Vec<TowerElem> = (0..deg).map(|_| field.random(rng)).collect();
        cs.push(field.one());
        let g = FqPoly::new(cs);
        if avoid_y && g.ord_y() > 0 {
            continue;
        }
        if is_irreducible(field, &g) {
            return g;
        }
    }
}

pub fn random_nonzero<R: Rng>(field: &Fq, rng: &mut R) -> TowerElem {
    loop {
        let x = field.random(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Shape constraints for [`random_type`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Shape {
    /// Force `e_i = f_i = 1` at this level.
    pub stationary: Option<usize>,
    /// Force `e_r = 1` at the top level.
    pub unramified_top: bool,
    /// Bound on `deg φ_{r+1}`.
    pub max_degree: usize,
}

/// A random type of order `r` built from representatives, with random slopes,
/// random residual polynomials and occasional harmless perturbations of the φ_i.
pub fn random_type<R: Rng>(p: u64, r: usize, shape: Shape, rng: &mut R) -> Type {
    loop {
        if let Some(t) = try_random_type(p, r, shape, rng) {
            return t;
        }
    }
}

fn try_random_type<R: Rng>(p: u64, r: usize, shape: Shape, rng: &mut R) -> Option<Type> {
    let max_deg = if shape.max_degree == 0 { 12 } else { shape.max_degree };
    let d0 = if rng.gen_bool(0.7) { 1 } else { 2 };
    let mut t = Type::order_zero(p, random_irreducible(&prime_field(p), d0, false, rng)).ok()?;
    for i in 1..=r {
        let mut phi = t.representative().ok()?;
        if rng.gen_bool(0.4) {
            let k = floor_i64(t.chain().mu(i - 1, &phi).ok()?.as_finite()?);
            let j = rng.gen_range(0..phi.deg());
            let c = rng.gen_range(1..p.max(2) as i64);
            let bump = &QPoly::monomial(BigRational::from_integer(c.into()), j) * &p_pow(p as i64, 1);
            let cand = &phi + &(&bump * &p_pow(p as i64, k + rng.gen_range(0..2)));
            if t.is_representative(&cand) {
                phi = cand;
            }
        }
        let fixed = shape.stationary == Some(i) || (shape.unramified_top && i == r);
        let room = max_deg / phi.deg();
        let e: i64 = if fixed || room < 2 { 1 } else { rng.gen_range(1..=room.min(3)) as i64 };
        let h: i64 = loop {
            let h = rng.gen_range(1..=4);
            if num_integer::gcd(h, e) == 1 {
                break h;
            }
        };
        let nu = BigRational::new(h.into(), (e * t.chain().e_mu(i - 1)).into());
        let chain = t.chain().augment(&phi, &nu).ok()?;
        let room = max_deg / (phi.deg() * e as usize);
        let f = if shape.stationary == Some(i) || room < 2 || rng.gen_bool(0.6) { 1 } else { 2 };
        let psi = random_irreducible(&chain.tower().top(), f, true, rng);
        t = Type::new(chain, psi).ok()?;
    }
    Some(t)
}

/// Random `Σ_{s<=terms} a_s φ^s` with `deg a_s < deg φ` and p-power-scaled coefficients.
pub fn random_expansion<R: Rng>(p: u64, phi: &QPoly, terms: usize, rng: &mut R) -> QPoly {
    let p = p as i64;
    let mut g = QPoly::zero();
    let mut pw = QPoly::one();
    for _ in 0..=terms {
        let a: Vec<i64> = (0..phi.deg()).map(|_| rng.gen_range(-p * p..=p * p) * p.pow(rng.gen_range(0..3))).collect();
        g = &g + &(&QPoly::from_ints(&a) * &pw);
        pw = &pw * phi;
    }
    if g.is_zero() {
        QPoly::one()
    } else {
        g
    }
}

/// A nonzero test polynomial adapted to `phi`: an expansion, a product of two, or
/// an expansion times a power of `phi`.
pub fn random_poly<R: Rng>(p: u64, phi: &QPoly, rng: &mut R) -> QPoly {
    match rng.gen_range(0..3) {
        0 => random_expansion(p, phi, rng.gen_range(0..4), rng),
        1 => &random_expansion(p, phi, rng.gen_range(0..2), rng) * &random_expansion(p, phi, rng.gen_range(0..2), rng),
        _ => &random_expansion(p, phi, 1, rng) * &phi.pow(rng.gen_range(1..3)),
    }
}
