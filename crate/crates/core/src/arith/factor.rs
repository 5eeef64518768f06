use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::tower::{Fq, FqPoly};

const SEED: u64 = 0x6d61_636c_616e_6521;

/// Monic irreducible factorization over `field`, canonically ordered by degree
/// then by coefficient vector (constant term first).
pub fn fq_factor(field: &Fq, g: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = field.poly_monic(g);
    let mut out = Vec::new();
    if g.deg() == 0 {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (sq, mult) in squarefree(field, &g) {
        for (d, part) in distinct_degree(field, &sq) {
            for h in equal_degree(field, &part, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()));
    Ok(out)
}

pub fn is_irreducible(field: &Fq, g: &FqPoly) -> bool {
    if g.deg() == 0 {
        return false;
    }
    match fq_factor(field, g) {
        Ok(f) => f.len() == 1 && f[0].1 == 1,
        Err(_) => false,
    }
}

fn pth_root_poly(field: &Fq, g: &FqPoly) -> FqPoly {
    let p = field.p() as usize;
    FqPoly::new(g.coeffs().iter().step_by(p).map(|c| field.pth_root(c)).collect())
}

/// Squarefree decomposition of a monic polynomial: `(part, multiplicity)`.
fn squarefree(field: &Fq, g: &FqPoly) -> Vec<(FqPoly, usize)> {
    let p = field.p() as usize;
    let mut out = Vec::new();
    let d = field.poly_derivative(g);
    if d.is_zero() {
        for (h, m) in squarefree(field, &pth_root_poly(field, g)) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = field.poly_gcd(g, &d);
    let mut w = field.poly_divrem(g, &c).0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = field.poly_gcd(&w, &c);
        let fac = field.poly_divrem(&w, &y).0;
        if fac.deg() > 0 {
            out.push((field.poly_monic(&fac), i));
        }
        c = field.poly_divrem(&c, &y).0;
        w = y;
        i += 1;
    }
    if c.deg() > 0 {
        for (h, m) in squarefree(field, &pth_root_poly(field, &field.poly_monic(&c))) {
            out.push((h, m * p));
        }
    }
    out
}

fn distinct_degree(field: &Fq, g: &FqPoly) -> Vec<(usize, FqPoly)> {
    let q = field.order();
    let y = field.poly_y();
    let mut out = Vec::new();
    let mut g = g.clone();
    let mut h = field.poly_rem(&y, &g);
    let mut d = 1;
    while g.deg() >= 2 * d {
        h = field.poly_powmod(&h, &q, &g);
        let part = field.poly_gcd(&g, &field.poly_sub(&h, &y));
        if part.deg() > 0 {
            g = field.poly_divrem(&g, &part).0;
            h = field.poly_rem(&h, &g);
            out.push((d, part));
        }
        d += 1;
    }
    if g.deg() > 0 {
        out.push((g.deg(), field.poly_monic(&g)));
    }
    out
}

fn equal_degree(field: &Fq, g: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    if g.deg() == d {
        return vec![field.poly_monic(g)];
    }
    let q = field.order();
    let qd = num_traits::pow(q.clone(), d);
    let odd = field.p() != 2;
    loop {
        let a = FqPoly::new((0..g.deg()).map(|_| field.random(rng)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if odd {
            let e = (&qd - BigUint::from(1u32)) / BigUint::from(2u32);
            field.poly_sub(&field.poly_powmod(&a, &e, g), &field.poly_one())
        } else {
            // trace map a + a^2 + ... + a^(2^(kd - 1)) for q = 2^k
            let steps = field.degree() as usize * d;
            let mut t = field.poly_rem(&a, g);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = field.poly_rem(&field.poly_mul(&t, &t), g);
                acc = field.poly_add(&acc, &t);
            }
            acc
        };
        let h = field.poly_gcd(g, &b);
        if h.deg() > 0 && h.deg() < g.deg() {
            let other = field.poly_divrem(g, &h).0;
            let mut out = equal_degree(field, &h, d, rng);
            out.extend(equal_degree(field, &other, d, rng));
            return out;
        }
    }
}
