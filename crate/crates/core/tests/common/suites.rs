//! Checks shared by the focused test targets and the acceptance runner.
//! Every check panics on failure.

use std::collections::BTreeSet;

use maclane_core::arith::rational::{int, pow_p, rat};
use maclane_core::json::{certificate_to_json, equiv_to_json, factorization_to_json, type_to_json};
use maclane_core::polygon::lower_hull;
use maclane_core::render::render_trace;
use maclane_core::{
    certify, collapse_step, equivalent, factorize, lift_residue, ord_type, ri, transport_residual, EquivFailure,
    MacLaneChain, PolyPoint, QPoly, TowerElem, Type, Valued,
};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::*;

// ---- worked example ----

pub const TRACE_P3: [&str; 7] = [
    "R_0(f) = y^4",
    "  N_1(f): one-sided, length 4, slope -1/2",
    "  R_1(f) = y^2 + y + 1 = (y - 1)^2",
    "  points: (0, 4) (1, 3) (2, 2)",
    "  R_2(f) = y^2 + y + 1 = (y - 1)^2",
    "  R_3(f) = y^2 - y + 1 = (y + 1)^2",
    "  R_4(f) = y^2 + 1 (irreducible)",
];

/// One certificate of degree 4 with `e = f = 2` and Okutsu frame `[x, φ_4]`.
pub fn irreducible_fixture(p: i64) {
    let f = quartic(p);
    let out = factorize(&f, p as u64).unwrap();
    assert_eq!(out.certificates.len(), 1, "p = {p}");
    let c = &out.certificates[0];
    assert_eq!((c.degree, c.e, c.f, c.okutsu_depth), (4, 2, 2, 2), "p = {p}");
    assert_eq!(c.okutsu_frame, vec![QPoly::x(), phi4(p)]);
    assert_eq!(c.slopes, vec![rat(1, 2), int(1), int(1), int(1)]);
    assert_eq!(c.approximation, f);
    assert!(certify(&f, p as u64, &out.certificates, out.precision_floor).unwrap().all_passed());
}

/// The trace for `p = 3` shows the residual polynomials and polygons of the worked example.
pub fn worked_trace() {
    irreducible_fixture(3);
    let out = factorize(&quartic(3), 3).unwrap();
    let text = render_trace(&out.trace);
    let lines: Vec<&str> = text.lines().collect();
    let mut at = 0;
    for want in TRACE_P3 {
        let found = lines[at..].iter().position(|l| *l == want);
        assert!(found.is_some(), "trace line {want:?} missing (in order) from\n{text}");
        at += found.unwrap() + 1;
    }
}

/// Two certificates of degree 2, `e = 2`, `f = 1`, with `v(f - G G') >= 9`.
pub fn split_fixture(p: i64) -> i64 {
    let f = quartic(p);
    let out = factorize(&f, p as u64).unwrap();
    assert_eq!(out.certificates.len(), 2, "p = {p}");
    for c in &out.certificates {
        assert_eq!((c.degree, c.e, c.f, c.okutsu_depth), (2, 2, 1, 1));
    }
    let prod = &out.certificates[0].approximation * &out.certificates[1].approximation;
    let v = (&f - &prod).gauss_val(p as u64);
    assert!(v >= Valued::Finite(9), "p = {p}: v = {v}");
    assert_eq!(out.precision_floor, 9);
    assert!(certify(&f, p as u64, &out.certificates, 9).unwrap().all_passed());
    v.finite().unwrap_or(i64::MAX)
}

// ---- equivalence ----

/// Random nonzero polynomials of degree at most 8 that interact with `phi`.
pub fn test_polys(p: u64, phi: &QPoly, n: usize, seed: u64) -> Vec<QPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let g = match rng.gen_range(0..3) {
            0 => random_poly(p, phi, &mut rng),
            1 => &random_poly(p, phi, &mut rng) * &quartic(p as i64),
            _ => &random_expansion(p, phi, 1, &mut rng) + &(&phi.pow(rng.gen_range(1..4)) * &p_pow(p as i64, rng.gen_range(0..6))),
        };
        if g.deg() <= 8 {
            out.push(g);
        }
    }
    out
}

pub fn assert_same_ord(a: &Type, b: &Type, polys: &[QPoly]) {
    for g in polys {
        assert_eq!(ord_type(a, g).unwrap(), ord_type(b, g).unwrap(), "ord of {g}");
    }
}

/// `t_4 ≡ optimize(t_4)` for p = 3, and the two split types for p = 5 differ at ψ_2.
pub fn equivalence_fixtures() {
    let t4 = t4(3, &[1, 0, 1]);
    let t = t4.optimize().unwrap();
    let w = equivalent(&t4, &t).unwrap();
    assert!(w.is_equivalent(), "{:?}", w.verdict);
    assert_same_ord(&t4, &t, &test_polys(3, &phi4(3), 100, 3));

    let [i, j] = sqrt_minus_one(5)[..] else { unreachable!() };
    let a = super::t4(5, &[-i, 1]).optimize().unwrap();
    let b = super::t4(5, &[-j, 1]).optimize().unwrap();
    assert_eq!(equivalent(&a, &b).unwrap().verdict, Err(EquivFailure::Psi { level: 2 }));
}

// ---- stationary levels ----

fn stationary_chain(rng: &mut ChaCha8Rng) -> (MacLaneChain, usize) {
    let p = [2u64, 3, 5][rng.gen_range(0..3)];
    let r = rng.gen_range(2..=4);
    let j = rng.gen_range(1..r);
    let shape = Shape { stationary: Some(j), max_degree: 8, ..Shape::default() };
    let t = random_type(p, r, shape, rng);
    assert!(t.chain().is_stationary(j));
    (t.chain().clone(), j)
}

/// Residual data through a chain and through the chain with a stationary level removed.
/// At the merged level `u` drops by `s h` and `N` follows `(s, u) ↦ (s, u - s ν)`;
/// above it nothing changes.
pub fn collapse_suite(seed: u64, chains: usize, polys: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..chains {
        let (c, j) = stationary_chain(&mut rng);
        let r = c.len();
        let star = collapse_step(&c, j).unwrap();
        assert_eq!(star.len(), r - 1);
        assert_eq!(star.level(j).nu, &c.level(j).nu + &c.level(j + 1).nu);
        let tower = c.tower();
        let h = c.level(j).h;
        let nu = c.level(j).nu.clone();
        for _ in 0..polys {
            let g = random_poly(c.p(), &c.level(r).phi, &mut rng);
            assert_eq!(c.mu(r, &g).unwrap(), star.mu(r - 1, &g).unwrap(), "case {case}: µ changed");
            for k in 1..j {
                assert_eq!(ri(&c, k, &g).unwrap(), ri(&star, k, &g).unwrap());
            }
            for k in j + 1..=r {
                let old = ri(&c, k, &g).unwrap();
                let new = ri(&star, k - 1, &g).unwrap();
                let shift = if k == j + 1 { old.s * h } else { 0 };
                assert_eq!(new.s, old.s, "case {case} level {k}: s");
                assert_eq!(new.u, old.u - shift, "case {case} level {k}: u");
                assert_eq!(new.poly, tower.unwrap_poly(k, j + 1, &old.poly), "case {case} level {k}: R");

                let n_old = c.newton_polygon(k, &g).unwrap();
                let n_new = star.newton_polygon(k - 1, &g).unwrap();
                let expect = if k == j + 1 { n_old.apply_affinity(&-&nu) } else { n_old };
                assert_eq!(n_new, expect, "case {case} level {k}: N");
            }
        }
    }
}

// ---- last level ----

/// `(modified chain, a)` with `φ*_r = φ_r + a`, `v_{r-1}(a) = V_r + h_r + extra`, `c_r(a) = η`.
pub fn modified_chain(c: &MacLaneChain, eta: &TowerElem, extra: i64) -> (MacLaneChain, QPoly) {
    let r = c.len();
    let lv = c.level(r);
    let a = lift_residue(c, r - 1, lv.big_v + lv.h + extra, eta).unwrap();
    assert!(a.deg() < lv.phi.deg());
    let star = c.truncate(r - 1).augment(&(&lv.phi + &a), &lv.nu).unwrap();
    (star, a)
}

/// `φ_r → φ_r + a` with `µ(a) = µ(φ_r)`: `s* = ord_{y+η} R`, `R* = (y-η)^s P(y-η)`.
/// Returns how many samples moved the left end point.
pub fn last_level_suite(seed: u64, pairs: usize, polys: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut moved = 0;
    for case in 0..pairs {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let r = rng.gen_range(1..=3);
        let shape = Shape { unramified_top: true, max_degree: 8, ..Shape::default() };
        let c = random_type(p, r, shape, &mut rng).chain().clone();
        assert_eq!(c.level(r).e, 1);
        let field = c.tower().top();
        let eta = random_nonzero(&field, &mut rng);
        let (star, a) = modified_chain(&c, &eta, 0);
        assert_eq!(c.mu(r, &a).unwrap(), c.mu(r, &c.level(r).phi).unwrap());
        let ra = ri(&c, r, &a).unwrap();
        assert_eq!((ra.s, ra.u), (0, c.level(r).big_v + c.level(r).h));
        assert_eq!(ra.poly, field.poly_const(eta.clone()));
        assert_eq!(star.tower(), c.tower());

        let phi_star = star.level(r).phi.clone();
        for _ in 0..polys {
            let g = random_poly(p, if rng.gen_bool(0.5) { &phi_star } else { &c.level(r).phi }, &mut rng);
            assert_eq!(c.mu(r, &g).unwrap(), star.mu(r, &g).unwrap(), "case {case}: µ changed");
            let old = ri(&c, r, &g).unwrap();
            let new = ri(&star, r, &g).unwrap();
            let (s_star, r_star) = transport_residual(&field, &old.poly, old.s as usize, &eta).unwrap();
            assert_eq!(new.s, s_star as i64, "case {case}: s for {g}");
            assert_eq!(new.poly, r_star, "case {case}: R for {g}");
            // Both left ends lie on the same line of slope -h_r.
            assert_eq!(new.u + new.s * c.level(r).h, old.u + old.s * c.level(r).h);
            if new.s != old.s {
                moved += 1;
            }
        }
    }
    moved
}

/// `µ(a) > µ(φ_r)`: all residual data are unchanged.
pub fn higher_value_suite(seed: u64, pairs: usize, polys: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..pairs {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let r = rng.gen_range(1..=3);
        let c = random_type(p, r, Shape { max_degree: 8, ..Shape::default() }, &mut rng).chain().clone();
        let eta = random_nonzero(&c.tower().top(), &mut rng);
        let extra = c.level(r).e * rng.gen_range(1..=2);
        let (star, _) = modified_chain(&c, &eta, extra);
        let nu = &c.level(r).nu;
        for _ in 0..polys {
            let g = random_poly(p, &c.level(r).phi, &mut rng);
            assert_eq!(ri(&c, r, &g).unwrap(), ri(&star, r, &g).unwrap(), "case {case}: {g}");
            assert_eq!(
                c.newton_polygon(r, &g).unwrap().component(nu).length(),
                star.newton_polygon(r, &g).unwrap().component(nu).length()
            );
        }
    }
}

/// `φ_3 → φ_4 = φ_3 + p^3` on the order-3 chain of the worked example: the residual
/// polynomial of f collapses to a constant and its zero moves entirely into `s* = 2`.
pub fn degenerate_step(p: i64) {
    let c = chain(p, 3);
    let f = quartic(p);
    let field = c.tower().top();
    let ra = ri(&c, 3, &p_pow(p, 3)).unwrap();
    assert_eq!(ra.poly.deg(), 0);
    let eta = ra.poly.coeffs()[0].clone();
    let star = c.truncate(2).augment(&phi4(p), &int(1)).unwrap();
    let old = ri(&c, 3, &f).unwrap();
    assert_eq!((old.s, old.poly.deg()), (0, 2));
    let (s_star, r_star) = transport_residual(&field, &old.poly, old.s as usize, &eta).unwrap();
    assert_eq!(s_star, 2);
    assert_eq!(r_star.deg(), 0);
    let new = ri(&star, 3, &f).unwrap();
    assert_eq!((new.s, new.poly), (2, r_star));
}

// ---- properties ----

pub fn sample_type(seed: u64) -> (Type, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
    let r = rng.gen_range(0..=3);
    let t = random_type(p, r, Shape { max_degree: 8, ..Shape::default() }, &mut rng);
    (t, rng)
}

/// A test polynomial adapted to a random level of `t`.
pub fn sample_poly(t: &Type, rng: &mut ChaCha8Rng) -> QPoly {
    let c = t.chain();
    let k = rng.gen_range(0..=c.len());
    let phi = if k == 0 { QPoly::x() } else { c.level(k).phi.clone() };
    random_poly(t.p(), &phi, rng)
}

pub fn residuals_are_multiplicative(seed: u64) {
    let (t, mut rng) = sample_type(seed);
    let c = t.chain();
    let g = sample_poly(&t, &mut rng);
    let h = sample_poly(&t, &mut rng);
    let gh = &g * &h;
    for i in 0..=c.len() {
        let (a, b, ab) = (ri(c, i, &g).unwrap(), ri(c, i, &h).unwrap(), ri(c, i, &gh).unwrap());
        let field = c.tower().field(i);
        assert_eq!((ab.s, ab.u), (a.s + b.s, a.u + b.u), "level {i}");
        assert_eq!(ab.poly, field.poly_mul(&a.poly, &b.poly), "level {i}");
    }
    assert_eq!(t.ord(&gh).unwrap(), t.ord(&g).unwrap() + t.ord(&h).unwrap());
}

/// `µ_{i-1} <= µ_i`, with equality exactly when `φ_i ∤ g` in `Gr(µ_{i-1})`,
/// i.e. when `ψ_{i-1} ∤ R_{i-1}(g)`.
pub fn values_increase_along_the_chain(seed: u64) {
    let (t, mut rng) = sample_type(seed);
    let c = t.chain();
    let g = sample_poly(&t, &mut rng);
    for i in 1..=c.len() {
        let (lo, hi) = (c.mu(i - 1, &g).unwrap(), c.mu(i, &g).unwrap());
        assert!(lo <= hi);
        let r = ri(c, i - 1, &g).unwrap();
        let divides = c.tower().field(i - 1).poly_rem(&r.poly, t.psi_at(i - 1)).is_zero();
        assert_eq!(lo == hi, !divides, "level {i}: {lo} vs {hi}");
    }
}

pub fn residual_degree_is_component_length(seed: u64) {
    let (t, mut rng) = sample_type(seed);
    let c = t.chain();
    let g = sample_poly(&t, &mut rng);
    for i in 1..=c.len() {
        let r = ri(c, i, &g).unwrap();
        let comp = c.newton_polygon(i, &g).unwrap().component(&c.level(i).nu);
        let (e, width) = (c.level(i).e, (comp.right.s - comp.left.s) as i64);
        assert_eq!(comp.left.s as i64, r.s);
        assert_eq!(width % e, 0);
        assert_eq!(r.poly.deg() as i64, width / e);
        assert!(!r.poly.coeffs()[0].is_zero());
    }
}

pub fn key_polynomials_realize_psi(seed: u64) {
    let (t, _) = sample_type(seed);
    let c = t.chain();
    for i in 0..c.len() {
        let r = ri(c, i, &c.level(i + 1).phi).unwrap();
        assert_eq!(&r.poly, t.psi_at(i), "level {i}");
        if i > 0 {
            assert_eq!(r.s, 0);
        }
    }
}

pub fn representatives_have_order_one(seed: u64) {
    let (t, _) = sample_type(seed);
    let phi = t.representative().unwrap();
    let (e, m) = match t.order() {
        0 => (1, 1),
        r => (t.chain().level(r).e, t.chain().level(r).m),
    };
    assert!(phi.is_monic());
    assert_eq!(phi.deg() as i64, e * t.psi().deg() as i64 * m);
    assert_eq!(t.ord(&phi).unwrap(), 1);
    assert!(t.is_representative(&phi));
}

fn point_set(raw: &[(u64, i64, i64)]) -> Vec<PolyPoint> {
    let mut pts: Vec<PolyPoint> = raw.iter().map(|&(s, n, d)| PolyPoint::new(s, rat(n, d))).collect();
    pts.sort_by(|a, b| (a.s, &a.u).cmp(&(b.s, &b.u)));
    pts.dedup_by(|b, a| a.s == b.s);
    pts
}

/// Hull vertices are input points, slopes strictly increase and no point lies below.
pub fn hull_lies_below_every_point(raw: &[(u64, i64, i64)]) {
    let pts = point_set(raw);
    let n = lower_hull(&pts).unwrap();
    let vs = n.vertices();
    assert!(vs.iter().all(|v| pts.contains(v)));
    assert!(vs.windows(2).all(|w| w[0].s < w[1].s));
    assert!(n.sides().windows(2).all(|s| s[0].slope() < s[1].slope()));
    for q in &pts {
        let y = match vs.windows(2).find(|w| w[0].s <= q.s && q.s <= w[1].s) {
            Some(w) => {
                let t = BigRational::new(((q.s - w[0].s) as i64).into(), ((w[1].s - w[0].s) as i64).into());
                &w[0].u + &(&(&w[1].u - &w[0].u) * &t)
            }
            None => vs[0].u.clone(),
        };
        assert!(q.u >= y, "{q:?} below hull");
    }
}

/// The λ-component spans exactly the points minimizing `u + λ s`.
pub fn components_support_the_polygon(raw: &[(u64, i64, i64)], lambda: &BigRational) {
    let pts = point_set(raw);
    let c = lower_hull(&pts).unwrap().component(lambda);
    let height = |q: &PolyPoint| &q.u + &(lambda * &BigRational::from_integer((q.s as i64).into()));
    let best = pts.iter().map(height).min().unwrap();
    let on_line: Vec<u64> = pts.iter().filter(|q| height(q) == best).map(|q| q.s).collect();
    assert_eq!(c.left.s, *on_line.iter().min().unwrap());
    assert_eq!(c.right.s, *on_line.iter().max().unwrap());
    assert_eq!(height(&c.left), best);
    assert_eq!(height(&c.right), best);
    assert_eq!(c.length(), c.right.s - c.left.s);
}

/// All values `µ_i(a)` with `deg a < e_i m_i` and `0 <= µ_i(a) <= bound`, over the
/// polynomials whose coefficients are 0 or `p^k` with `k <= bound`.
pub fn attained_values(c: &MacLaneChain, i: usize, bound: i64) -> BTreeSet<BigRational> {
    let n = if i == 0 { 1 } else { (c.level(i).e * c.level(i).m) as usize };
    let choices: Vec<BigRational> =
        std::iter::once(BigRational::zero()).chain((0..=bound).map(|k| pow_p(c.p(), k))).collect();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let a = QPoly::new(idx.iter().map(|&j| choices[j].clone()).collect());
        if let Valued::Finite(v) = c.mu(i, &a).unwrap() {
            if v >= BigRational::zero() && v <= int(bound) {
                out.insert(v);
            }
        }
        let mut k = 0;
        while k < n && idx[k] + 1 == choices.len() {
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
        idx[k] += 1;
    }
}

/// Every value of `Γ(µ_i) ∩ [0, B]` is reached in degree `< e_i m_i` on the worked-example chains.
pub fn value_attainment(bound: i64) {
    for p in [3i64, 5, 7] {
        for i in 0..=4 {
            let c = chain(p, i);
            let e = c.e_mu(i);
            let expected: BTreeSet<BigRational> = (0..=bound * e).map(|k| rat(k, e)).collect();
            assert_eq!(attained_values(&c, i, bound), expected, "p = {p}, level {i}");
        }
    }
}

pub fn random_points(rng: &mut ChaCha8Rng) -> Vec<(u64, i64, i64)> {
    (0..rng.gen_range(1..12)).map(|_| (rng.gen_range(0..12), rng.gen_range(-20..20), rng.gen_range(1..4))).collect()
}

// ---- unramified oracle ----

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Division by a monic `b` over F_p.
fn divmod(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let mut q = vec![0; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p * p - c * bj % p) % p;
        }
    }
    (trim(q), trim(r))
}

fn monics(d: usize, p: u64) -> impl Iterator<Item = Poly> {
    (0..p.pow(d as u32)).map(move |mut n| {
        let mut v: Poly = (0..d)
            .map(|_| {
                let c = n % p;
                n /= p;
                c
            })
            .collect();
        v.push(1);
        v
    })
}

/// Irreducible factors with multiplicity by trial division in increasing degree,
/// so every divisor that succeeds is irreducible.
pub fn trial_factor(f: &Poly, p: u64) -> Vec<(Poly, usize)> {
    let mut g = f.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while 2 * d < g.len() {
        for q in monics(d, p) {
            let mut mult = 0;
            loop {
                let (quo, rem) = divmod(&g, &q, p);
                if !rem.is_empty() {
                    break;
                }
                g = quo;
                mult += 1;
            }
            if mult > 0 {
                out.push((q, mult));
            }
        }
        d += 1;
    }
    if g.len() > 1 {
        out.push((g, 1));
    }
    out
}

/// Random monic `f` with `deg f <= 6` and `f mod p` squarefree: the certificates are the
/// factors of `f mod p`, all with `e = 1`. Returns the JSON of every factorization.
pub fn unramified_suite(seed: u64, n: usize) -> Vec<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut artifacts = Vec::new();
    while artifacts.len() < n {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let d = rng.gen_range(1..=6);
        let mut cs: Vec<i64> = (0..d).map(|_| rng.gen_range(-60..=60)).collect();
        cs.push(1);
        let reduced: Poly = trim(cs.iter().map(|c| c.rem_euclid(p as i64) as u64).collect());
        let oracle = trial_factor(&reduced, p);
        if oracle.iter().any(|(_, m)| *m > 1) {
            continue;
        }
        let f = QPoly::from_ints(&cs);
        let out = factorize(&f, p).unwrap();
        assert_eq!(out.certificates.len(), oracle.len(), "{f} mod {p}");
        let mut ours: Vec<Poly> = Vec::new();
        for c in &out.certificates {
            assert_eq!((c.e, c.f as usize, c.final_type.order()), (1, c.degree, 0), "{f} mod {p}");
            ours.push(c.final_type.psi().coeffs().iter().map(|x| x.as_prime().unwrap()).collect());
        }
        let mut theirs: Vec<Poly> = oracle.into_iter().map(|(q, _)| q).collect();
        ours.sort();
        theirs.sort();
        assert_eq!(ours, theirs, "{f} mod {p}");
        artifacts.push(factorization_to_json(&f, p, &out));
    }
    artifacts
}

// ---- artifacts ----

/// Everything the suite emits as JSON, in a fixed order.
pub fn artifacts() -> String {
    let mut fixtures = Vec::new();
    for p in [3i64, 5, 7, 11, 13, 17] {
        let f = quartic(p);
        let out = factorize(&f, p as u64).unwrap();
        fixtures.push(factorization_to_json(&f, p as u64, &out));
    }
    let t4 = t4(3, &[1, 0, 1]);
    let [i, j] = sqrt_minus_one(5)[..] else { unreachable!() };
    let a = super::t4(5, &[-i, 1]).optimize().unwrap();
    let b = super::t4(5, &[-j, 1]).optimize().unwrap();
    let equiv = vec![
        equiv_to_json(&equivalent(&t4, &t4.optimize().unwrap()).unwrap()),
        equiv_to_json(&equivalent(&a, &b).unwrap()),
    ];
    let types: Vec<Value> = (0..20).map(|s| type_to_json(&sample_type(s).0)).collect();
    let mut certs = Vec::new();
    for v in unramified_suite(0x0007, 100) {
        certs.push(v);
    }
    let f = quartic(13);
    let first = certificate_to_json(&factorize(&f, 13).unwrap().certificates[0]);
    let doc = json!({
        "fixtures": fixtures,
        "equivalence": equiv,
        "types": types,
        "unramified": certs,
        "certificate": first,
    });
    serde_json::to_string_pretty(&doc).unwrap()
}
