//! The Montes algorithm: factorization of a monic squarefree `f ∈ Z_p[x]` into
//! OM certificates, one per irreducible p-adic factor.

use num_rational::BigRational;

use crate::arith::factor::fq_factor;
use crate::arith::qpoly::QPoly;
use crate::arith::rational::{check_prime, floor_i64, pow_p, Valued};
use crate::arith::tower::{Fq, FqPoly};
use crate::error::{Error, Result};
use crate::polygon::{NewtonPolygon, PolyPoint};
use crate::residual::{r0, ri};
use crate::types::Type;

const MAX_ORDER: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCertificate {
    pub degree: usize,
    pub e: i64,
    pub f: i64,
    pub okutsu_depth: usize,
    pub okutsu_frame: Vec<QPoly>,
    /// Slopes `ν_1, …, ν_r` of the type as found, before optimization.
    pub slopes: Vec<BigRational>,
    pub approximation: QPoly,
    /// Optimized type.
    pub final_type: Type,
    /// Type as produced by the iteration, stationary levels included.
    pub raw_type: Type,
}

#[derive(Clone, Debug)]
pub struct SideTrace {
    pub left: PolyPoint,
    pub right: PolyPoint,
    pub nu: BigRational,
    pub residual: FqPoly,
    pub factors: Vec<(FqPoly, usize)>,
    pub field: Fq,
}

#[derive(Clone, Debug)]
pub enum TraceEvent {
    Root { residual: FqPoly, factors: Vec<(FqPoly, usize)>, field: Fq },
    Expand { ty: Type, ord: usize, phi: QPoly, points: Vec<PolyPoint>, polygon: NewtonPolygon, sides: Vec<SideTrace> },
    Leaf { ty: Type, degree: usize },
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub certificates: Vec<FactorCertificate>,
    pub trace: Vec<TraceEvent>,
    /// `1 +` the largest integer ordinate reached by a polygon that closed a branch.
    pub precision_floor: i64,
}

pub fn check_input(f: &QPoly, p: u64) -> Result<()> {
    check_prime(p)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.deg() == 0 {
        return Err(Error::Unsupported("constant polynomial".into()));
    }
    if let Some(c) = f.coeffs().iter().find(|c| !crate::arith::rational::is_integral(c, p)) {
        return Err(Error::NotIntegral(c.to_string()));
    }
    if QPoly::gcd(f, &f.derivative()).deg() > 0 {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

struct Run<'a> {
    f: &'a QPoly,
    p: u64,
    certificates: Vec<FactorCertificate>,
    trace: Vec<TraceEvent>,
    floor: i64,
}

pub fn factorize(f: &QPoly, p: u64) -> Result<Factorization> {
    check_input(f, p)?;
    let mut run = Run { f, p, certificates: Vec::new(), trace: Vec::new(), floor: 0 };
    let field = Fq::prime(p)?;
    let res = r0(p, f)?;
    let factors = fq_factor(&field, &res.poly)?;
    run.trace.push(TraceEvent::Root { residual: res.poly.clone(), factors: factors.clone(), field });
    for (psi, a) in factors {
        run.node(Type::order_zero(p, psi)?, a, 0)?;
    }
    Ok(Factorization { certificates: run.certificates, trace: run.trace, precision_floor: run.floor + 1 })
}

impl Run<'_> {
    fn node(&mut self, t: Type, ord: usize, closing: i64) -> Result<()> {
        if ord == 1 {
            return self.leaf(t, closing);
        }
        if t.order() >= MAX_ORDER {
            return Err(Error::DepthExceeded(MAX_ORDER));
        }
        let phi = self.key_polynomial(&t)?;
        let r = t.order();
        let polygon = t.chain().newton_polygon_along(r, &phi, self.f)?;
        let e = t.chain().e_mu(r);
        let points: Vec<PolyPoint> = t
            .chain()
            .expansion_points(r, &phi, self.f)?
            .into_iter()
            .map(|(s, w, _)| PolyPoint::new(s, BigRational::new(w.into(), e.into())))
            .collect();
        let height = polygon.vertices().iter().map(|v| floor_i64(&v.u)).max().unwrap_or(0);
        let mut sides = Vec::new();
        let mut children = Vec::new();
        for side in polygon.principal_sides().into_iter().rev() {
            let nu = -side.slope();
            let chain = t.chain().augment(&phi, &nu)?;
            let res = ri(&chain, r + 1, self.f)?;
            let field = chain.tower().top();
            let factors = fq_factor(&field, &res.poly)?;
            for (psi, a) in &factors {
                children.push((Type::new(chain.clone(), psi.clone())?, *a));
            }
            sides.push(SideTrace { left: side.left, right: side.right, nu, residual: res.poly, factors, field });
        }
        let budget: usize = children.iter().map(|(c, a)| a * (c.chain().level(r + 1).e as usize) * c.psi().deg()).sum();
        if budget != ord {
            return Err(Error::InvalidChain(format!("branch of order {ord} split into total order {budget}")));
        }
        self.trace.push(TraceEvent::Expand { ty: t, ord, phi, points, polygon, sides });
        for (child, a) in children {
            self.node(child, a, height)?;
        }
        Ok(())
    }

    /// A representative of `t` that does not divide `f` exactly.
    fn key_polynomial(&self, t: &Type) -> Result<QPoly> {
        let phi = t.representative()?;
        if !self.f.div_rem(&phi)?.1.is_zero() {
            return Ok(phi);
        }
        let r = t.order();
        let base = match t.chain().mu(r, &phi)? {
            Valued::Finite(m) => floor_i64(&m) + 1,
            Valued::Inf => 1,
        };
        for k in base.. {
            let cand = &phi + &QPoly::constant(pow_p(self.p, k));
            if !self.f.div_rem(&cand)?.1.is_zero() && t.is_representative(&cand) {
                return Ok(cand);
            }
        }
        unreachable!()
    }

    fn leaf(&mut self, raw: Type, closing: i64) -> Result<()> {
        let final_type = raw.optimize()?;
        let (okutsu_depth, okutsu_frame) = final_type.okutsu_data()?;
        let e = final_type.ramification();
        let f = final_type.residual_degree();
        let approximation = final_type.representative()?;
        let degree = raw.rep_degree();
        self.floor = self.floor.max(closing);
        self.trace.push(TraceEvent::Leaf { ty: raw.clone(), degree });
        self.certificates.push(FactorCertificate {
            degree,
            e,
            f,
            okutsu_depth,
            okutsu_frame,
            slopes: raw.chain().levels().map(|l| l.nu.clone()).collect(),
            approximation,
            final_type,
            raw_type: raw,
        });
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyReport {
    pub checks: Vec<Check>,
    /// `v_p(f - ∏ approximations)`.
    pub product_valuation: Valued<i64>,
}

impl CertifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Re-verify the invariants of a factorization.
pub fn certify(f: &QPoly, p: u64, certs: &[FactorCertificate], floor: i64) -> Result<CertifyReport> {
    check_input(f, p)?;
    let mut checks = Vec::new();
    let mut push = |name: String, passed: bool, detail: String| checks.push(Check { name, passed, detail });
    let total: usize = certs.iter().map(|c| c.degree).sum();
    push("degree-sum".into(), total == f.deg(), format!("{total} = {}", f.deg()));
    let mut product = QPoly::one();
    for (k, c) in certs.iter().enumerate() {
        let ef = c.e * c.f;
        push(format!("degree-ef[{k}]"), ef == c.degree as i64, format!("e*f = {ef}, degree {}", c.degree));
        push(
            format!("approximation-degree[{k}]"),
            c.approximation.deg() == c.degree,
            format!("deg = {}", c.approximation.deg()),
        );
        let ord = c.final_type.ord(f)?;
        push(format!("ord-one[{k}]"), ord == 1, format!("ord_t(f) = {ord}"));
        let rep = c.final_type.is_representative(&c.approximation);
        push(format!("approximation-representative[{k}]"), rep, String::new());
        product = &product * &c.approximation;
    }
    let v = (f - &product).gauss_val(p);
    let ok = match &v {
        Valued::Inf => true,
        Valued::Finite(x) => *x >= floor,
    };
    push("precision-floor".into(), ok, format!("v(f - prod) = {v}, floor {floor}"));
    Ok(CertifyReport { checks, product_valuation: v })
}
