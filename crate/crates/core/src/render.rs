//! Human-readable text for factorization traces and certificates.

use std::fmt::Write;

use num_rational::BigRational;

use crate::arith::factor::fq_factor;
use crate::arith::tower::{Fq, FqPoly};
use crate::montes::{CertifyReport, FactorCertificate, TraceEvent};
use crate::polygon::{NewtonPolygon, PolyPoint};

fn point(p: &PolyPoint) -> String {
    format!("({}, {})", p.s, p.u)
}

fn residual_line(name: &str, field: &Fq, r: &FqPoly, factors: &[(FqPoly, usize)]) -> String {
    let plain = field.fmt_poly(r, "y");
    if factors.len() == 1 && factors[0].1 == 1 {
        return format!("{name} = {plain} (irreducible)");
    }
    let factored = field.fmt_factored(factors);
    if factored == plain {
        format!("{name} = {plain}")
    } else {
        format!("{name} = {plain} = {factored}")
    }
}

fn slope(nu: &BigRational) -> String {
    format!("{}", -nu)
}

fn polygon_line(level: usize, n: &NewtonPolygon) -> String {
    let sides = n.principal_sides();
    match sides.as_slice() {
        [s] => format!("N_{level}(f): one-sided, length {}, slope {}", s.length(), s.slope()),
        _ => {
            let parts: Vec<String> = sides.iter().map(|s| format!("length {}, slope {}", s.length(), s.slope())).collect();
            format!("N_{level}(f): {} sides: {}", sides.len(), parts.join("; "))
        }
    }
}

/// One line per polygon, residual polynomial and type visited by the run.
pub fn render_trace(trace: &[TraceEvent]) -> String {
    let mut out = String::new();
    for ev in trace {
        match ev {
            TraceEvent::Root { residual, factors, field } => {
                let _ = writeln!(out, "{}", residual_line("R_0(f)", field, residual, factors));
            }
            TraceEvent::Expand { ty, ord, phi, points, polygon, sides } => {
                let k = ty.order() + 1;
                let _ = writeln!(out, "type {ty}, ord {ord}");
                let _ = writeln!(out, "  phi_{k} = {phi}");
                let pts: Vec<String> = points.iter().map(point).collect();
                let _ = writeln!(out, "  points: {}", pts.join(" "));
                let _ = writeln!(out, "  {}", polygon_line(k, polygon));
                let many = sides.len() > 1;
                for s in sides {
                    let name = if many { format!("R_{k}(f) at slope {}", slope(&s.nu)) } else { format!("R_{k}(f)") };
                    let _ = writeln!(out, "  {}", residual_line(&name, &s.field, &s.residual, &s.factors));
                }
            }
            TraceEvent::Leaf { ty, degree } => {
                let _ = writeln!(out, "leaf {ty}, degree {degree}");
            }
        }
    }
    out
}

pub fn render_certificate(k: usize, c: &FactorCertificate) -> String {
    let frame: Vec<String> = c.okutsu_frame.iter().map(|g| g.to_string()).collect();
    let slopes: Vec<String> = c.slopes.iter().map(|s| s.to_string()).collect();
    let mut out = String::new();
    let _ = writeln!(out, "factor {}: degree {}, e = {}, f = {}", k + 1, c.degree, c.e, c.f);
    let _ = writeln!(out, "  type: {}", c.final_type);
    let _ = writeln!(out, "  slopes: [{}]", slopes.join(", "));
    let _ = writeln!(out, "  okutsu depth {}, frame [{}]", c.okutsu_depth, frame.join(", "));
    let _ = writeln!(out, "  approximation: {}", c.approximation);
    out
}

pub fn render_report(r: &CertifyReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let mark = if c.passed { "ok" } else { "FAILED" };
        if c.detail.is_empty() {
            let _ = writeln!(out, "  {mark:6} {}", c.name);
        } else {
            let _ = writeln!(out, "  {mark:6} {} ({})", c.name, c.detail);
        }
    }
    out
}

/// `R` as a unit times its monic irreducible factors, e.g. `2 (y - 1)^2`.
pub fn factored(field: &Fq, r: &FqPoly) -> String {
    let Some(lead) = r.leading() else { return "0".into() };
    if r.deg() == 0 {
        return field.fmt_elem(lead);
    }
    let factors = match fq_factor(field, r) {
        Ok(f) => f,
        Err(_) => return field.fmt_poly(r, "y"),
    };
    let body = match factors.as_slice() {
        [(g, 1)] => field.fmt_poly(g, "y"),
        _ => field.fmt_factored(&factors),
    };
    if lead == &field.one() {
        body
    } else {
        format!("{} {body}", field.fmt_elem(lead))
    }
}
