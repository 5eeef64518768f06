//! Lower convex hulls of finite point clouds, their sides and λ-components.

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyPoint {
    pub s: u64,
    pub u: BigRational,
}

impl PolyPoint {
    pub fn new(s: u64, u: BigRational) -> Self {
        PolyPoint { s, u }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub left: PolyPoint,
    pub right: PolyPoint,
}

impl Side {
    pub fn slope(&self) -> BigRational {
        (&self.right.u - &self.left.u) / BigRational::from_integer((self.right.s - self.left.s).into())
    }

    pub fn length(&self) -> u64 {
        self.right.s - self.left.s
    }
}

/// The λ-component: the segment of the polygon touching the line of slope `-λ`
/// that supports it from below. It degenerates to a vertex when no side has that slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub left: PolyPoint,
    pub right: PolyPoint,
}

impl Component {
    pub fn length(&self) -> u64 {
        self.right.s - self.left.s
    }
}

/// Lower convex hull, stored as its vertices from left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<PolyPoint>,
}

pub fn lower_hull(points: &[PolyPoint]) -> Result<NewtonPolygon> {
    if points.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.s.cmp(&b.s).then(a.u.cmp(&b.u)));
    pts.dedup_by(|b, a| a.s == b.s);
    let mut hull: Vec<PolyPoint> = Vec::with_capacity(pts.len());
    for c in pts {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            // drop b unless slope(a,b) < slope(b,c)
            let lhs = (&b.u - &a.u) * BigRational::from_integer((c.s - b.s).into());
            let rhs = (&c.u - &b.u) * BigRational::from_integer((b.s - a.s).into());
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(c);
    }
    Ok(NewtonPolygon { vertices: hull })
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[PolyPoint] {
        &self.vertices
    }

    pub fn sides(&self) -> Vec<Side> {
        self.vertices.windows(2).map(|w| Side { left: w[0].clone(), right: w[1].clone() }).collect()
    }

    /// Sides of negative slope, left to right.
    pub fn principal_sides(&self) -> Vec<Side> {
        self.sides().into_iter().filter(|s| s.slope() < BigRational::zero()).collect()
    }

    /// Abscissa length of the principal part.
    pub fn principal_length(&self) -> u64 {
        self.principal_sides().iter().map(Side::length).sum()
    }

    pub fn length(&self) -> u64 {
        self.vertices.last().expect("nonempty").s - self.vertices[0].s
    }

    pub fn component(&self, lambda: &BigRational) -> Component {
        let val = |q: &PolyPoint| &q.u + lambda * BigRational::from_integer(q.s.into());
        let best = self.vertices.iter().map(val).min().expect("nonempty");
        let on: Vec<&PolyPoint> = self.vertices.iter().filter(|q| val(q) == best).collect();
        Component { left: on[0].clone(), right: on[on.len() - 1].clone() }
    }

    /// Image under `(s, u) ↦ (s, u + λ₀ s)`.
    pub fn apply_affinity(&self, lambda0: &BigRational) -> NewtonPolygon {
        let moved: Vec<PolyPoint> = self
            .vertices
            .iter()
            .map(|q| PolyPoint::new(q.s, &q.u + lambda0 * BigRational::from_integer(q.s.into())))
            .collect();
        lower_hull(&moved).expect("nonempty")
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.vertices
                .iter()
                .map(|q| Value::Array(vec![q.s.into(), crate::json::bigint_value(q.u.numer()), crate::json::bigint_value(q.u.denom())]))
                .collect(),
        )
    }
}

pub fn component_of(n: &NewtonPolygon, lambda: &BigRational) -> Component {
    n.component(lambda)
}

pub fn apply_affinity(n: &NewtonPolygon, lambda0: &BigRational) -> NewtonPolygon {
    n.apply_affinity(lambda0)
}
