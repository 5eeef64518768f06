//! Shared inputs for the benchmarks.

use maclane_core::arith::rational::{int, rat};
use maclane_core::{build_chain, parse_poly, MacLaneChain, QPoly};

/// The worked quartic: irreducible over Z_p for p = 3 mod 4, two quadratic factors for p = 1 mod 4.
pub fn quartic(p: i64) -> QPoly {
    let s = format!("x^4 - 2*({p} + {p}^2 - {p}^3)*x^2 + {p}^2 + 2*{p}^3 - {p}^4 - 2*{p}^5 + {p}^6 + {p}^8");
    parse_poly(&s, 'x').expect("valid polynomial")
}

/// The four-level chain along which `quartic(p)` is developed.
pub fn quartic_chain(p: i64) -> MacLaneChain {
    let phi2 = QPoly::from_ints(&[-p, 0, 1]);
    let phi3 = QPoly::from_ints(&[-p - p * p, 0, 1]);
    let phi4 = QPoly::from_ints(&[-p - p * p + p.pow(3), 0, 1]);
    build_chain(p as u64, &[(QPoly::x(), rat(1, 2)), (phi2, int(1)), (phi3, int(1)), (phi4, int(1))])
        .expect("valid chain")
}

/// A product of `n` Eisenstein quadratics, all sharing the residual data at level 0.
pub fn product(p: i64, n: usize) -> QPoly {
    let mut g = QPoly::from_ints(&[1]);
    for k in 0..n as i64 {
        g = &g * &QPoly::from_ints(&[p * (1 + k * p), p * p * k, 1]);
    }
    g
}
