//! Lobachevsky function and ideal tetrahedron volumes.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::complex::{cross_ratio, ComplexPoint, C64};
use crate::error::Result;

const SERIES_TERMS: usize = 40;

/// Coefficients `zeta(2k) / (k (2k+1) (2 pi)^{2k})` for k = 1..SERIES_TERMS.
fn clausen_coeffs() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let two_pi_sq = (2.0 * PI) * (2.0 * PI);
        std::array::from_fn(|i| {
            let k = (i + 1) as f64;
            let s = 2 * (i + 1);
            let zeta = match s {
                2 => PI * PI / 6.0,
                4 => PI.powi(4) / 90.0,
                6 => PI.powi(6) / 945.0,
                _ => {
                    // sum from the small end upward is fine: terms decay geometrically
                    let mut z = 0.0;
                    for n in (1..=60).rev() {
                        z += (n as f64).powi(-(s as i32));
                    }
                    z
                }
            };
            zeta / (k * (2.0 * k + 1.0) * two_pi_sq.powi(i as i32 + 1))
        })
    })
}

/// Clausen function `Cl2(t) = -int_0^t log|2 sin(s/2)| ds`.
pub fn clausen2(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    let two_pi = 2.0 * PI;
    let mut t = theta.rem_euclid(two_pi);
    if t > PI {
        t -= two_pi;
    }
    let sign = if t < 0.0 { -1.0 } else { 1.0 };
    let t = t.abs();
    if t == 0.0 {
        return 0.0;
    }
    let t2 = t * t;
    let mut pow = t * t2;
    let mut sum = 0.0;
    for c in clausen_coeffs() {
        sum += c * pow;
        pow *= t2;
    }
    sign * (t - t * t.ln() + sum)
}

/// Lobachevsky function `L(x) = -int_0^x log|2 sin s| ds`.
pub fn lobachevsky(x: f64) -> f64 {
    0.5 * clausen2(2.0 * x)
}

/// Signed volume of the ideal tetrahedron with shape parameter `w`.
pub fn shape_volume(w: C64) -> f64 {
    let one = C64::new(1.0, 0.0);
    let a = w.arg();
    let b = (one / (one - w)).arg();
    let c = (one - one / w).arg();
    lobachevsky(a) + lobachevsky(b) + lobachevsky(c)
}

/// Signed volume of the ideal tetrahedron `z0 z1 z2 z3`; positive for
/// `(0, 1, inf, z)` with `Im z > 0`.
pub fn ideal_tet_volume(z0: ComplexPoint, z1: ComplexPoint, z2: ComplexPoint, z3: ComplexPoint) -> Result<f64> {
    let w = cross_ratio(z3, z1, z0, z2)?;
    Ok(shape_volume(w))
}
