//! The dimensionless integrand functions g±(s), their subtracted forms and
//! the sinc weight.
//!
//! ```text
//! g±(s) = (1/s³ ± cosh s/sinh³ s)² + sinh² s/cosh⁶ s
//!         ± 2s (sinh s/cosh³ s) (s² − 3π²/4)/(s² + π²/4)³
//! ```
//!
//! Everything is assembled from `u(s) = cosh s/sinh³ s − 1/s³`, which is odd
//! and analytic for |s| < π. Near the origin `u` comes from its Taylor series
//! (`scripts/taylor_coefficients.py`), so the 1/s³ cancellation never happens
//! in floating point. For s > 1 the hyperbolic ratios are written in terms
//! of e^{−2s}, which neither overflows nor loses digits.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Below this |s| the integrands are assembled from the series form.
pub const S0: f64 = 0.1;

/// Below this |s| `u` is taken from its Taylor series.
const U_SERIES_MAX: f64 = 1.0;

/// Taylor coefficients of u(s), odd powers s¹ … s³⁹.
const U_SERIES: [f64; 20] = [
    -0.066666666666666666667,
    0.021164021164021164021,
    -0.0044444444444444444444,
    0.00076960076960076960077,
    -0.00011904223544435184647,
    0.000017102239324461546684,
    -0.0000023325339229478663030,
    3.0610671262860230282E-7,
    -3.8996808559852632701E-8,
    4.8523508457905510603E-9,
    -5.9231618254156956417E-10,
    7.1163052200700962885E-11,
    -8.4360797819910048689E-12,
    9.8868933358484477048E-13,
    -1.1473264941005014738E-13,
    1.3199827223204587141E-14,
    -1.5071328792656777248E-15,
    1.7092636722082306883E-16,
    -1.9268739076961719729E-17,
    2.1604747496206117100E-18,
];

/// Coefficient of s² in g₋ at small s: 96/π⁴ + 226/225.
pub fn g_minus_c2() -> f64 {
    96.0 / PI.powi(4) + 226.0 / 225.0
}

/// Laurent coefficients of g₊ at the origin, powers s⁻⁶, s⁻⁴, s⁻², s⁰, s².
pub fn g_plus_laurent() -> [f64; 5] {
    [4.0, 0.0, -4.0 / 15.0, 16.0 / 189.0, 74.0 / 75.0 - 96.0 / PI.powi(4)]
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegrandError {
    #[error("g+ has a pole at s = 0")]
    Pole,
    #[error("argument is not finite: {0}")]
    NonFinite(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GKind {
    Plus,
    Minus,
}

impl GKind {
    pub fn sign(self) -> f64 {
        match self {
            GKind::Plus => 1.0,
            GKind::Minus => -1.0,
        }
    }
}

// Horner in s² over U_SERIES starting at index `from`, times s^(2·from+1).
fn u_series_from(s: f64, from: usize) -> f64 {
    let s2 = s * s;
    let mut acc = 0.0;
    for c in U_SERIES[from..].iter().rev() {
        acc = acc * s2 + c;
    }
    acc * s.powi(2 * from as i32 + 1)
}

/// cosh s / sinh³ s for s > 0.
fn csh3(s: f64) -> f64 {
    if s > 1.0 {
        let x = (-2.0 * s).exp();
        4.0 * (-2.0 * s).exp() * (1.0 + x) / (1.0 - x).powi(3)
    } else {
        s.cosh() / s.sinh().powi(3)
    }
}

/// sinh s / cosh³ s, odd.
fn sch3(s: f64) -> f64 {
    let a = s.abs();
    let v = if a > 1.0 {
        let x = (-2.0 * a).exp();
        4.0 * (-2.0 * a).exp() * (1.0 - x) / (1.0 + x).powi(3)
    } else {
        a.sinh() / a.cosh().powi(3)
    };
    v.copysign(s)
}

/// (s² − 3π²/4)/(s² + π²/4)³.
fn rat(s: f64) -> f64 {
    let s2 = s * s;
    (s2 - 0.75 * PI * PI) / (s2 + 0.25 * PI * PI).powi(3)
}

/// u(s) = cosh s/sinh³ s − 1/s³ for s > 0.
fn u(s: f64) -> f64 {
    if s < U_SERIES_MAX {
        u_series_from(s, 0)
    } else {
        csh3(s) - 1.0 / (s * s * s)
    }
}

/// Terms shared by both kinds: sinh²/cosh⁶ and ±2s·sinh/cosh³·rat.
fn common(s: f64, sign: f64) -> f64 {
    let t = sch3(s);
    t * t + sign * 2.0 * s * t * rat(s)
}

fn check(s: f64) -> Result<f64, IntegrandError> {
    if s.is_finite() {
        Ok(s.abs())
    } else {
        Err(IntegrandError::NonFinite(s))
    }
}

/// g±(s). Even in s; g₊ has a 4/s⁶ pole at the origin.
pub fn g(s: f64, kind: GKind) -> Result<f64, IntegrandError> {
    let s = check(s)?;
    match kind {
        GKind::Plus => {
            if s == 0.0 {
                return Err(IntegrandError::Pole);
            }
            if s < S0 {
                Ok(4.0 / s.powi(6) + g_plus_subtracted(s))
            } else {
                let a = 1.0 / (s * s * s) + csh3(s);
                Ok(a * a + common(s, 1.0))
            }
        }
        GKind::Minus => Ok(g_minus(s)),
    }
}

/// g₊(s). Panics at s = 0; use [`g`] for a checked call.
pub fn g_plus(s: f64) -> f64 {
    g(s, GKind::Plus).expect("g_plus evaluated at its pole")
}

/// g₋(s), finite everywhere and O(s²) at the origin.
pub fn g_minus(s: f64) -> f64 {
    let s = s.abs();
    if s == 0.0 {
        return 0.0;
    }
    let v = u(s);
    v * v + common(s, -1.0)
}

/// g₊(s) − 4/s⁶, which behaves as −4/(15 s²) at the origin.
pub fn g_plus_subtracted(s: f64) -> f64 {
    let s = s.abs();
    if s < U_SERIES_MAX {
        g_plus_regular(s) - 4.0 / (15.0 * s * s)
    } else {
        let v = u(s);
        4.0 * v / (s * s * s) + v * v + common(s, 1.0)
    }
}

/// g₊(s) − 4/s⁶ + 4/(15 s²), finite at the origin (value 16/189).
pub fn g_plus_regular(s: f64) -> f64 {
    let s = s.abs();
    if s == 0.0 {
        return 16.0 / 189.0;
    }
    if s < U_SERIES_MAX {
        // (u + s/15)/s³ straight from the series, no cancellation
        let w = u_series_from(s, 1) / (s * s * s);
        let v = u_series_from(s, 0);
        4.0 * w + v * v + common(s, 1.0)
    } else {
        g_plus_subtracted(s) + 4.0 / (15.0 * s * s)
    }
}

/// e^{2s}·(g±(s) − 1/s⁶) for s ≥ 1, evaluated without subtraction.
///
/// The bracket decays like e^{−2s}; the scaled form stays O(s) and lets
/// callers multiply by growing weights without overflow.
pub fn g_tail_scaled(s: f64, kind: GKind) -> f64 {
    let s = s.abs();
    let sg = kind.sign();
    let x = (-2.0 * s).exp();
    let (p, m) = (1.0 + x, 1.0 - x);
    sg * 8.0 * p / (m.powi(3) * s.powi(3))
        + 16.0 * x * (p * p / m.powi(6) + m * m / p.powi(6))
        + sg * 8.0 * s * m / p.powi(3) * rat(s)
}

/// g±(s) − 1/s⁶ for any s > 0.
pub fn g_minus_inverse_sixth(s: f64, kind: GKind) -> f64 {
    let s = s.abs();
    if s >= 1.0 {
        (-2.0 * s).exp() * g_tail_scaled(s, kind)
    } else {
        match kind {
            GKind::Plus => g_plus_subtracted(s) + 3.0 / s.powi(6),
            GKind::Minus => g_minus(s) - 1.0 / s.powi(6),
        }
    }
}

/// g± at complex argument, by the direct formula. Intended for contour
/// integrals around the poles at s = inπ/2, away from the origin.
pub fn g_complex(z: Complex64, kind: GKind) -> Complex64 {
    let sg = kind.sign();
    let (sh, ch) = (z.sinh(), z.cosh());
    let z2 = z * z;
    let q = PI * PI;
    let r = (z2 - 0.75 * q) / (z2 + 0.25 * q).powi(3);
    let a = z.powi(-3) + sg * ch / sh.powi(3);
    a * a + sh * sh / ch.powi(6) + sg * 2.0 * z * sh / ch.powi(3) * r
}

/// g₊(z) − 4/z⁶ at complex argument.
pub fn g_plus_subtracted_complex(z: Complex64) -> Complex64 {
    g_complex(z, GKind::Plus) - 4.0 * z.powi(-6)
}

/// Dimensionless weight frequency a = 2√|Q²|·H/π.
pub fn weight_frequency(q2: f64, h: f64) -> f64 {
    2.0 * q2.abs().sqrt() * h / PI
}

/// sin x / x, with a series near the origin.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// sinh x / x, with a series near the origin.
pub fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sinh() / x
    }
}

/// The kernel weight: sin x/x for Q² > 0, sinh x'/x' for Q² < 0, 1 on the
/// light cone, with x = 2√|Q²|·H·s/π.
pub fn sinc_weight(q2: f64, h: f64, s: f64) -> f64 {
    let x = weight_frequency(q2, h) * s;
    if q2 > 0.0 {
        sinc(x)
    } else if q2 < 0.0 {
        sinhc(x)
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    fn naive(s: f64, sign: f64) -> f64 {
        let a = 1.0 / s.powi(3) + sign * s.cosh() / s.sinh().powi(3);
        a * a
            + s.sinh().powi(2) / s.cosh().powi(6)
            + sign * 2.0 * s * s.sinh() / s.cosh().powi(3) * rat(s)
    }

    #[test]
    fn plus_pole_is_an_error() {
        assert_eq!(g(0.0, GKind::Plus), Err(IntegrandError::Pole));
        assert_eq!(g(0.0, GKind::Minus), Ok(0.0));
        assert!(g(f64::NAN, GKind::Minus).is_err());
    }

    #[test]
    fn minus_is_order_s_squared() {
        for s in [1e-3, 1e-2, 3e-2] {
            let r = g_minus(s) / (s * s);
            assert!(rel(r, g_minus_c2()) < 4.0 * s * s, "s={s} r={r}");
        }
    }

    #[test]
    fn plus_leading_pole() {
        for s in [1e-3f64, 1e-2] {
            assert!((s.powi(6) * g_plus(s) - 4.0).abs() < s * s);
        }
    }

    #[test]
    fn inverse_sixth_tail() {
        for s in [20.0f64, 40.0] {
            assert!((s.powi(6) * g_minus(s) - 1.0).abs() < 1e-6);
            assert!((s.powi(6) * g_plus(s) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn subtracted_matches_definition_at_one() {
        let s = 1.0;
        assert!((g_plus_subtracted(s) - g_plus(s) + 4.0).abs() < 1e-14);
    }

    #[test]
    fn subtracted_decays_exponentially() {
        // at s = 10 the remainder is −3/s⁶ plus an e^{−20} correction
        let v = g_plus_subtracted(10.0);
        assert!(v.abs() < 1e-5);
        assert!((v + 3e-6).abs() < 1e-6);
        let t = g_minus_inverse_sixth(10.0, GKind::Plus);
        assert!(t.abs() < 1e-6);
    }

    #[test]
    fn regular_value_at_origin() {
        assert!((g_plus_regular(1e-8) - 16.0 / 189.0).abs() < 1e-14);
        let s = 1e-3;
        let l = g_plus_laurent();
        assert!((g_plus_regular(s) - l[3] - l[4] * s * s).abs() < 1e-10);
    }

    #[test]
    fn series_guard_continuity() {
        for s in [S0, U_SERIES_MAX] {
            for (kind, sign) in [(GKind::Plus, 1.0), (GKind::Minus, -1.0)] {
                let series = g(s * (1.0 - 1e-15), kind).unwrap();
                let direct = naive(s, sign);
                assert!(rel(series, direct) < 1e-10, "{kind:?} s={s}");
            }
            let below = g_plus_subtracted(s * (1.0 - 1e-15));
            let above = g_plus_subtracted(s * (1.0 + 1e-15));
            assert!(rel(below, above) < 1e-10);
        }
    }

    #[test]
    fn tail_form_matches_direct() {
        for s in [1.0, 1.5, 3.0, 8.0] {
            for (kind, sign) in [(GKind::Plus, 1.0), (GKind::Minus, -1.0)] {
                let direct = (naive(s, sign) - 1.0 / s.powi(6)) * (2.0 * s).exp();
                assert!(rel(g_tail_scaled(s, kind), direct) < 1e-9, "{kind:?} s={s}");
            }
        }
        // finite far out, where the direct form would overflow
        assert!(g_tail_scaled(400.0, GKind::Plus).is_finite());
    }

    #[test]
    fn complex_matches_real_axis() {
        for s in [0.3, 1.0, 2.5] {
            let z = Complex64::new(s, 0.0);
            assert!(rel(g_complex(z, GKind::Plus).re, g_plus(s)) < 1e-12);
            assert!(rel(g_complex(z, GKind::Minus).re, g_minus(s)) < 1e-9);
        }
    }

    #[test]
    fn weight_examples() {
        assert_eq!(sinc_weight(0.0, 1.0, 3.7), 1.0);
        for q2 in [-4.0, 0.0, 2.5] {
            assert_eq!(sinc_weight(q2, 0.7, 0.0), 1.0);
        }
        let h = 1.3;
        let q2 = -(PI / (2.0 * h)).powi(2);
        for s in [0.5, 2.0] {
            assert!(rel(sinc_weight(q2, h, s), s.sinh() / s) < 1e-14);
        }
        let eps = 1e-10;
        assert!((sinc_weight(eps, 1.0, 1.0) - sinc_weight(-eps, 1.0, 1.0)).abs() < 10.0 * eps);
    }

    #[test]
    fn evenness() {
        let mut s = S0;
        while s <= 50.0 {
            for kind in [GKind::Plus, GKind::Minus] {
                assert_eq!(g(s, kind), g(-s, kind));
            }
            s += 0.37;
        }
    }
}
