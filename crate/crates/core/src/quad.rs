//! Adaptive quadrature, semi-infinite and oscillatory tails, series
//! acceleration and numerical residues.
//!
//! The finite-interval rule is a 7/15-point Gauss–Kronrod pair with global
//! adaptive bisection. Semi-infinite ranges are mapped onto [0, 1) with
//! `s = a + L·t/(1 − t)`; integrands carrying a sinc weight are instead cut
//! at the zeros of the weight and the partial sums extrapolated with Wynn's
//! epsilon algorithm. Residues come from the trapezoidal rule on a circle.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use thiserror::Error;

/// Deepest bisection level allowed for any subinterval.
pub const MAX_DEPTH: u32 = 60;
/// Upper bound on subintervals held by one adaptive integration.
pub const MAX_INTERVALS: usize = 4000;
/// Upper bound on weight zeros visited by the oscillatory tail.
pub const MAX_SEGMENTS: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("integrand is not finite at x = {0}")]
    NonFinite(f64),
    #[error("residue at {z0} depends on the radius: {small} (r = {r_small}) vs {large} (r = {r_large})")]
    PoleIsolation {
        z0: Complex64,
        r_small: f64,
        r_large: f64,
        small: Complex64,
        large: Complex64,
    },
    #[error("contour rule at {z0} did not settle with {points} points")]
    ContourNonConvergence { z0: Complex64, points: usize },
}

/// Result of an integration. `converged` is only set when the error estimate
/// meets the requested tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadResult {
    fn zero() -> Self {
        Self { value: 0.0, abs_error_estimate: 0.0, evaluations: 0, converged: true }
    }

    /// Sum of two independent pieces of one integral.
    pub fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn scale(self, c: f64) -> QuadResult {
        QuadResult {
            value: self.value * c,
            abs_error_estimate: self.abs_error_estimate * c.abs(),
            ..self
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    depth: u32,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

// One Gauss–Kronrod 7/15 panel; error estimate as in QUADPACK's qk15.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64), QuadError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadError::NonFinite(x))
        }
    };
    let fc = eval(c)?;
    let mut rk = fc * WGK[7];
    let mut rg = fc * WG[3];
    let mut rabs = rk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, f2) = (eval(c - dx)?, eval(c + dx)?);
        fv1[j] = f1;
        fv2[j] = f2;
        rk += WGK[j] * (f1 + f2);
        rabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            rg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * rk;
    let mut rasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        rasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let (rk, rasc, rabs) = (rk * h, rasc * h.abs(), rabs * h.abs());
    let mut err = (rk - rg * h).abs();
    if rasc != 0.0 && err != 0.0 {
        err = rasc * (200.0 * err / rasc).powf(1.5).min(1.0);
    }
    if rabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * rabs);
    }
    Ok((rk, err))
}

fn check_tol(rel_tol: f64, abs_tol: f64) -> Result<(), QuadError> {
    if !(rel_tol > 0.0) {
        return Err(QuadError::InvalidTolerance(rel_tol));
    }
    if !(abs_tol >= 0.0) {
        return Err(QuadError::InvalidTolerance(abs_tol));
    }
    if rel_tol == 0.0 && abs_tol == 0.0 {
        return Err(QuadError::InvalidTolerance(0.0));
    }
    Ok(())
}

/// Adaptive integral of `f` over [a, b].
///
/// Converged when the summed local error estimates fall below
/// `max(abs_tol, rel_tol·|value|)`. Running out of subdivisions returns the
/// best estimate with `converged = false`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult, QuadError> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadError::InvalidInterval { a, b });
    }
    check_tol(rel_tol, abs_tol)?;
    let (v, e) = gk15(&f, a, b)?;
    let mut evals = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value: v, err: e, depth: 0 });
    // pieces that hit MAX_DEPTH are parked here and never split again
    let mut frozen_val = 0.0;
    let mut frozen_err = 0.0;
    let (mut total, mut err) = (v, e);
    while err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= MAX_INTERVALS {
            break;
        }
        let Some(p) = heap.pop() else { break };
        if p.depth >= MAX_DEPTH {
            frozen_val += p.value;
            frozen_err += p.err;
            continue;
        }
        let m = 0.5 * (p.a + p.b);
        let (v1, e1) = gk15(&f, p.a, m)?;
        let (v2, e2) = gk15(&f, m, p.b)?;
        evals += 30;
        heap.push(Piece { a: p.a, b: m, value: v1, err: e1, depth: p.depth + 1 });
        heap.push(Piece { a: m, b: p.b, value: v2, err: e2, depth: p.depth + 1 });
        // re-summing keeps the totals free of accumulated drift
        total = frozen_val + heap.iter().map(|p| p.value).sum::<f64>();
        err = frozen_err + heap.iter().map(|p| p.err).sum::<f64>();
    }
    Ok(QuadResult {
        value: total,
        abs_error_estimate: err,
        evaluations: evals,
        converged: err <= abs_tol.max(rel_tol * total.abs()),
    })
}

/// Integral of `f` over (a, ∞) for integrands that decay at least like a
/// power of s, via `s = a + L·t/(1 − t)` with `L = decay_scale`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    decay_scale: f64,
    rel_tol: f64,
) -> Result<QuadResult, QuadError> {
    integrate_semi_infinite_abs(f, a, decay_scale, rel_tol, 0.0)
}

/// [`integrate_semi_infinite`] with an absolute tolerance as well.
pub fn integrate_semi_infinite_abs<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    decay_scale: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult, QuadError> {
    if !a.is_finite() || !(decay_scale > 0.0) {
        return Err(QuadError::InvalidInterval { a, b: f64::INFINITY });
    }
    let l = decay_scale;
    let g = |t: f64| {
        let d = 1.0 - t;
        let s = a + l * t / d;
        if !s.is_finite() {
            return 0.0;
        }
        let v = f(s);
        if v == 0.0 {
            0.0
        } else {
            v * l / (d * d)
        }
    };
    integrate(g, 0.0, 1.0, rel_tol, abs_tol)
}

/// Integral over (a, ∞) of an integrand whose weight vanishes at the points
/// `k·zero_spacing`, k = 1, 2, …. The range is cut at those zeros and the
/// partial sums are extrapolated with [`wynn_epsilon`] once the segment
/// contributions alternate in sign.
pub fn integrate_semi_infinite_oscillatory<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    zero_spacing: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult, QuadError> {
    if !a.is_finite() || !(zero_spacing > 0.0) {
        return Err(QuadError::InvalidInterval { a, b: f64::INFINITY });
    }
    check_tol(rel_tol, abs_tol)?;
    let mut k = (a / zero_spacing).floor() + 1.0;
    let mut left = a;
    let mut acc = QuadResult::zero();
    let mut partial: Vec<f64> = Vec::new();
    let mut terms: Vec<f64> = Vec::new();
    let mut last_est: Option<f64> = None;
    let mut hits = 0;
    // each segment gets a slice of the overall budget
    let seg_abs = 0.05 * abs_tol;
    for _ in 0..MAX_SEGMENTS {
        let right = k * zero_spacing;
        k += 1.0;
        if right <= left {
            continue;
        }
        let seg_tol = seg_abs.max(1e-3 * rel_tol * acc.value.abs());
        let r = integrate(&f, left, right, 0.1 * rel_tol, seg_tol.max(1e-300))?;
        acc = acc.combine(r);
        left = right;
        partial.push(acc.value);
        terms.push(r.value);
        let n = terms.len();
        if r.value == 0.0 && n > 4 && terms[n - 4..].iter().all(|t| *t == 0.0) {
            return Ok(QuadResult { converged: acc.converged, ..acc });
        }
        if n < 6 {
            continue;
        }
        let alternating = terms[n - 5..]
            .windows(2)
            .all(|w| w[0] * w[1] < 0.0 && w[1].abs() <= 1.5 * w[0].abs());
        let tiny = r.value.abs() <= 1e-3 * rel_tol * acc.value.abs().max(abs_tol / rel_tol);
        if !(alternating || tiny) {
            hits = 0;
            last_est = None;
            continue;
        }
        let window = &partial[n.saturating_sub(24)..];
        let est = if tiny { acc.value } else { wynn_epsilon(window) };
        if let Some(prev) = last_est {
            let diff = (est - prev).abs();
            if diff <= abs_tol.max(rel_tol * est.abs()) || tiny {
                hits += 1;
                if hits >= 2 || tiny {
                    return Ok(QuadResult {
                        value: est,
                        abs_error_estimate: acc.abs_error_estimate + diff,
                        evaluations: acc.evaluations,
                        converged: acc.converged,
                    });
                }
            } else {
                hits = 0;
            }
        }
        last_est = Some(est);
    }
    let est = last_est.unwrap_or(acc.value);
    Ok(QuadResult {
        value: est,
        abs_error_estimate: acc.abs_error_estimate + (est - acc.value).abs(),
        evaluations: acc.evaluations,
        converged: false,
    })
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums; returns
/// the highest even-order estimate available.
pub fn wynn_epsilon(seq: &[f64]) -> f64 {
    let n = seq.len();
    if n == 0 {
        return 0.0;
    }
    if n < 3 {
        return seq[n - 1];
    }
    // e_prev = ε_{k-1}, e_cur = ε_k, column by column
    let mut e_prev = vec![0.0; n + 1];
    let mut e_cur: Vec<f64> = seq.to_vec();
    let mut best = seq[n - 1];
    let mut k = 0;
    while e_cur.len() > 1 {
        let m = e_cur.len() - 1;
        let mut next = Vec::with_capacity(m);
        for j in 0..m {
            let d = e_cur[j + 1] - e_cur[j];
            if d == 0.0 || !d.is_finite() {
                return best;
            }
            next.push(e_prev[j + 1] + 1.0 / d);
        }
        k += 1;
        e_prev = e_cur;
        e_cur = next;
        if k % 2 == 0 {
            let v = e_cur[e_cur.len() - 1];
            if !v.is_finite() {
                return best;
            }
            best = v;
        }
    }
    best
}

/// Euler transform of an alternating series Σ (−1)^k b_k given the
/// magnitudes b_k (with the sign of the first term carried by `b[0]`).
pub fn euler_alternating(b: &[f64]) -> f64 {
    let mut diffs: Vec<f64> = b.to_vec();
    let mut sum = 0.0;
    let mut scale = 0.5;
    while !diffs.is_empty() {
        sum += scale * diffs[0];
        diffs = diffs.windows(2).map(|w| w[0] - w[1]).collect();
        scale *= 0.5;
    }
    sum
}

// (1/2πi) ∮ f dz over |z − z0| = r with n equally spaced nodes.
fn circle_trapezoid<F: Fn(Complex64) -> Complex64>(
    f: &F,
    z0: Complex64,
    r: f64,
    n: usize,
) -> (Complex64, f64) {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut peak: f64 = 0.0;
    for j in 0..n {
        let th = 2.0 * PI * (j as f64 + 0.5) / n as f64;
        let w = Complex64::from_polar(r, th);
        let t = f(z0 + w) * w;
        peak = peak.max(t.norm());
        sum += t;
    }
    (sum / n as f64, peak)
}

fn contour<F: Fn(Complex64) -> Complex64>(
    f: &F,
    z0: Complex64,
    r: f64,
    n0: usize,
) -> Result<(Complex64, f64), QuadError> {
    let mut n = n0;
    let (mut prev, _) = circle_trapezoid(f, z0, r, n);
    while n < 1 << 16 {
        n *= 2;
        let (cur, peak) = circle_trapezoid(f, z0, r, n);
        if !(cur.re.is_finite() && cur.im.is_finite()) {
            break;
        }
        let floor = 1e-14 * peak;
        if (cur - prev).norm() <= 1e-10 * cur.norm() + floor {
            return Ok((cur, floor));
        }
        prev = cur;
    }
    Err(QuadError::ContourNonConvergence { z0, points: n })
}

/// Residue of `f` at `z0` from the trapezoidal rule on the circle
/// |z − z0| = radius, cross-checked on a circle of half the radius.
///
/// `radius` must be smaller than the distance to the nearest other
/// singularity; a radius-dependent answer is reported as
/// [`QuadError::PoleIsolation`].
pub fn residue_numeric<F: Fn(Complex64) -> Complex64>(
    f: F,
    z0: Complex64,
    pole_order_hint: usize,
    radius: f64,
) -> Result<Complex64, QuadError> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(QuadError::InvalidInterval { a: 0.0, b: radius });
    }
    let n0 = (4 * pole_order_hint).max(16).next_power_of_two();
    let (large, fl_l) = contour(&f, z0, radius, n0)?;
    let (small, fl_s) = contour(&f, z0, 0.5 * radius, n0)?;
    let tol = 1e-8 * large.norm().max(small.norm()) + 10.0 * fl_l.max(fl_s);
    if (large - small).norm() > tol {
        return Err(QuadError::PoleIsolation {
            z0,
            r_small: 0.5 * radius,
            r_large: radius,
            small,
            large,
        });
    }
    Ok(large)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrands::g_plus_subtracted;

    const B_REF: f64 = -0.452_447_7;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| x * x, 0.0, 1.0, 1e-12, 0.0).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-14);
        assert!(r.converged);
    }

    #[test]
    fn sine_over_half_period() {
        let r = integrate(f64::sin, 0.0, PI, 1e-12, 0.0).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn exponential_tail() {
        let r = integrate_semi_infinite(|s: f64| (-s).exp(), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-11);
        assert!(r.converged);
    }

    #[test]
    fn subtracted_second_moment() {
        let r = integrate_semi_infinite(|s| s * s * g_plus_subtracted(s), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - B_REF).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn dirichlet_integral() {
        let head = integrate(crate::integrands::sinc, 0.0, PI, 1e-13, 0.0).unwrap();
        let tail =
            integrate_semi_infinite_oscillatory(|s: f64| s.sin() / s, PI, PI, 1e-12, 1e-14).unwrap();
        let v = head.value + tail.value;
        assert!((v - PI / 2.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(integrate(|x| x, 1.0, 0.0, 1e-8, 0.0), Err(QuadError::InvalidInterval { .. })));
        assert!(integrate(|x| x, 0.0, 1.0, 0.0, 0.0).is_err());
        assert!(matches!(integrate(|x| 1.0 / (x - 0.5), 0.0, 1.0, 1e-8, 0.0), Err(QuadError::NonFinite(_))));
    }

    #[test]
    fn non_convergence_is_reported() {
        // 1/√x style singularity with an absurd tolerance
        let r = integrate(|x: f64| x.powf(-0.99), 0.0, 1.0, 1e-15, 0.0);
        match r {
            Ok(r) => assert!(!r.converged),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn wynn_sums_alternating_harmonic() {
        let mut s = 0.0;
        let partial: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert!((wynn_epsilon(&partial) - 2f64.ln()).abs() < 1e-10);
        let b: Vec<f64> = (1..=40).map(|k| 1.0 / k as f64).collect();
        assert!((euler_alternating(&b) - 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn residue_simple_pole() {
        let r = residue_numeric(|z| 1.0 / z, Complex64::new(0.0, 0.0), 1, 0.5).unwrap();
        assert!((r - 1.0).norm() < 1e-13);
    }

    #[test]
    fn residue_double_pole() {
        let r = residue_numeric(|z| z.exp() / (z * z), Complex64::new(0.0, 0.0), 2, 0.7).unwrap();
        assert!((r - 1.0).norm() < 1e-12);
    }

    #[test]
    fn residue_inverse_sinh_cubed() {
        // 1/sinh³ z at iπ: sinh(iπ + w) = −sinh w, and
        // 1/sinh³ w = w⁻³ − w⁻¹/2 + …, so the residue is +1/2
        let z0 = Complex64::new(0.0, PI);
        let r = residue_numeric(|z| z.sinh().powi(-3), z0, 3, 1.0).unwrap();
        assert!((r - 0.5).norm() < 1e-11, "{r}");
    }

    #[test]
    fn residue_radius_independent() {
        let z0 = Complex64::new(0.0, PI / 2.0);
        let f = |z: Complex64| (Complex64::i() * 1.3 * z).exp() * z.cosh().powi(-3) / z;
        let a = residue_numeric(f, z0, 3, 0.7).unwrap();
        let b = residue_numeric(f, z0, 3, 0.35).unwrap();
        assert!((a - b).norm() <= 1e-8 * a.norm());
    }

    #[test]
    fn pole_isolation_detected() {
        // a second pole at 0.6 sits between the two circles
        let f = |z: Complex64| 1.0 / (z * (z - 0.6));
        let e = residue_numeric(f, Complex64::new(0.0, 0.0), 1, 1.0).unwrap_err();
        assert!(matches!(e, QuadError::PoleIsolation { .. }));
    }

    #[test]
    fn contour_converges_geometrically() {
        let f = |z: Complex64| z.exp() / z.powi(3);
        let z0 = Complex64::new(0.0, 0.0);
        let exact = 0.5;
        let errs: Vec<f64> = [4usize, 8, 16]
            .iter()
            .map(|&n| (circle_trapezoid(&f, z0, 1.0, n).0 - exact).norm())
            .collect();
        // error shrinks by far more than the factor 4 of a second-order rule
        assert!(errs[1] < errs[0] / 100.0, "{errs:?}");
        assert!(errs[2] < errs[1] / 1e4 || errs[2] < 1e-15, "{errs:?}");
    }

    #[test]
    fn error_estimates_are_conservative() {
        type Case = (Box<dyn Fn(f64) -> f64>, f64, f64, f64);
        let cases: Vec<Case> = vec![
            (Box::new(|x: f64| x.exp()), 0.0, 1.0, 1f64.exp() - 1.0),
            (Box::new(|x: f64| x.sqrt()), 0.0, 1.0, 2.0 / 3.0),
            (Box::new(|x: f64| 1.0 / (1.0 + x * x)), 0.0, 1.0, PI / 4.0),
            (Box::new(|x: f64| x.ln()), 1e-300, 1.0, -1.0),
            (Box::new(|x: f64| x.cos()), 0.0, PI / 2.0, 1.0),
            (Box::new(|x: f64| 1.0 / x.sqrt()), 1e-300, 1.0, 2.0),
            (Box::new(|x: f64| x.powi(5)), -1.0, 2.0, (64.0 - 1.0) / 6.0),
            (Box::new(|x: f64| (10.0 * x).sin()), 0.0, PI, (1.0 - (10.0 * PI).cos()) / 10.0),
            (Box::new(|x: f64| (-x * x).exp()), -5.0, 5.0, PI.sqrt() * libm_erf5()),
            (Box::new(|x: f64| x.abs()), -1.0, 2.0, 2.5),
            (Box::new(|x: f64| 1.0 / (1.0 + 25.0 * x * x)), -1.0, 1.0, 0.4 * 5f64.atan()),
            (Box::new(|x: f64| x * x.exp()), 0.0, 1.0, 1.0),
            (Box::new(|x: f64| x.sin().powi(2)), 0.0, PI, PI / 2.0),
            (Box::new(|x: f64| 1.0 / x), 1.0, 10.0, 10f64.ln()),
            (Box::new(|x: f64| x.powf(1.5)), 0.0, 1.0, 0.4),
            (Box::new(|x: f64| (50.0 * x).cos()), 0.0, 1.0, 50f64.sin() / 50.0),
            (Box::new(|x: f64| x.cosh()), -2.0, 2.0, 2.0 * 2f64.sinh()),
            (Box::new(|x: f64| (1.0 - x * x).sqrt()), -1.0, 1.0, PI / 2.0),
            (Box::new(|x: f64| x.ln().powi(2)), 1e-300, 1.0, 2.0),
            (Box::new(|x: f64| 1.0 / (x * x + 1e-4)), -1.0, 1.0, 200.0 * 100f64.atan()),
        ];
        assert_eq!(cases.len(), 20);
        let mut ok = 0;
        for tol in [1e-4, 1e-8] {
            for (f, a, b, exact) in &cases {
                let r = integrate(f, *a, *b, tol, 0.0).unwrap();
                if (r.value - exact).abs() <= r.abs_error_estimate {
                    ok += 1;
                }
            }
        }
        assert!(ok as f64 >= 0.95 * 40.0, "only {ok}/40 conservative");
    }

    // erf(5) to double precision
    fn libm_erf5() -> f64 {
        0.999_999_999_998_462_5
    }
}
