//! Floating-point cross-checks of the exact tables against the closed-form
//! Poisson kernels, their moment integrals and the associated sine series.
//!
//! Nothing in the exact pipeline depends on this module.

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::basis::Width;
use crate::dirichlet::{basis_u, f_formal};
use crate::error::{Error, Result};
use crate::polyring::MultiIndex;

/// Absolute bound on the neglected tail `|t| > T` of every improper integral.
pub const TAIL_BOUND: f64 = 1e-12;

/// Acceptance tolerances for the cross-checks.
pub mod tolerance {
    /// Moment integrals against `f_{2m}`, relative.
    pub const MOMENT_REL: f64 = 1e-6;
    /// `m = 0` moment against `y/a`, absolute.
    pub const MOMENT_ZERO_ABS: f64 = 1e-10;
    /// Fourth moment at the worked point, absolute.
    pub const MOMENT_WORKED_ABS: f64 = 1e-8;
    /// Three-dimensional `(4,2,2)` moment against `f_8/35`, absolute.
    pub const MOMENT_3D_ABS: f64 = 1e-5;
    /// Alternating sine series, absolute.
    pub const SERIES_ALT_ABS: f64 = 1e-10;
    /// Non-alternating sine series, absolute.
    pub const SERIES_ABS: f64 = 1e-9;
    /// Convolution of `(x - t)^k` with the kernel against `u_k`, absolute.
    pub const CONVOLUTION_ABS: f64 = 1e-6;
    /// Dimension recurrence by central differences, absolute.
    pub const RECURRENCE_ABS: f64 = 1e-5;
    /// Kernel normalization against `y/a`, absolute.
    pub const NORMALIZATION_ABS: f64 = 1e-8;
    /// Three-dimensional kernel normalization, absolute.
    pub const NORMALIZATION_3D_ABS: f64 = 1e-6;
    /// Removable singularity of the three-dimensional kernel, absolute.
    pub const ORIGIN_LIMIT_ABS: f64 = 1e-8;
}

fn check_strip(y: f64, a: f64) -> Result<()> {
    if !(a > 0.0 && y > 0.0 && y < a) {
        return Err(Error::Domain(format!(
            "need 0 < y < a, got y = {y}, a = {a}"
        )));
    }
    Ok(())
}

/// `sin(πy/a) / (cosh(πx/a) + sign cos(πy/a))`, written in `e^{-π|x|/a}` to
/// stay finite for large `|x|`.
fn sine_over_cosh(x: f64, y: f64, a: f64, sign: f64) -> f64 {
    let e = (-PI * x.abs() / a).exp();
    let (s, c) = (PI * y / a).sin_cos();
    2.0 * e * s / (1.0 + e * e + 2.0 * sign * c * e)
}

/// Poisson kernel of the layer in one dimension,
/// `(1/2a) sin(πy/a) / (cosh(πx/a) + cos(πy/a))`.
pub fn poisson_kernel_1d(x: f64, y: f64, a: f64) -> Result<f64> {
    check_strip(y, a)?;
    Ok(sine_over_cosh(x, y, a, 1.0) / (2.0 * a))
}

/// Poisson kernel of the layer in three dimensions,
/// `(1/4a²) sin(πy/a) sinh(πr/a) / (r (cosh(πr/a) + cos(πy/a))²)`.
pub fn poisson_kernel_3d(r: f64, y: f64, a: f64) -> Result<f64> {
    check_strip(y, a)?;
    if r <= 0.0 {
        return Err(Error::Domain(format!("need r > 0, got {r}")));
    }
    let u = PI * r / a;
    let e = (-u).exp();
    let (s, c) = (PI * y / a).sin_cos();
    // sinh u / (cosh u + c)^2 = 2e (1 - e^2) / (1 + e^2 + 2ce)^2
    let ratio = 2.0 * e * (-(-2.0 * u).exp_m1()) / (1.0 + e * e + 2.0 * c * e).powi(2);
    Ok(s * ratio / (4.0 * a * a * r))
}

/// `lim_{r -> 0} P_3(r, y) = (π/4a³) sin(πy/a) / (1 + cos(πy/a))²`.
pub fn poisson_kernel_3d_origin(y: f64, a: f64) -> Result<f64> {
    check_strip(y, a)?;
    let (s, c) = (PI * y / a).sin_cos();
    Ok(PI / (4.0 * a.powi(3)) * s / (1.0 + c).powi(2))
}

/// `P_3(r, y)` from `-(1/2πr) ∂P_1/∂r` with a central difference of step `h`.
pub fn kernel_3d_by_recurrence(r: f64, y: f64, a: f64, h: f64) -> Result<f64> {
    let forward = poisson_kernel_1d(r + h, y, a)?;
    let backward = poisson_kernel_1d(r - h, y, a)?;
    Ok(-(forward - backward) / (2.0 * h) / (2.0 * PI * r))
}

const MAX_DEPTH: u32 = 24;

/// Tanh-sinh on each panel, bisecting panels whose error estimate is too large.
fn adaptive<F: Fn(f64) -> f64 + Copy>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    fn go<F: Fn(f64) -> f64 + Copy>(f: F, lo: f64, hi: f64, tol: f64, depth: u32) -> Result<f64> {
        let out = quadrature::integrate(f, lo, hi, tol);
        // below this the estimate is roundoff, not truncation
        let floor = 64.0 * f64::EPSILON * out.integral.abs();
        if out.error_estimate <= tol.max(floor) {
            return Ok(out.integral);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::Quadrature {
                estimate: out.error_estimate,
                target: tol,
            });
        }
        let mid = 0.5 * (lo + hi);
        Ok(go(f, lo, mid, 0.5 * tol, depth + 1)? + go(f, mid, hi, 0.5 * tol, depth + 1)?)
    }
    go(f, lo, hi, tol, 0)
}

/// Smallest `T` (in steps of `a`) with `∫_T^∞ t^p e^{-πt/a} dt` scaled by
/// `weight` below [`TAIL_BOUND`]. For `T >= 2pa/π` the tail integral is at
/// most `2 (a/π) T^p e^{-πT/a}`.
fn cutoff(power: u32, a: f64, weight: f64) -> f64 {
    let p = f64::from(power);
    let mut t = (2.0 * p * a / PI).max(2.0 * a);
    while weight * 2.0 * (a / PI) * t.powf(p) * (-PI * t / a).exp() > TAIL_BOUND {
        t += a;
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MomentKind {
    /// `cosh + cos` denominator; equals `f_{2m}(y)` for `-a < y < a`.
    Plus,
    /// `cosh - cos` denominator; equals `f_{2m}(a - y)` for `0 < y < 2a`.
    Minus,
}

/// `(1/2a) ∫ x^{2m} sin(πy/a) / (cosh(πx/a) ± cos(πy/a)) dx` over the real line.
pub fn moment_integral(m: u32, y: f64, a: f64, kind: MomentKind) -> Result<f64> {
    let (sign, ok) = match kind {
        MomentKind::Plus => (1.0, -a < y && y < a),
        MomentKind::Minus => (-1.0, 0.0 < y && y < 2.0 * a),
    };
    if !(a > 0.0 && ok) {
        return Err(Error::Domain(format!(
            "y = {y} outside the {kind:?} range for a = {a}"
        )));
    }
    // denominator >= e^{π|x|/a}/4 once π|x|/a >= 2
    let weight = 4.0 / a;
    let t = cutoff(2 * m, a, weight).max(2.0 * a / PI * 2.0);
    let f = move |x: f64| x.powi(2 * m as i32) * sine_over_cosh(x, y, a, sign) / (2.0 * a);
    // even integrand
    Ok(2.0 * adaptive(f, 0.0, t, TAIL_BOUND)?)
}

fn gamma_half(k: u32) -> f64 {
    // Γ(k + 1/2) = (2k)! / (4^k k!) √π
    (1..=k).fold(PI.sqrt(), |acc, i| acc * (f64::from(i) - 0.5))
}

/// `∫_{R^3} x^{2m} P_3(|x|, y) dx` by radial quadrature; the angular factor
/// `∫_{S^2} ω^{2m} dω = 2 Π Γ(m_i + 1/2) / Γ(|m| + 3/2)` is exact.
pub fn moment_integral_3d(m: &MultiIndex, y: f64, a: f64) -> Result<f64> {
    check_strip(y, a)?;
    if m.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: m.len(),
        });
    }
    let total = m.degree();
    let angular = 2.0
        * m.as_slice()
            .iter()
            .map(|&mi| gamma_half(mi))
            .product::<f64>()
        / gamma_half(total + 1);
    let radial_power = (2 * total + 2) as i32;
    let weight = angular / (a * a);
    let t = cutoff(2 * total + 1, a, weight);
    let f = move |r: f64| {
        if r <= 0.0 {
            0.0
        } else {
            r.powi(radial_power) * poisson_kernel_3d(r, y, a).unwrap_or(0.0)
        }
    };
    Ok(angular * adaptive(f, 0.0, t, TAIL_BOUND)?)
}

/// `∫_{R^3} P_3(|x|, y) dx`.
pub fn kernel_3d_mass(y: f64, a: f64) -> Result<f64> {
    moment_integral_3d(&MultiIndex::zero(3), y, a)
}

/// Partial sum `sum_{k=1}^{terms} (±1)^{k-1} sin(πky/a) / k^{2m+1}`.
pub fn trig_series_sum(m: u32, y: f64, a: f64, alternating: bool, terms: u32) -> f64 {
    let p = 2 * m as i32 + 1;
    // smallest terms first
    (1..=terms)
        .rev()
        .map(|k| {
            let kf = f64::from(k);
            let sign = if alternating && k % 2 == 0 { -1.0 } else { 1.0 };
            sign * (PI * kf * y / a).sin() / kf.powi(p)
        })
        .sum()
}

/// `π^{2m+1} / (2 (2m)! a^{2m}) f_{2m}(y)`, or at `a - y` for the plain series.
pub fn trig_series_closed_form(m: u32, y: f64, a: f64, alternating: bool) -> f64 {
    let f = f_formal(m as usize);
    let at = if alternating { y } else { a - y };
    let fact: f64 = (1..=2 * m).map(f64::from).product();
    PI.powi(2 * m as i32 + 1) / (2.0 * fact * a.powi(2 * m as i32)) * f.eval_f64(&[at, a])
}

/// `∫ (x - t)^k P_1(t, y) dt`, which equals `u_k(x, y)`.
pub fn convolution_check(k: u32, x: f64, y: f64, a: f64) -> Result<f64> {
    check_strip(y, a)?;
    // (x - t)^k <= 2^k max(|x|, |t|)^k
    let weight = 2f64.powi(k as i32) * 2.0 / a;
    let t = cutoff(k, a, weight).max(x.abs() + 2.0 * a);
    let f = move |s: f64| (x - s).powi(k as i32) * sine_over_cosh(s, y, a, 1.0) / (2.0 * a);
    Ok(adaptive(f, -t, 0.0, 0.5 * TAIL_BOUND)? + adaptive(f, 0.0, t, 0.5 * TAIL_BOUND)?)
}

/// Exact `u_k(x, y)` for `n = 1`, evaluated in floating point.
pub fn basis_u_value(k: u32, x: f64, y: f64, a: f64) -> f64 {
    let u = basis_u(&MultiIndex::from([k]), 1, &Width::Formal).expect("valid multi-index");
    u.eval_f64(&[x, y, a])
}

/// `f_{2m}(y)` for the given width, in floating point.
pub fn f_value(m: u32, y: f64, a: f64) -> f64 {
    f_formal(m as usize).eval_f64(&[y, a])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub numeric: f64,
    pub reference: f64,
    pub error: f64,
    pub tolerance: f64,
    pub relative: bool,
    pub passed: bool,
}

impl CheckResult {
    fn absolute(name: String, numeric: f64, reference: f64, tolerance: f64) -> Self {
        let error = (numeric - reference).abs();
        CheckResult {
            name,
            numeric,
            reference,
            error,
            tolerance,
            relative: false,
            passed: error <= tolerance,
        }
    }

    fn relative(name: String, numeric: f64, reference: f64, tolerance: f64) -> Self {
        let error = (numeric - reference).abs() / reference.abs().max(f64::MIN_POSITIVE);
        CheckResult {
            name,
            numeric,
            reference,
            error,
            tolerance,
            relative: true,
            passed: error <= tolerance,
        }
    }

    fn failed(name: String, tolerance: f64, err: &Error) -> Self {
        CheckResult {
            name: format!("{name} ({err})"),
            numeric: f64::NAN,
            reference: f64::NAN,
            error: f64::INFINITY,
            tolerance,
            relative: false,
            passed: false,
        }
    }
}

fn record(
    out: &mut Vec<CheckResult>,
    name: String,
    tolerance: f64,
    relative: bool,
    numeric: Result<f64>,
    reference: f64,
) {
    out.push(match numeric {
        Ok(v) if relative => CheckResult::relative(name, v, reference, tolerance),
        Ok(v) => CheckResult::absolute(name, v, reference, tolerance),
        Err(e) => CheckResult::failed(name, tolerance, &e),
    });
}

/// Seed of the sample points used by [`moment_checks`].
pub const SAMPLE_SEED: u64 = 0x5eed_1a7e;

/// `moment_integral` against `f_{2m}` for `m <= max_m` at `points` random
/// `(y, a)` with `a ∈ [1/2, 3]`, `y ∈ [0.1a, 0.9a]`.
pub fn moment_checks(max_m: u32, points: usize) -> Vec<CheckResult> {
    let mut rng = StdRng::seed_from_u64(SAMPLE_SEED);
    let mut out = Vec::new();
    for _ in 0..points {
        let a = rng.gen_range(0.5..3.0);
        let y = a * rng.gen_range(0.1..0.9);
        for m in 0..=max_m {
            record(
                &mut out,
                format!("moment m={m} y={y:.4} a={a:.4}"),
                tolerance::MOMENT_REL,
                true,
                moment_integral(m, y, a, MomentKind::Plus),
                f_value(m, y, a),
            );
            record(
                &mut out,
                format!("mirrored moment m={m} y={y:.4} a={a:.4}"),
                tolerance::MOMENT_REL,
                true,
                moment_integral(m, y, a, MomentKind::Minus),
                f_value(m, a - y, a),
            );
        }
    }
    out
}

/// The two sine-series examples at `m = 2`, `a = π`, `y = 1`, with 10⁴ terms.
pub fn series_checks() -> Vec<CheckResult> {
    let y: f64 = 1.0;
    let pi2 = PI * PI;
    let alt_closed = y / 720.0 * (3.0 * y.powi(4) - 10.0 * pi2 * y * y + 7.0 * pi2 * pi2);
    let plain_closed = y * (PI - y) / 720.0
        * (3.0 * y.powi(3) - 12.0 * PI * y * y + 8.0 * pi2 * y + 8.0 * pi2 * PI);
    let alt = trig_series_sum(2, y, PI, true, 10_000);
    let plain = trig_series_sum(2, y, PI, false, 10_000);
    vec![
        CheckResult::absolute(
            "alternating sine series m=2 a=pi y=1".into(),
            alt,
            alt_closed,
            tolerance::SERIES_ALT_ABS,
        ),
        CheckResult::absolute(
            "alternating sine series via f_4".into(),
            alt,
            trig_series_closed_form(2, y, PI, true),
            tolerance::SERIES_ALT_ABS,
        ),
        CheckResult::absolute(
            "sine series m=2 a=pi y=1".into(),
            plain,
            plain_closed,
            tolerance::SERIES_ABS,
        ),
        CheckResult::absolute(
            "sine series via f_4(a-y)".into(),
            plain,
            trig_series_closed_form(2, y, PI, false),
            tolerance::SERIES_ABS,
        ),
    ]
}

/// Fixed sample points `(k, x, y, a)` for the convolution check.
pub const CONVOLUTION_POINTS: [(u32, f64, f64, f64); 10] = [
    (3, 0.7, 0.4, 1.0),
    (0, 0.3, 0.25, 1.0),
    (5, 1.2, 0.9, 2.0),
    (1, -0.8, 0.5, 1.0),
    (2, 0.0, 0.6, 1.5),
    (4, -1.1, 0.2, 0.5),
    (6, 0.5, 1.7, 3.0),
    (3, 2.0, 0.1, 0.75),
    (7, -0.4, 1.1, 2.5),
    (8, 0.9, 0.35, 1.0),
];

pub fn convolution_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &(k, x, y, a) in &CONVOLUTION_POINTS {
        record(
            &mut out,
            format!("convolution k={k} x={x} y={y} a={a}"),
            tolerance::CONVOLUTION_ABS,
            false,
            convolution_check(k, x, y, a),
            basis_u_value(k, x, y, a),
        );
    }
    out
}

/// `P_3` against the finite-difference recurrence from `P_1`.
pub fn recurrence_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &a in &[1.0, 2.0] {
        for &yf in &[0.2, 0.5, 0.8] {
            for &r in &[0.1, 0.5, 1.0, 2.0] {
                let y = yf * a;
                let h = 1e-4 * a;
                record(
                    &mut out,
                    format!("recurrence r={r} y={y} a={a}"),
                    tolerance::RECURRENCE_ABS,
                    false,
                    kernel_3d_by_recurrence(r, y, a, h),
                    poisson_kernel_3d(r, y, a).unwrap_or(f64::NAN),
                );
            }
        }
    }
    out
}

/// Normalization of both kernels, the `r -> 0` limit of `P_3`, the worked
/// moment examples, and the three-dimensional `(4,2,2)` moment.
pub fn kernel_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let a = 1.0;
    for i in 1..=9 {
        let y = f64::from(i) * 0.1 * a;
        record(
            &mut out,
            format!("kernel mass n=1 y={y:.1}"),
            tolerance::NORMALIZATION_ABS,
            false,
            moment_integral(0, y, a, MomentKind::Plus),
            y / a,
        );
    }
    for &y in &[0.3, 0.5, 0.7] {
        record(
            &mut out,
            format!("kernel mass n=3 y={y}"),
            tolerance::NORMALIZATION_3D_ABS,
            false,
            kernel_3d_mass(y, a),
            y / a,
        );
        record(
            &mut out,
            format!("kernel n=3 origin limit y={y}"),
            tolerance::ORIGIN_LIMIT_ABS,
            false,
            poisson_kernel_3d(1e-6, y, a),
            poisson_kernel_3d_origin(y, a).unwrap_or(f64::NAN),
        );
    }
    let y: f64 = 0.4;
    record(
        &mut out,
        "fourth moment y=0.4 a=1".into(),
        tolerance::MOMENT_WORKED_ABS,
        false,
        moment_integral(2, y, 1.0, MomentKind::Plus),
        y / 15.0 * (3.0 * y.powi(4) - 10.0 * y * y + 7.0),
    );
    record(
        &mut out,
        "moment (4,2,2) n=3 y=0.5 a=1".into(),
        tolerance::MOMENT_3D_ABS,
        false,
        moment_integral_3d(&MultiIndex::from([2, 1, 1]), 0.5, 1.0),
        f_value(4, 0.5, 1.0) / 35.0,
    );
    out
}

/// Every cross-check, in a fixed order.
pub fn run_all() -> Vec<CheckResult> {
    let mut out = kernel_checks();
    out.extend(moment_checks(4, 20));
    out.extend(series_checks());
    out.extend(convolution_checks());
    out.extend(recurrence_checks());
    out
}
