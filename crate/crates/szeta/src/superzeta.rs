//! The Mellin-type zeta functions over the nontrivial zeros: M_alpha(s) by
//! direct pair summation, the explicit formula for alpha > 1, the entire
//! Hankel-contour function E_alpha, the Hurwitz reduction, and the
//! alpha = 1/2 cross-identity with G.

use crate::error::{Error, Result};
use crate::g_function::{EvalResult, GEvaluator, Method};
use crate::numeric::{gauss16_c, int_pow_log_tail, pow_neg_s};
use crate::specfun::{hurwitz_zeta, log_deriv_zeta_fd, mangoldt_1e6, recip_gamma, von_mangoldt_upto, zeta_em};
use crate::zero_data::ZeroTable;
use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;
const TWO_PI: f64 = std::f64::consts::TAU;

/// Parameters of the alpha-shifted zero sum: the shift alpha > -2 and the
/// contour offset epsilon < 2 + alpha.
#[derive(Debug, Clone, Copy)]
pub struct SuperZetaParams {
    pub alpha: f64,
    pub epsilon: f64,
}

impl SuperZetaParams {
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_epsilon(alpha, 0.25_f64.min((2.0 + alpha) / 4.0))
    }

    pub fn with_epsilon(alpha: f64, epsilon: f64) -> Result<Self> {
        if !(alpha > -2.0 && alpha.is_finite()) {
            return Err(Error::Domain(format!(
                "superzeta shift needs alpha > -2, got {alpha}"
            )));
        }
        if !(epsilon > 0.0 && epsilon < 2.0 + alpha) {
            return Err(Error::Domain(format!(
                "contour offset needs 0 < epsilon < 2 + alpha, got {epsilon}"
            )));
        }
        Ok(SuperZetaParams { alpha, epsilon })
    }
}

/// (alpha - w)^{-s} with log(alpha - w) real for real w < alpha; the branch
/// cut sits along w in [alpha, +inf), i.e. the principal logarithm of the
/// shifted argument.
#[inline]
pub fn shifted_pow(z: Complex64, s: Complex64) -> Complex64 {
    (-s * z.ln()).exp()
}

/// M_alpha(s) = sum over zero pairs rho = 1/2 +- i gamma of (alpha-rho)^{-s},
/// with a density-based estimate of the part of the sum beyond the table.
pub fn m_alpha_direct(table: &ZeroTable, s: Complex64, params: &SuperZetaParams) -> Result<EvalResult> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "the direct zero sum needs Re s > 1, got {s}"
        )));
    }
    let d = params.alpha - 0.5;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let mut max_arg = 0.0_f64;
    for &g in table.ordinates() {
        let lo = Complex64::new(d, -g).ln();
        let hi = Complex64::new(d, g).ln();
        max_arg = max_arg.max(lo.im.abs()).max(hi.im.abs());
        let a = (-s * lo).exp();
        let b = (-s * hi).exp();
        sum += a + b;
        mag += a.norm() + b.norm();
    }
    let h = table.ceiling();
    // zeros beyond H, by the counting-density main term; the argument of
    // alpha - rho approaches +-pi/2, bounded away from the cut
    let arg_bound = PI / 2.0 + d.abs() / h;
    let factor = (s.im.abs() * arg_bound).exp();
    let c = Complex64::new(s.re, 0.0);
    let tail = factor / PI
        * (int_pow_log_tail(h, c, 1).re - TWO_PI.ln() * int_pow_log_tail(h, c, 0).re);
    let warning = if max_arg > PI - 1e-3 {
        Some(format!(
            "BranchWarning: a summand's argument reached {max_arg:.6}, within 1e-3 of the cut"
        ))
    } else {
        None
    };
    Ok(EvalResult {
        value: sum,
        abs_error: tail + 1e-15 * mag * (table.len() as f64).sqrt(),
        method: Method::Direct,
        warning,
    })
}

/// The explicit formula for alpha > 1:
/// (alpha-1)^{-s} - (1/Gamma(s)) sum_n Lambda(n) (log n)^{s-1} n^{-alpha}
/// - 2^{-s} zeta(s, alpha/2 + 1).
pub fn zeta_alpha_explicit(s: Complex64, alpha: f64, prime_limit: u64) -> Result<EvalResult> {
    if !(alpha > 1.0) {
        return Err(Error::Domain(format!(
            "the explicit formula needs alpha > 1, got {alpha}"
        )));
    }
    if prime_limit < 10_000 {
        return Err(Error::Domain(format!(
            "prime_limit must be at least 1e4, got {prime_limit}"
        )));
    }
    let rg = recip_gamma(s)?;
    let built;
    let mangoldt = if prime_limit <= 1_000_000 {
        mangoldt_1e6()
    } else {
        built = von_mangoldt_upto(prime_limit)?;
        &built
    };
    let mut lam_sum = Complex64::new(0.0, 0.0);
    for &(n, lp) in &mangoldt.entries {
        if n > prime_limit {
            break;
        }
        let lnn = (n as f64).ln();
        // (log n)^{s-1} with the real logarithm of log n
        lam_sum += lp * ((s - 1.0) * lnn.ln()).exp() * (n as f64).powf(-alpha);
    }
    let hur = hurwitz_zeta(s, alpha / 2.0 + 1.0)?;
    let value = pow_neg_s(alpha - 1.0, s) - rg * lam_sum - pow_neg_s(2.0, s) * hur;
    // tail: Lambda(n) (log n)^{sigma - 1} <= (log n)^m for an integer
    // envelope exponent m, then the closed-form log-power integral
    let m = s.re.max(0.0).ceil() as u32;
    let nf = prime_limit as f64;
    let tail = rg.norm() * int_pow_log_tail(nf, Complex64::new(alpha, 0.0), m).re;
    Ok(EvalResult {
        value,
        abs_error: 2.0 * tail + 1e-13 * (1.0 + value.norm()),
        method: Method::ExplicitFormula,
        warning: None,
    })
}

/// Quadrature layout for the Hankel contour: horizontal legs truncated at
/// Re w = w_max, split into Gauss panels of the given width.
#[derive(Debug, Clone, Copy)]
pub struct ContourSpec {
    pub panel: f64,
    pub w_max: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            panel: 0.5,
            w_max: 40.0,
        }
    }
}

/// (1/2 pi i) times the integral of f along the truncated Hankel contour:
/// in from w_max below the real axis at -i eps, clockwise around
/// c = min(1, alpha) on a semicircle of radius eps, back out above at +i eps.
fn contour_integral<F: FnMut(Complex64) -> Result<Complex64>>(
    params: &SuperZetaParams,
    spec: &ContourSpec,
    f: &mut F,
) -> Result<Complex64> {
    let c = params.alpha.min(1.0);
    let eps = params.epsilon;
    let mut total = Complex64::new(0.0, 0.0);
    // legs, oriented from c out to w_max; the lower leg is traversed the
    // other way, hence the sign
    let panels = ((spec.w_max - c) / spec.panel).ceil() as usize;
    let h = (spec.w_max - c) / panels as f64;
    for p in 0..panels {
        let a = c + p as f64 * h;
        let mut lower = Complex64::new(0.0, 0.0);
        let mut upper = Complex64::new(0.0, 0.0);
        let mut err: Result<()> = Ok(());
        let v = gauss16_c(a, a + h, |u| match f(Complex64::new(u, -eps)) {
            Ok(v) => v,
            Err(e) => {
                err = Err(e);
                Complex64::new(0.0, 0.0)
            }
        });
        lower += v;
        let v = gauss16_c(a, a + h, |u| match f(Complex64::new(u, eps)) {
            Ok(v) => v,
            Err(e) => {
                err = Err(e);
                Complex64::new(0.0, 0.0)
            }
        });
        upper += v;
        err?;
        total += upper - lower;
    }
    // semicircle w = c + eps e^{i phi}, traversed from phi = -pi/2 down to
    // -3pi/2 (through the left of c): integrate increasing and negate
    let arc_panels = (PI / spec.panel).ceil().max(4.0) as usize;
    let ah = PI / arc_panels as f64;
    for p in 0..arc_panels {
        let a = -1.5 * PI + p as f64 * ah;
        let mut err: Result<()> = Ok(());
        let v = gauss16_c(a, a + ah, |phi| {
            let e = Complex64::new(0.0, phi).exp();
            let w = c + eps * e;
            match f(w) {
                Ok(v) => v * Complex64::new(0.0, eps) * e,
                Err(e2) => {
                    err = Err(e2);
                    Complex64::new(0.0, 0.0)
                }
            }
        });
        err?;
        total -= v;
    }
    Ok(total / Complex64::new(0.0, TWO_PI))
}

/// E_alpha(s): the Hankel-contour integral of (zeta'/zeta)(w) (alpha-w)^{-s}.
///
/// The error estimate combines a half-width re-quadrature with the analytic
/// truncation tail from the geometric decay of zeta'/zeta to the right.
pub fn e_alpha_contour(s: Complex64, params: &SuperZetaParams, spec: &ContourSpec) -> Result<EvalResult> {
    if !(spec.panel > 0.0 && spec.w_max > params.alpha.min(1.0) + 1.0) {
        return Err(Error::Domain(format!(
            "contour spec needs positive panels and w_max beyond the loop, got {spec:?}"
        )));
    }
    let alpha = params.alpha;
    let mut integrand = |w: Complex64| -> Result<Complex64> {
        let z = zeta_em(w)?;
        if z.norm() < 1e-4 {
            return Err(Error::Contour(format!(
                "contour point {w} lies within 1e-4 of a zero of zeta"
            )));
        }
        let ld = log_deriv_zeta_fd(w).map_err(|e| match e {
            Error::NearSingularity(msg) => Error::Contour(msg),
            other => other,
        })?;
        Ok(ld * shifted_pow(alpha - w, s))
    };
    let coarse = contour_integral(params, spec, &mut integrand)?;
    let fine_spec = ContourSpec {
        panel: spec.panel / 2.0,
        w_max: spec.w_max,
    };
    let fine = contour_integral(params, &fine_spec, &mut integrand)?;
    // beyond w_max, |zeta'/zeta| < 1.5 log2 * 2^{-u} and the kernel modulus
    // is |alpha - w|^{-Re s} e^{|Im s| pi}
    let growth = if s.re >= 0.0 {
        (spec.w_max - alpha).powf(-s.re)
    } else {
        (spec.w_max + alpha.abs() + 1.0).powf(-s.re)
    };
    let tail = 3.0 / PI * (PI * s.im.abs()).exp() * (2.0_f64).powf(-spec.w_max) * growth;
    Ok(EvalResult {
        value: fine,
        abs_error: (fine - coarse).norm() + tail + 1e-13 * (1.0 + fine.norm()),
        method: Method::HankelContour,
        warning: None,
    })
}

/// Both sides of the contour kernel identity for a single prime power:
/// lhs = (1/2 pi i) int n^{-w} (alpha-w)^{-s} dw over the Hankel contour,
/// rhs = -(log n)^{s-1} / (n^alpha Gamma(s)).
pub fn kernel_integral_check(
    n: u64,
    s: Complex64,
    params: &SuperZetaParams,
    spec: &ContourSpec,
) -> Result<(Complex64, Complex64)> {
    if n < 2 {
        return Err(Error::Domain(format!("kernel check needs n >= 2, got {n}")));
    }
    if !(params.alpha > 1.0) {
        return Err(Error::Domain(format!(
            "kernel check needs alpha > 1, got {}",
            params.alpha
        )));
    }
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!(
            "kernel check needs Re s > 0, got {s}"
        )));
    }
    let alpha = params.alpha;
    let nf = n as f64;
    let mut integrand =
        |w: Complex64| -> Result<Complex64> { Ok((-w * nf.ln()).exp() * shifted_pow(alpha - w, s)) };
    // the closed form on the right belongs to the opposite traversal of the
    // loop from the one that reproduces the explicit formula for E_alpha;
    // the kernel identity is stated for that traversal, hence the sign
    let lhs = -contour_integral(params, spec, &mut integrand)?;
    let rhs = -((s - 1.0) * nf.ln().ln()).exp() * nf.powf(-alpha) * recip_gamma(s)?;
    Ok((lhs, rhs))
}

/// |M_{1/2}(s) - 2 cos(pi s / 2) G(s)|: the alpha = 1/2 identity residual
/// on RH-verified data.
pub fn half_identity_residual(ev: &GEvaluator, s: Complex64) -> Result<f64> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "the half identity needs Re s > 1, got {s}"
        )));
    }
    let params = SuperZetaParams::new(0.5)?;
    let m = m_alpha_direct(ev.table(), s, &params)?;
    let g = ev.g_eval(s)?;
    Ok((m.value - 2.0 * (s * PI / 2.0).cos() * g.value).norm())
}
