//! Evaluation of G(s) = sum over zero ordinates of gamma^{-s}: direct
//! summation on the right of the abscissa of convergence, the remainder
//! formula down to Re s > 0, and the twice-integrated continuation down to
//! Re s > -1, all with explicit error budgets.
//!
//! The workhorse identity: between analysis points the counting function
//! satisfies N(x) = main(x) + 7/8 + F(x) with F = S + f, so every integral
//! of F splits into an exact ordinate sum (the N part), an elementary
//! closed form (the main part), and series/bounded tails beyond the table.
//! No step function is ever quadratured.

use crate::error::{Error, Result};
use crate::numeric::{gauss16_c, int_pow_log, int_pow_log_tail, pow_neg_s, LN_2PI, TWO_PI};
use crate::smooth_terms::{f_any, main_term, theta_coeff, SIntegrals};
use crate::specfun::c_tilde1;
use crate::zero_data::ZeroTable;
use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    RemainderFormula,
    Continuation,
    ExplicitFormula,
    HankelContour,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::RemainderFormula => "remainder_formula",
            Method::Continuation => "continuation",
            Method::ExplicitFormula => "explicit_formula",
            Method::HankelContour => "hankel_contour",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_error: f64,
    pub method: Method,
    pub warning: Option<String>,
}

/// The constant term of the continuation at its integral representation:
/// integrating the main term density from 1 gives
/// 1/(2pi(s-1)^2) - log(2pi)/(2pi(s-1)) - (1+log 2pi)/(2pi), and the 7/8
/// jump contributes 7/8.
pub fn main_term_constant() -> f64 {
    0.875 - (1.0 + LN_2PI) / TWO_PI
}

/// Evaluator over a fixed zero table: caches logs, inverse square roots,
/// and the exact prefix integrals of S.
pub struct GEvaluator<'a> {
    table: &'a ZeroTable,
    pub sint: SIntegrals,
    ln_g: Vec<f64>,
    rsqrt_g: Vec<f64>,
    c1t: f64,
    c1t_err: f64,
}

impl<'a> GEvaluator<'a> {
    pub fn new(table: &'a ZeroTable) -> Self {
        let sint = SIntegrals::new(table);
        let ln_g: Vec<f64> = table.ordinates().iter().map(|g| g.ln()).collect();
        let rsqrt_g: Vec<f64> = table.ordinates().iter().map(|g| 1.0 / g.sqrt()).collect();
        let (c1t, c1t_err) = c_tilde1();
        GEvaluator {
            table,
            sint,
            ln_g,
            rsqrt_g,
            c1t,
            c1t_err,
        }
    }

    pub fn table(&self) -> &ZeroTable {
        self.table
    }

    fn h(&self) -> f64 {
        self.table.ceiling()
    }

    /// Sum of gamma^{-s} over an index range, with a cached fast path on
    /// the critical line. Returns (value, sum of term magnitudes).
    fn sum_range(&self, s: Complex64, r: std::ops::Range<usize>) -> (Complex64, f64) {
        let t = s.im;
        let (mut re, mut im, mut mag) = (0.0, 0.0, 0.0);
        if s.re == 0.5 {
            for i in r {
                let (sn, cs) = (t * self.ln_g[i]).sin_cos();
                let a = self.rsqrt_g[i];
                re += a * cs;
                im -= a * sn;
                mag += a;
            }
        } else {
            let sigma = s.re;
            for i in r {
                let lg = self.ln_g[i];
                let a = (-sigma * lg).exp();
                let (sn, cs) = (t * lg).sin_cos();
                re += a * cs;
                im -= a * sn;
                mag += a;
            }
        }
        (Complex64::new(re, im), mag)
    }

    /// Partial sum over gamma <= X.
    pub fn g_partial(&self, s: Complex64, x: f64) -> Result<Complex64> {
        let n = self.table.count_upto(x)?;
        Ok(self.sum_range(s, 0..n).0)
    }

    /// s * int_a^inf x^{-s-1} f(x) dx via the asymptotic series, a >= 10.
    fn s_int_f_tail(&self, s: Complex64, a: f64) -> (Complex64, f64) {
        let mut v = Complex64::new(0.0, 0.0);
        let pa = pow_neg_s(a, s);
        for j in 1..=4u32 {
            let aj = theta_coeff(j as usize) / PI;
            v += aj * pa * a.powi(1 - 2 * j as i32) / (s + (2.0 * j as f64 - 1.0));
        }
        v *= s;
        // truncation: next coefficient, generous factor 2
        let err = 2.0 * s.norm() * theta_coeff(5) / PI * a.powf(-s.re - 9.0) / (s.re + 9.0);
        (v, err)
    }

    /// s * int_H^inf x^{-s-1} S(x) dx: double integration by parts with
    /// exact boundary integrals of S, an exact linear main term from the
    /// second iterated integral, and an envelope bound on what remains.
    fn s_tail_beyond_h(&self, s: Complex64) -> (Complex64, f64) {
        let h = self.h();
        let t1h = self.sint.t1_h();
        let t2h = self.sint.t2_h();
        let lh = h.ln();
        let llh = lh.ln();
        let ph1 = pow_neg_s(h, s + 1.0);
        let ph2 = pow_neg_s(h, s + 2.0);
        // K = int_H^inf x^{-s-3} T2(x) dx with T2 = S2~ - c1t*x - 1/8
        let k_main = -self.c1t * ph1 / (s + 1.0) - 0.125 * ph2 / (s + 2.0);
        let k_err = 2.0 / (llh * llh * llh)
            * int_pow_log_tail(h, Complex64::new(s.re + 3.0, 0.0), 1).re
            + 0.25 * h.powf(-s.re - 2.0) / (s.re + 2.0)
            + self.c1t_err * h.powf(-s.re - 1.0) / (s.re + 1.0);
        let j = -ph2 * t2h + (s + 2.0) * k_main;
        let i = -ph1 * t1h + (s + 1.0) * j;
        let err = s.norm() * (s + 1.0).norm() * (s + 2.0).norm() * k_err;
        (s * i, err)
    }

    /// s * int_a^inf x^{-s-1} F(x) dx for 1 <= a <= H, F = N - main - 7/8.
    pub(crate) fn s_int_big_f(&self, s: Complex64, a: f64) -> Result<(Complex64, f64)> {
        let h = self.h();
        let hs = pow_neg_s(h, s);
        let asx = pow_neg_s(a, s);
        let na = self.table.count_upto(a)? as f64;
        let r = self.table.index_range(a, h);
        let nterms = r.len();
        // s int_a^H N x^{-s-1} = sum_{gamma in (a,H]} (gamma^{-s} - H^{-s}) + N(a)(a^{-s} - H^{-s})
        let (zsum, zmag) = self.sum_range(s, r);
        let n_part = zsum - hs * nterms as f64 + na * (asx - hs);
        // s int_a^H (main + 7/8) x^{-s-1}
        let main_part = s / TWO_PI
            * (int_pow_log(a, h, s, 1) - (LN_2PI + 1.0) * int_pow_log(a, h, s, 0))
            + 0.875 * (asx - hs);
        let (f_tail, f_err) = self.s_int_f_tail(s, h);
        let (s_tail, s_err) = self.s_tail_beyond_h(s);
        let rounding = 1e-15
            * (zmag + (nterms as f64 + na) * hs.norm() + na * asx.norm())
            * (nterms as f64).sqrt().max(8.0);
        Ok((n_part - main_part + f_tail + s_tail, f_err + s_err + rounding))
    }

    /// The remainder term at cut X (no preconditions beyond 100 <= X <= H).
    fn r_core(&self, s: Complex64, x: f64) -> Result<(Complex64, f64)> {
        let x1s = pow_neg_s(x, s - 1.0);
        let a_term = x1s * (x / TWO_PI).ln() / (TWO_PI * (s - 1.0));
        let b_term = x1s / (TWO_PI * (s - 1.0) * (s - 1.0));
        let f_x = self.table.count_upto(x)? as f64 - main_term(x) - 0.875;
        let (intg, err) = self.s_int_big_f(s, x)?;
        Ok((a_term + b_term - pow_neg_s(x, s) * f_x + intg, err))
    }

    /// R(s) of the remainder formula at cut X.
    pub fn r_remainder(&self, s: Complex64, x: f64) -> Result<EvalResult> {
        if s.re <= 0.0 {
            return Err(Error::Domain(format!(
                "r_remainder needs Re s > 0, got {s}"
            )));
        }
        if (s - 1.0).norm() < 1e-12 {
            return Err(Error::Pole("r_remainder at s = 1".into()));
        }
        if !(100.0 <= x && 2.0 * x <= self.h()) {
            return Err(Error::Domain(format!(
                "r_remainder cut needs 100 <= X <= H/2, got X = {x}"
            )));
        }
        let (value, abs_error) = self.r_core(s, x)?;
        Ok(EvalResult {
            value,
            abs_error,
            method: Method::RemainderFormula,
            warning: None,
        })
    }

    /// G(s) with automatic method choice.
    pub fn g_eval(&self, s: Complex64) -> Result<EvalResult> {
        if (s - 1.0).norm() <= 1e-3 {
            return Err(Error::Pole(format!(
                "g_eval excluded within 1e-3 of the pole at 1 (s = {s})"
            )));
        }
        if s.re <= -1.0 {
            return Err(Error::Domain(format!(
                "g_eval continuation reaches only Re s > -1, got {s}"
            )));
        }
        if s.re > 1.0 {
            let (sum, mag) = self.sum_range(s, 0..self.table.len());
            let (r, err) = self.r_core(s, self.h())?;
            return Ok(EvalResult {
                value: sum + r,
                abs_error: err + 1e-15 * mag * (self.table.len() as f64).sqrt(),
                method: Method::Direct,
                warning: None,
            });
        }
        if s.re > 0.0 {
            let x = (self.h() / 2.0).min(s.im.abs().max(100.0));
            let partial = self.g_partial(s, x)?;
            let (r, err) = self.r_core(s, x)?;
            return Ok(EvalResult {
                value: partial + r,
                abs_error: err,
                method: Method::RemainderFormula,
                warning: None,
            });
        }
        self.g_eval_continued(s)
    }

    /// The twice-integrated continuation, valid for Re s > -1.
    pub fn g_eval_continued(&self, s: Complex64) -> Result<EvalResult> {
        if s.re <= -1.0 {
            return Err(Error::Domain(format!(
                "continuation reaches only Re s > -1, got {s}"
            )));
        }
        if (s - 1.0).norm() <= 1e-3 {
            return Err(Error::Pole(format!("pole neighborhood at s = 1 ({s})")));
        }
        let h = self.h();
        let sm1 = s - 1.0;
        let principal = 1.0 / (TWO_PI * sm1 * sm1) - LN_2PI / (TWO_PI * sm1);
        // int_1^inf f(x) x^{-s-1} dx: quadrature on [1,10), series beyond
        let om = s.im.abs();
        let panels = (9.0_f64).max(om * (10.0_f64).ln() / 1.5).ceil() as usize;
        let step = 9.0 / panels as f64;
        let mut f_int = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let a = 1.0 + p as f64 * step;
            f_int += gauss16_c(a, a + step, |x| f_any(x) * pow_neg_s(x, s + 1.0));
        }
        let mut f_tail = Complex64::new(0.0, 0.0);
        for j in 1..=4u32 {
            let aj = theta_coeff(j as usize) / PI;
            f_tail += aj * pow_neg_s(10.0, s) * 10.0_f64.powi(1 - 2 * j as i32)
                / (s + (2.0 * j as f64 - 1.0));
        }
        let f_trunc = 2.0 * theta_coeff(5) / PI * 10.0_f64.powf(-s.re - 9.0) / (s.re + 9.0);
        // int_1^inf T1(x) x^{-s-2} dx with T1(x) = int_1^x S
        let t1_1 = self.sint.t1_at(1.0);
        let t10_part = self.sint.integrate_t10_pow(s);
        // tail of int T1_0 x^{-s-2} beyond H, and the constant-offset part
        let t2h = self.sint.t2_h();
        let ph1 = pow_neg_s(h, s + 1.0);
        let ph2 = pow_neg_s(h, s + 2.0);
        let lh = h.ln();
        let llh = lh.ln();
        let k_main = -self.c1t * ph1 / (s + 1.0) - 0.125 * ph2 / (s + 2.0);
        let k_err = 2.0 / (llh * llh * llh)
            * int_pow_log_tail(h, Complex64::new(s.re + 3.0, 0.0), 1).re
            + 0.25 * h.powf(-s.re - 2.0) / (s.re + 2.0)
            + self.c1t_err * h.powf(-s.re - 1.0) / (s.re + 1.0);
        let j_tail = -ph2 * t2h + (s + 2.0) * k_main;
        // int_1^inf T1 x^{-s-2} = int_1^H T1_0 x^{-s-2} + tail(T1_0) - T1_0(1)/(s+1)
        let t1_int = t10_part + j_tail - t1_1 / (s + 1.0);
        let value = principal + main_term_constant() + s * (f_int + f_tail)
            + s * (s + 1.0) * t1_int;
        let abs_error = s.norm() * f_trunc
            + s.norm() * (s + 1.0).norm() * (s + 2.0).norm() * k_err
            + 1e-12 * (1.0 + s.norm_sqr());
        Ok(EvalResult {
            value,
            abs_error,
            method: Method::Continuation,
            warning: None,
        })
    }

    /// G(1/2 + it) with the moment-experiment cut policy.
    pub fn g_critical_line(&self, t: f64) -> Result<EvalResult> {
        if t < 0.0 {
            let mut r = self.g_critical_line(-t)?;
            r.value = r.value.conj();
            return Ok(r);
        }
        let x_raw = if t > 15.0 {
            t * t.ln().ln().sqrt() / t.ln()
        } else {
            100.0
        };
        let x = x_raw.max(100.0).min(self.h() / 2.0);
        let s = Complex64::new(0.5, t);
        let partial = self.g_partial(s, x)?;
        let (r, err) = self.r_core(s, x)?;
        Ok(EvalResult {
            value: partial + r,
            abs_error: err,
            method: Method::RemainderFormula,
            warning: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zero_data::{parse_zero_file, ZeroFileFormat};
    use std::sync::OnceLock;

    fn table() -> &'static ZeroTable {
        static T: OnceLock<ZeroTable> = OnceLock::new();
        T.get_or_init(|| {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeros_100k.txt");
            let text = std::fs::read_to_string(path).expect("zero table present");
            parse_zero_file(&text, ZeroFileFormat::PlainAscending).expect("valid table")
        })
    }

    fn ev() -> GEvaluator<'static> {
        GEvaluator::new(table())
    }

    #[test]
    fn partial_sum_basics() {
        let e = ev();
        let s = Complex64::new(2.0, 0.0);
        // empty below the first ordinate
        assert_eq!(e.g_partial(s, 14.0).unwrap(), Complex64::new(0.0, 0.0));
        // 29 ordinates below 100; numpy over the same table: 0.01710951...
        let v = e.g_partial(s, 100.0).unwrap();
        assert!((v.re - 0.017_109_511_585_9).abs() < 1e-12, "{v}");
        // s = 0 counts zeros
        let v = e.g_partial(Complex64::new(0.0, 0.0), 100.0).unwrap();
        assert_eq!(v, Complex64::new(29.0, 0.0));
    }

    #[test]
    fn cut_point_independence() {
        let e = ev();
        let s = Complex64::new(2.0, 0.0);
        let a = e.g_partial(s, 100.0).unwrap() + e.r_remainder(s, 100.0).unwrap().value;
        let b = e.g_partial(s, 1000.0).unwrap() + e.r_remainder(s, 1000.0).unwrap().value;
        let budget =
            e.r_remainder(s, 100.0).unwrap().abs_error + e.r_remainder(s, 1000.0).unwrap().abs_error;
        assert!((a - b).norm() <= budget.max(1e-10), "{a} vs {b}");
        // and against the direct route
        let d = e.g_eval(s).unwrap();
        assert!((a - d.value).norm() <= (budget + d.abs_error).max(1e-10));
    }

    #[test]
    fn remainder_magnitude_decays() {
        let e = ev();
        let s = Complex64::new(2.0, 0.0);
        let r1 = e.r_remainder(s, 200.0).unwrap().value.norm();
        let r2 = e.r_remainder(s, 2000.0).unwrap().value.norm();
        assert!(r2 < r1);
    }

    #[test]
    fn g_at_2_reference() {
        // known decimal expansion of G(2) = sum gamma^{-2} = 0.02310499...
        let e = ev();
        let v = e.g_eval(Complex64::new(2.0, 0.0)).unwrap();
        assert_eq!(v.method, Method::Direct);
        assert!((v.value.re - 0.023_104_993_1).abs() < 2e-5, "{}", v.value);
        assert!(v.value.im.abs() < 1e-12);
    }

    #[test]
    fn pole_structure() {
        let e = ev();
        // (s-1)^2 G(s) -> 1/(2pi) by Richardson on h, 2h
        let probe = |h: f64| {
            let s = Complex64::new(1.0 + h, 0.0);
            ((s - 1.0) * (s - 1.0) * e.g_eval(s).unwrap().value).re
        };
        let r = 2.0 * probe(0.005) - probe(0.01);
        assert!((r - 1.0 / TWO_PI).abs() < 1e-3, "{r}");
    }

    #[test]
    fn schwarz_symmetry() {
        let e = ev();
        let s = Complex64::new(0.7, 3.0);
        let a = e.g_eval(s).unwrap().value;
        let b = e.g_eval(s.conj()).unwrap().value;
        assert!((a.conj() - b).norm() < 1e-12);
    }

    #[test]
    fn continuation_routes_agree() {
        let e = ev();
        // remainder route vs twice-integrated route overlap on 0 < sigma <= 1
        for &s in &[
            Complex64::new(0.3, 0.0),
            Complex64::new(0.8, 2.0),
            Complex64::new(0.5, 5.0),
        ] {
            let a = e.g_eval(s).unwrap();
            let b = e.g_eval_continued(s).unwrap();
            let budget = (a.abs_error + b.abs_error).max(1e-6);
            assert!(
                (a.value - b.value).norm() <= budget,
                "s={s}: {} vs {} (budget {budget})",
                a.value,
                b.value
            );
        }
    }

    #[test]
    fn negative_sigma_value_is_stable() {
        let e = ev();
        let v = e.g_eval(Complex64::new(-0.5, 1.0)).unwrap();
        assert_eq!(v.method, Method::Continuation);
        assert!(v.value.norm().is_finite());
        // Schwarz symmetry holds on the extended route too
        let w = e.g_eval(Complex64::new(-0.5, -1.0)).unwrap();
        assert!((v.value.conj() - w.value).norm() < 2.0 * (v.abs_error + w.abs_error) + 1e-8);
    }

    #[test]
    fn critical_line_matches_g_eval() {
        let e = ev();
        let a = e.g_critical_line(1.0).unwrap();
        let b = e.g_eval(Complex64::new(0.5, 1.0)).unwrap();
        assert!((a.value - b.value).norm() <= (a.abs_error + b.abs_error).max(1e-8));
        // conjugate symmetry
        let c = e.g_critical_line(-1.0).unwrap();
        assert!((a.value.conj() - c.value).norm() < 1e-12);
        // error budget at t = 50
        let d = e.g_critical_line(50.0).unwrap();
        assert!(d.abs_error < 1e-2);
    }

    #[test]
    fn guards() {
        let e = ev();
        assert!(matches!(
            e.g_eval(Complex64::new(1.0005, 0.0)),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            e.g_eval(Complex64::new(-1.5, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            e.r_remainder(Complex64::new(-0.1, 0.0), 100.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            e.r_remainder(Complex64::new(2.0, 0.0), 50.0),
            Err(Error::Domain(_))
        ));
    }
}
