//! Laurent data of G at s = 1: the moment coefficients c_j of the density
//! residual F = N - main - 7/8, the constant C_1, and the series
//! coefficients b_j assembled from them.

use crate::error::{Error, Result};
use crate::g_function::GEvaluator;
use crate::numeric::{gauss8, int_pow_log_tail, LN_2PI, TWO_PI};
use crate::smooth_terms::{main_term, theta_coeff};
use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;

/// A real measurement with an error budget.
#[derive(Debug, Clone, Copy)]
pub struct Measured {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone)]
pub struct LaurentCoeffs {
    /// (1/(2pi), -log(2pi)/(2pi)): double- and simple-pole coefficients.
    pub principal: (f64, f64),
    pub c1: Measured,
    pub c: Vec<Measured>,
    pub b: Vec<Measured>,
}

fn factorial(j: u32) -> f64 {
    (1..=j).map(|k| k as f64).product()
}

/// int_a^inf ln^j x x^{-2} dx.
fn tail_j(a: f64, j: u32) -> f64 {
    if a <= 1.0 {
        factorial(j)
    } else {
        int_pow_log_tail(a, Complex64::new(2.0, 0.0), j).re
    }
}

fn check_table(ev: &GEvaluator) -> Result<()> {
    if ev.table().ceiling() < 1e4 {
        return Err(Error::Domain(format!(
            "laurent computations need table height >= 1e4, got {}",
            ev.table().ceiling()
        )));
    }
    Ok(())
}

/// The raw moment integral int_1^inf F(x) ln^j x x^{-2} dx with its error
/// budget: ordinate part and main part in closed form, f tail in closed
/// form, S tail only bounded.
fn raw_moment(ev: &GEvaluator, j: u32) -> (f64, f64) {
    let h = ev.table().ceiling();
    let l = h.ln();
    let tail_h = tail_j(h, j);
    // int_1^H N ln^j x^{-2} = sum over ordinates of (I_j(gamma) - I_j(H))
    let mut n_part = 0.0;
    let mut mag = 0.0;
    for &g in ev.table().ordinates() {
        let term = tail_j(g, j) - tail_h;
        n_part += term;
        mag += term.abs();
    }
    // int_1^H main ln^j x^{-2} = (1/2pi)[L^{j+2}/(j+2) - (log 2pi + 1) L^{j+1}/(j+1)]
    let main_part = (l.powi(j as i32 + 2) / (j as f64 + 2.0)
        - (LN_2PI + 1.0) * l.powi(j as i32 + 1) / (j as f64 + 1.0))
        / TWO_PI;
    let const_part = 0.875 * (factorial(j) - tail_h);
    // f tail beyond H, term by term
    let mut f_tail = 0.0;
    for jp in 1..=4u32 {
        f_tail += theta_coeff(jp as usize) / PI
            * int_pow_log_tail(h, Complex64::new(2.0 * jp as f64 + 1.0, 0.0), j).re;
    }
    let f_trunc = 2.0 * theta_coeff(5) / PI
        * int_pow_log_tail(h, Complex64::new(11.0, 0.0), j).re;
    // S tail beyond H: |int_0^x S| <= 3 ln x envelope, integrate by parts
    let c3 = Complex64::new(3.0, 0.0);
    let s_bound = 3.0 * l.powi(j as i32 + 1) / (h * h)
        + 6.0 * int_pow_log_tail(h, c3, j + 1).re
        + 3.0 * j as f64 * int_pow_log_tail(h, c3, j).re;
    let rounding = 1e-15 * (mag + main_part.abs() + const_part.abs())
        * (ev.table().len() as f64).sqrt().max(8.0);
    (
        n_part - main_part - const_part + f_tail,
        s_bound + f_trunc + rounding,
    )
}

/// c_j = ((-1)^j / j!) int_1^inf F(x) ln^j x x^{-2} dx.
pub fn c_coeff(ev: &GEvaluator, j: u32) -> Result<Measured> {
    check_table(ev)?;
    if j > 12 {
        return Err(Error::Domain(format!(
            "c_coeff capped at j <= 12 (S tail dominates beyond), got {j}"
        )));
    }
    let (raw, err) = raw_moment(ev, j);
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let jf = factorial(j);
    Ok(Measured {
        value: sign * raw / jf,
        error: err / jf,
    })
}

/// Independent oracle: the same raw moment by per-segment Gauss quadrature
/// of F (smooth between consecutive ordinates), with the same tails.
pub fn raw_moment_by_quadrature(ev: &GEvaluator, j: u32) -> f64 {
    let h = ev.table().ceiling();
    let integrand = |x: f64, count: f64| {
        count - main_term(x) - 0.875
    };
    let weight = |x: f64| x.ln().powi(j as i32) / (x * x);
    let mut total = 0.0;
    let mut prev = 1.0;
    for (k, &g) in ev.table().ordinates().iter().enumerate() {
        // split long segments so Gauss resolves the ln^j weight
        let sub = 1 + ((g - prev) / 2.0) as usize;
        let hstep = (g - prev) / sub as f64;
        for p in 0..sub {
            let a = prev + p as f64 * hstep;
            total += gauss8(a, a + hstep, |x| integrand(x, k as f64) * weight(x));
        }
        prev = g;
    }
    let n = ev.table().len() as f64;
    let sub = 1 + ((h - prev) / 2.0) as usize;
    let hstep = (h - prev) / sub as f64;
    for p in 0..sub {
        let a = prev + p as f64 * hstep;
        total += gauss8(a, a + hstep, |x| integrand(x, n) * weight(x));
    }
    // f tail and nothing else (matches raw_moment's beyond-H treatment)
    let mut f_tail = 0.0;
    for jp in 1..=4u32 {
        f_tail += theta_coeff(jp as usize) / PI
            * int_pow_log_tail(h, Complex64::new(2.0 * jp as f64 + 1.0, 0.0), j).re;
    }
    total + f_tail
}

/// C_1 measured at several s0 and cross-checked for s-independence.
pub fn estimate_c1(ev: &GEvaluator) -> Result<Measured> {
    check_table(ev)?;
    let mut vals = Vec::new();
    let mut errs = Vec::new();
    for &s0 in &[2.0, 2.5, 3.0] {
        let s = Complex64::new(s0, 0.0);
        let g = ev.g_eval(s)?;
        let (fint, ferr) = ev.s_int_big_f(s, 1.0)?;
        let sm1 = s0 - 1.0;
        let v = g.value.re - 1.0 / (TWO_PI * sm1 * sm1) + LN_2PI / (TWO_PI * sm1) - fint.re;
        vals.push(v);
        errs.push(g.abs_error + ferr + 1e-12);
    }
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    let spread = vals
        .iter()
        .fold(f64::MIN, |a, &v| a.max(v))
        - vals.iter().fold(f64::MAX, |a, &v| a.min(v));
    let max_err = errs.iter().cloned().fold(0.0, f64::max);
    if spread > 10.0 * max_err.max(1e-12) {
        return Err(Error::Inconsistency(format!(
            "C1 measurements spread {spread:e} exceeds 10x individual errors {max_err:e}"
        )));
    }
    Ok(Measured {
        value: mean,
        error: spread + max_err,
    })
}

/// Assemble principal part, C_1, c_0..J and b_0..J.
pub fn laurent_expansion(ev: &GEvaluator, jmax: u32) -> Result<LaurentCoeffs> {
    if jmax > 12 {
        return Err(Error::Domain(format!("laurent_expansion needs J <= 12, got {jmax}")));
    }
    let c1 = estimate_c1(ev)?;
    let c: Vec<Measured> = (0..=jmax)
        .map(|j| c_coeff(ev, j))
        .collect::<Result<_>>()?;
    let mut b = Vec::with_capacity(c.len());
    b.push(Measured {
        value: c1.value + c[0].value,
        error: c1.error + c[0].error,
    });
    for j in 1..c.len() {
        b.push(Measured {
            value: c[j].value + c[j - 1].value,
            error: c[j].error + c[j - 1].error,
        });
    }
    Ok(LaurentCoeffs {
        principal: (1.0 / TWO_PI, -LN_2PI / TWO_PI),
        c1,
        c,
        b,
    })
}

/// Evaluate the truncated Laurent series at s (|s-1| < 1).
pub fn eval_series(coeffs: &LaurentCoeffs, s: Complex64) -> Complex64 {
    let z = s - 1.0;
    let mut v = coeffs.principal.0 / (z * z) + coeffs.principal.1 / z;
    let mut p = Complex64::new(1.0, 0.0);
    for bj in &coeffs.b {
        v += bj.value * p;
        p *= z;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g_function::main_term_constant;
    use crate::numeric::SplitMix64;
    use crate::zero_data::{parse_zero_file, ZeroFileFormat, ZeroTable};
    use std::sync::OnceLock;

    fn table() -> &'static ZeroTable {
        static T: OnceLock<ZeroTable> = OnceLock::new();
        T.get_or_init(|| {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeros_100k.txt");
            let text = std::fs::read_to_string(path).expect("zero table present");
            parse_zero_file(&text, ZeroFileFormat::PlainAscending).expect("valid table")
        })
    }

    #[test]
    fn c0_against_quadrature() {
        let ev = GEvaluator::new(table());
        let c0 = c_coeff(&ev, 0).unwrap();
        assert!(c0.value.abs() < 1.0);
        let q = raw_moment_by_quadrature(&ev, 0);
        assert!(
            (c0.value - q).abs() <= c0.error.max(1e-6),
            "{} vs {q} (err {})",
            c0.value,
            c0.error
        );
        // and for a couple more j
        for j in [1u32, 3] {
            let c = c_coeff(&ev, j).unwrap();
            let q = raw_moment_by_quadrature(&ev, j);
            let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
            let expect = sign * q / (1..=j).map(|k| k as f64).product::<f64>();
            assert!((c.value - expect).abs() <= c.error.max(1e-6), "j={j}");
        }
    }

    #[test]
    fn c1_estimate_matches_closed_form() {
        // the measurement must land on the main-term constant, since the
        // F part of the continuation is carried explicitly
        let ev = GEvaluator::new(table());
        let c1 = estimate_c1(&ev).unwrap();
        assert!(
            (c1.value - main_term_constant()).abs() < c1.error.max(1e-7),
            "{} vs {} (err {:e})",
            c1.value,
            main_term_constant(),
            c1.error
        );
    }

    #[test]
    fn c1_stable_under_table_truncation() {
        let full = table();
        let ev = GEvaluator::new(full);
        let a = estimate_c1(&ev).unwrap();
        let keep = full.len() * 9 / 10;
        let short = ZeroTable::from_parts(
            full.ordinates()[..keep].to_vec(),
            None,
            full.precision_digits(),
            "truncated".into(),
        )
        .unwrap();
        let ev2 = GEvaluator::new(&short);
        let b = estimate_c1(&ev2).unwrap();
        assert!(
            (a.value - b.value).abs() <= (a.error + b.error).max(1e-7),
            "{} vs {}",
            a.value,
            b.value
        );
    }

    #[test]
    fn monte_carlo_oracle_j1() {
        // importance-sample x = e^u, u uniform on [0, ln H]
        let ev = GEvaluator::new(table());
        let h = ev.table().ceiling();
        let lh = h.ln();
        let mut rng = SplitMix64(0x5eed_1234_abcd_0001);
        let n = 200_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..n {
            let u = rng.range(0.0, lh);
            let x = u.exp();
            let count = ev.table().count_upto(x).unwrap() as f64;
            let fx = count - main_term(x) - 0.875;
            // estimator: F ln^j x x^{-2} / p, p = 1/(x lh); j = 1
            let val = fx * u * lh / x;
            sum += val;
            sumsq += val * val;
        }
        let mean = sum / n as f64;
        let var = (sumsq / n as f64 - mean * mean) / n as f64;
        let sigma = var.sqrt();
        let (raw, _) = raw_moment(&ev, 1);
        // the MC estimate stops at H; subtract the closed-form f tail
        let mut f_tail = 0.0;
        for jp in 1..=4u32 {
            f_tail += theta_coeff(jp as usize) / PI
                * int_pow_log_tail(h, Complex64::new(2.0 * jp as f64 + 1.0, 0.0), 1).re;
        }
        assert!(
            (mean - (raw - f_tail)).abs() < 3.0 * sigma + 1e-4,
            "MC {mean} vs {raw} (sigma {sigma})"
        );
    }

    #[test]
    fn f_only_toy_closed_form() {
        // int_1^inf (sum a_j x^{1-2j}) x^{-2} dx = sum a_j/(2j)
        let lhs: f64 = (1..=4u32)
            .map(|j| {
                theta_coeff(j as usize) / PI
                    * int_pow_log_tail(1.0 + 1e-9, Complex64::new(2.0 * j as f64 + 1.0, 0.0), 0).re
            })
            .sum();
        let rhs: f64 = (1..=4u32)
            .map(|j| theta_coeff(j as usize) / PI / (2.0 * j as f64))
            .sum();
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn expansion_assembly_and_series() {
        let ev = GEvaluator::new(table());
        let lc = laurent_expansion(&ev, 8).unwrap();
        // recurrence is exact arithmetic on returned fields
        assert_eq!(lc.b[1].value, lc.c[1].value + lc.c[0].value);
        // truncated series vs g_eval near the pole
        let s = Complex64::new(1.1, 0.0);
        let direct = ev.g_eval(s).unwrap();
        let series = eval_series(&lc, s);
        assert!(
            (direct.value - series).norm() < 1e-3,
            "{} vs {series}",
            direct.value
        );
        // on the circle |s-1| = 0.1
        for k in 0..8 {
            let phi = k as f64 * std::f64::consts::FRAC_PI_4;
            let s = Complex64::new(1.0 + 0.1 * phi.cos(), 0.1 * phi.sin());
            let direct = ev.g_eval(s).unwrap();
            let series = eval_series(&lc, s);
            assert!((direct.value - series).norm() < 1e-3, "k={k}");
        }
    }

    #[test]
    fn j_cap() {
        let ev = GEvaluator::new(table());
        assert!(matches!(c_coeff(&ev, 13), Err(Error::Domain(_))));
    }
}
