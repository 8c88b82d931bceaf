//! Smooth parts of the zero-counting formula: the Riemann-Siegel theta
//! function and its asymptotic expansion, the lower-order correction f(T),
//! the argument function S(t) reconstructed from zero counts, exact
//! iterated integrals of S, and a desk-scale Riemann-Siegel zero finder.

use crate::error::{Error, Result};
use crate::numeric::{adaptive_quad, gauss8, gauss8_c, gauss16_c, pow_neg_s, TWO_PI};
use crate::specfun::{ln_gamma, zeta_em, BERNOULLI};
use crate::zero_data::ZeroTable;
use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;

/// The Riemann-von Mangoldt main term (x/2pi) log(x/2pi) - x/2pi.
#[inline]
pub fn main_term(x: f64) -> f64 {
    x / TWO_PI * ((x / TWO_PI).ln() - 1.0)
}

/// f(t) = theta(t)/pi - main(t) + 1/8, the lower-order correction; valid
/// for all t > 0 via the log-Gamma theta below 10.
pub(crate) fn f_any(t: f64) -> f64 {
    theta_any(t) / PI - main_term(t) + 0.125
}

/// theta_j = (1 - 2^{1-2j}) |B_{2j}| / (4j(2j-1)); theta_1 = 1/48.
pub fn theta_coeff(j: usize) -> f64 {
    debug_assert!((1..=8).contains(&j));
    let jj = j as f64;
    (1.0 - (2.0_f64).powi(1 - 2 * j as i32)) * BERNOULLI[j - 1].abs() / (4.0 * jj * (2.0 * jj - 1.0))
}

/// Coefficient table for the asymptotic series of theta.
pub struct ThetaExpansion {
    pub term_count: usize,
    coeffs: [f64; 8],
}

impl ThetaExpansion {
    pub fn new(term_count: usize) -> Result<Self> {
        if term_count > 8 {
            return Err(Error::Domain(format!(
                "theta expansion capped at 8 terms, got {term_count}"
            )));
        }
        let mut coeffs = [0.0; 8];
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c = theta_coeff(j + 1);
        }
        Ok(ThetaExpansion { term_count, coeffs })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut v = 0.5 * t * (t / TWO_PI).ln() - 0.5 * t - PI / 8.0;
        let inv2 = 1.0 / (t * t);
        let mut p = 1.0 / t; // t^{1-2j}
        for &c in &self.coeffs[..self.term_count] {
            v += c * p;
            p *= inv2;
        }
        v
    }
}

/// Riemann-Siegel theta by its asymptotic series.
pub fn rs_theta(t: f64, term_count: usize) -> Result<f64> {
    if t < 10.0 {
        return Err(Error::Domain(format!(
            "rs_theta asymptotic series needs t >= 10, got {t}"
        )));
    }
    Ok(ThetaExpansion::new(term_count)?.eval(t))
}

/// Default 4-term series, valid (to ~1e-13) for t >= 10. No domain check.
#[inline]
pub(crate) fn theta4(t: f64) -> f64 {
    let v = 0.5 * t * (t / TWO_PI).ln() - 0.5 * t - PI / 8.0;
    let i2 = 1.0 / (t * t);
    v + (1.0 / 48.0) / t * (1.0 + i2 * (7.0 / 120.0 + i2 * (31.0 / 1680.0 + i2 * (127.0 / 8960.0))))
}

/// Antiderivative of theta4: d/dt theta4_antider = theta4, valid for t >= 10.
#[inline]
pub(crate) fn theta4_antider(t: f64) -> f64 {
    let t2 = t * t;
    let i2 = 1.0 / t2;
    t2 * (0.25 * (t / TWO_PI).ln() - 0.375) - PI * t / 8.0 + (1.0 / 48.0) * t.ln()
        - i2 * (7.0 / 11520.0 + i2 * (31.0 / 322_560.0 + i2 * (127.0 / 2_580_480.0)))
}

/// theta from the log-Gamma definition, valid for all t >= 0.
pub fn theta_exact(t: f64) -> f64 {
    let lg = ln_gamma(Complex64::new(0.25, 0.5 * t)).expect("Re > 0");
    lg.im - 0.5 * t * PI.ln()
}

/// theta for any t > 0: series above 10, log-Gamma below.
pub(crate) fn theta_any(t: f64) -> f64 {
    if t >= 10.0 {
        theta4(t)
    } else {
        theta_exact(t)
    }
}

/// f(T) = sum a_j T^{1-2j}, a_j = theta_j / pi.
pub fn f_term(t: f64, term_count: usize) -> Result<f64> {
    if t < 10.0 {
        return Err(Error::Domain(format!("f_term needs T >= 10, got {t}")));
    }
    let exp = ThetaExpansion::new(term_count)?;
    let i2 = 1.0 / (t * t);
    let mut p = 1.0 / t;
    let mut v = 0.0;
    for &c in &exp.coeffs[..exp.term_count] {
        v += c * p;
        p *= i2;
    }
    Ok(v / PI)
}

/// The argument function S(t) at a point.
pub struct SArgument {
    pub value: f64,
    pub count: usize,
    pub at_ordinate: bool,
}

/// S(t) = N(t) - theta(t)/pi - 1, right-limit convention at ordinates.
pub fn s_of_t(table: &ZeroTable, t: f64) -> Result<SArgument> {
    if t < 10.0 {
        return Err(Error::Domain(format!("s_of_t needs t >= 10, got {t}")));
    }
    let count = table.count_upto(t)?;
    let at_ordinate = table.contains(t);
    Ok(SArgument {
        value: count as f64 - theta4(t) / PI - 1.0,
        count,
        at_ordinate,
    })
}

/// Riemann-Siegel Z(t): main sum plus the leading remainder term.
pub fn rs_z(t: f64) -> Result<f64> {
    if t < 10.0 {
        return Err(Error::Domain(format!("rs_z needs t >= 10, got {t}")));
    }
    let a = (t / TWO_PI).sqrt();
    let nmax = a.floor() as usize;
    let th = theta4(t);
    let mut z = 0.0;
    for n in 1..=nmax {
        let nf = n as f64;
        z += 2.0 * (th - t * nf.ln()).cos() / nf.sqrt();
    }
    let mut p = a - nmax as f64;
    // Psi(p) = cos(2pi(p^2 - p - 1/16))/cos(2pi p); the singularities at
    // p = 1/4, 3/4 are removable, so a tiny nudge is harmless
    if (TWO_PI * p).cos().abs() < 1e-8 {
        p += 1e-6;
    }
    let psi = (TWO_PI * (p * p - p - 1.0 / 16.0)).cos() / (TWO_PI * p).cos();
    let sign = if nmax % 2 == 1 { 1.0 } else { -1.0 };
    Ok(z + sign * (t / TWO_PI).powf(-0.25) * psi)
}

/// Z(t) through Euler-Maclaurin zeta: slower, ~1e-11 accurate at desk scale.
pub fn z_accurate(t: f64) -> f64 {
    let z = zeta_em(Complex64::new(0.5, t)).expect("off the pole");
    (Complex64::new(0.0, theta_any(t)).exp() * z).re
}

pub struct ZeroScan {
    pub zeros: Vec<f64>,
    /// theta-based count expectation over the window.
    pub expected_count: f64,
    /// Turing-style count-mismatch heuristic.
    pub warning: Option<String>,
}

/// Scan rs_z for sign changes and refine each bracket by bisection, then
/// polish against the Euler-Maclaurin Z so roots carry full accuracy.
pub fn find_zeros(lo: f64, hi: f64, tol: f64) -> Result<ZeroScan> {
    if !(10.0 <= lo && lo < hi && hi <= 1000.0) {
        return Err(Error::Domain(format!(
            "find_zeros needs 10 <= lo < hi <= 1000, got [{lo}, {hi}]"
        )));
    }
    if tol < 1e-10 {
        return Err(Error::Domain(format!("find_zeros tol >= 1e-10, got {tol}")));
    }
    // Gram spacing pi/theta'(t) at the top of the window, oversampled 16x
    let gram = PI / (0.5 * (hi / TWO_PI).ln());
    let step = gram / 16.0;
    let mut zeros = Vec::new();
    let mut t_prev = lo;
    let mut z_prev = rs_z(lo)?;
    let mut t = lo + step;
    while t_prev < hi {
        let tc = t.min(hi);
        let z = rs_z(tc)?;
        if z_prev.is_sign_negative() != z.is_sign_negative() {
            let (mut a, mut b) = (t_prev, tc);
            let mut za = z_prev;
            while b - a > 1e-11 {
                let m = 0.5 * (a + b);
                let zm = rs_z(m)?;
                if za.is_sign_negative() != zm.is_sign_negative() {
                    b = m;
                } else {
                    a = m;
                    za = zm;
                }
            }
            zeros.push(polish_root(0.5 * (a + b), tol));
        }
        t_prev = tc;
        z_prev = z;
        t += step;
    }
    zeros.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let expected_count = (theta4(hi) - theta4(lo)) / PI;
    let warning = if (zeros.len() as f64 - expected_count).abs() > 2.5 {
        Some(format!(
            "MissedZeroWarning: found {} zeros on [{lo}, {hi}] but theta predicts {:.2}",
            zeros.len(),
            expected_count
        ))
    } else {
        None
    };
    Ok(ZeroScan {
        zeros,
        expected_count,
        warning,
    })
}

/// Re-bracket around an rs_z root and bisect on the accurate Z.
fn polish_root(r: f64, tol: f64) -> f64 {
    let mut w = 5e-3;
    let (mut a, mut b) = (r - w, r + w);
    let mut za = z_accurate(a);
    let mut zb = z_accurate(b);
    let mut tries = 0;
    while za.is_sign_negative() == zb.is_sign_negative() && tries < 4 {
        w *= 4.0;
        a = r - w;
        b = r + w;
        za = z_accurate(a);
        zb = z_accurate(b);
        tries += 1;
    }
    if za.is_sign_negative() == zb.is_sign_negative() {
        return r; // no accurate bracket; keep the rs_z root
    }
    let target = (tol * 0.5).max(1e-12);
    while b - a > target {
        let m = 0.5 * (a + b);
        let zm = z_accurate(m);
        if za.is_sign_negative() != zm.is_sign_negative() {
            b = m;
        } else {
            a = m;
            za = zm;
        }
    }
    0.5 * (a + b)
}

/// Exact iterated integrals of S over [0, x].
///
/// Between consecutive ordinates S(u) = k - theta(u)/pi with k = N - 1, so
/// every segment integrates in closed form through the theta antiderivative;
/// below t = 10 the log-Gamma theta is integrated adaptively once. Prefix
/// values at every ordinate are cached at construction.
pub struct SIntegrals {
    ords: Vec<f64>,
    theta_int_at: Vec<f64>,
    t1: Vec<f64>,
    t2: Vec<f64>,
    base_t1: f64,
    base_t2: f64,
    theta_int_10: f64,
}

impl SIntegrals {
    pub fn new(table: &ZeroTable) -> Self {
        let ords = table.ordinates().to_vec();
        let n = ords.len();
        // below the first zero S(u) = -theta(u)/pi - 1
        let (base_t1, _) = adaptive_quad(0.0, 10.0, 1e-13, &mut |u| -theta_exact(u) / PI - 1.0);
        // Fubini: int_0^10 T1(u) du = int_0^10 (10 - v) S(v) dv
        let (base_t2, _) =
            adaptive_quad(0.0, 10.0, 1e-13, &mut |v| (10.0 - v) * (-theta_exact(v) / PI - 1.0));
        let theta_int_10 = theta4_antider(10.0);
        let mut theta_int_at = Vec::with_capacity(n);
        let mut t1 = Vec::with_capacity(n);
        let mut t2 = Vec::with_capacity(n);
        let mut prev_t = 10.0;
        let mut prev_ti = theta_int_10;
        let mut prev_t1 = base_t1;
        let mut prev_t2 = base_t2;
        for (k, &g) in ords.iter().enumerate() {
            let ti = theta4_antider(g);
            // on (prev, g) the count is k, so S = (k - 1) - theta/pi and
            // the segment integral needs the theta antiderivative:
            let seg1 = (k as f64 - 1.0) * (g - prev_t) - (ti - prev_ti) / PI;
            // T1 on the segment, integrated by Gauss (analytic integrand)
            let (p_t, p_ti, p_t1) = (prev_t, prev_ti, prev_t1);
            let kk = k as f64 - 1.0;
            let seg2 = gauss8(prev_t, g, |u| {
                p_t1 + kk * (u - p_t) - (theta4_antider(u) - p_ti) / PI
            });
            prev_t1 += seg1;
            prev_t2 += seg2;
            prev_t = g;
            prev_ti = ti;
            theta_int_at.push(ti);
            t1.push(prev_t1);
            t2.push(prev_t2);
        }
        SIntegrals {
            ords,
            theta_int_at,
            t1,
            t2,
            base_t1,
            base_t2,
            theta_int_10,
        }
    }

    fn locate(&self, x: f64) -> usize {
        self.ords.partition_point(|&g| g <= x)
    }

    /// T1(x) = int_0^x S(u) du.
    pub fn t1_at(&self, x: f64) -> f64 {
        assert!(x > 0.0);
        if x < 10.0 {
            return adaptive_quad(0.0, x, 1e-13, &mut |u| -theta_exact(u) / PI - 1.0).0;
        }
        let k = self.locate(x);
        if k == 0 {
            self.base_t1 - (x - 10.0) - (theta4_antider(x) - self.theta_int_10) / PI
        } else {
            self.t1[k - 1] + (k as f64 - 1.0) * (x - self.ords[k - 1])
                - (theta4_antider(x) - self.theta_int_at[k - 1]) / PI
        }
    }

    /// T2(x) = int_0^x T1(u) du.
    pub fn t2_at(&self, x: f64) -> f64 {
        assert!(x > 0.0);
        if x < 10.0 {
            return adaptive_quad(0.0, x, 1e-13, &mut |v| {
                (x - v) * (-theta_exact(v) / PI - 1.0)
            })
            .0;
        }
        let k = self.locate(x);
        if k == 0 {
            let (b1, ti10) = (self.base_t1, self.theta_int_10);
            return self.base_t2
                + gauss8(10.0, x, |u| b1 - (u - 10.0) - (theta4_antider(u) - ti10) / PI);
        }
        let g = self.ords[k - 1];
        let (t1k, tik) = (self.t1[k - 1], self.theta_int_at[k - 1]);
        let kk = k as f64 - 1.0;
        self.t2[k - 1] + gauss8(g, x, |u| t1k + kk * (u - g) - (theta4_antider(u) - tik) / PI)
    }

    pub fn ceiling(&self) -> f64 {
        *self.ords.last().expect("nonempty table")
    }

    /// T1(H) = int_0^H S.
    pub fn t1_h(&self) -> f64 {
        *self.t1.last().expect("nonempty table")
    }

    /// T2(H) = int_0^H T1.
    pub fn t2_h(&self) -> f64 {
        *self.t2.last().expect("nonempty table")
    }

    /// int_1^H T1(u) u^{-s-2} du with T1(u) = int_0^u S.
    ///
    /// Exact piecewise treatment: below 10 the order of integration is
    /// swapped so only the smooth log-Gamma theta is quadratured; between
    /// ordinates T1 is analytic and each segment gets Gauss panels sized
    /// to the oscillation of u^{-s-2}.
    pub fn integrate_t10_pow(&self, s: Complex64) -> Complex64 {
        let om = s.im.abs(); // oscillation rate against ln u
        // [1, 10]: int_1^10 T1(u) u^{-s-2} du
        //        = [ (1 - 10^{-s-1}) int_0^1 S + int_1^10 S(v)(v^{-s-1} - 10^{-s-1}) dv ] / (s+1)
        let w10 = pow_neg_s(10.0, s + 1.0);
        let t1_1 = self.t1_at(1.0);
        let mut low = (Complex64::new(1.0, 0.0) - w10) * t1_1;
        let panels = (9.0_f64).max(om * (10.0_f64).ln() / 1.5).ceil() as usize;
        let h = 9.0 / panels as f64;
        for p in 0..panels {
            let a = 1.0 + p as f64 * h;
            low += gauss16_c(a, a + h, |v| {
                (-theta_exact(v) / PI - 1.0) * (pow_neg_s(v, s + 1.0) - w10)
            });
        }
        let mut total = low / (s + 1.0);
        // [10, H]: segment by segment
        let seg = |a: f64, b: f64, t1a: f64, slope: f64, tia: f64, total: &mut Complex64| {
            let sub = (1.0_f64).max(om * (b / a).ln() / 1.5).ceil() as usize;
            let h = (b - a) / sub as f64;
            for p in 0..sub {
                let lo = a + p as f64 * h;
                *total += gauss8_c(lo, lo + h, |u| {
                    (t1a + slope * (u - a) - (theta4_antider(u) - tia) / PI)
                        * pow_neg_s(u, s + 2.0)
                });
            }
        };
        let mut prev_t = 10.0;
        let mut prev_ti = self.theta_int_10;
        let mut prev_t1 = self.base_t1;
        for (k, &g) in self.ords.iter().enumerate() {
            seg(prev_t, g, prev_t1, k as f64 - 1.0, prev_ti, &mut total);
            prev_t1 = self.t1[k];
            prev_ti = self.theta_int_at[k];
            prev_t = g;
        }
        total
    }
}
