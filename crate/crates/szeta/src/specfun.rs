//! Classical special functions: log-gamma, gamma, Hurwitz zeta, the zeta
//! logarithmic derivative, and the Mangoldt prime-power table.

use crate::error::{Error, Result};
use crate::numeric::{
    adaptive_quad, gauss16, pow_neg_s, LN_2PI,
};
use num_complex::Complex64;
use std::sync::OnceLock;

/// Bernoulli numbers B_2, B_4, ..., B_20.
pub const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Principal log-gamma for Re z > 0: Stirling after shifting Re z above 24.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if z.re <= 0.0 {
        return Err(Error::Domain(format!(
            "ln_gamma requires Re z > 0, got {z}"
        )));
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 24.0 {
        shift += w.ln();
        w += 1.0;
    }
    let lw = w.ln();
    let mut v = (w - 0.5) * lw - w + 0.5 * LN_2PI;
    let w2 = w * w;
    let mut p = w; // w^(2j-1)
    for (j, &b) in BERNOULLI.iter().enumerate().take(8) {
        let jj = (j + 1) as f64;
        v += b / (2.0 * jj * (2.0 * jj - 1.0)) / p;
        p *= w2;
    }
    Ok(v - shift)
}

/// Gamma via ln_gamma, with reflection on the left half-plane.
pub fn gamma_fn(z: Complex64) -> Result<Complex64> {
    if z.re >= 0.5 {
        return Ok(ln_gamma(z)?.exp());
    }
    let n = z.re.round();
    if z.im == 0.0 && n <= 0.0 && (z.re - n).abs() < 1e-12 {
        return Err(Error::Pole(format!("gamma pole at {z}")));
    }
    let pi = std::f64::consts::PI;
    let s = (pi * z).sin();
    if s.norm() == 0.0 {
        return Err(Error::Pole(format!("gamma pole at {z}")));
    }
    Ok(pi / (s * ln_gamma(Complex64::new(1.0, 0.0) - z)?.exp()))
}

/// 1/Gamma(z): entire, zero at non-positive integers.
pub fn recip_gamma(z: Complex64) -> Result<Complex64> {
    if z.re >= 0.5 {
        Ok((-ln_gamma(z)?).exp())
    } else {
        let pi = std::f64::consts::PI;
        Ok((pi * z).sin() * ln_gamma(Complex64::new(1.0, 0.0) - z)?.exp() / pi)
    }
}

/// Hurwitz zeta(s, q) for q > 0, s != 1, by Euler-Maclaurin.
pub fn hurwitz_zeta(s: Complex64, q: f64) -> Result<Complex64> {
    if q <= 0.0 {
        return Err(Error::Domain(format!("hurwitz_zeta requires q > 0, got {q}")));
    }
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::Pole("hurwitz_zeta pole at s = 1".into()));
    }
    // the tail expansion needs Re s + 2K - 1 > 0; K = 8 covers Re s > -15
    if s.re < -14.0 {
        return Err(Error::Domain(format!(
            "hurwitz_zeta implemented for Re s > -14, got {s}"
        )));
    }
    let m = (2.0 * s.im.abs()).ceil().max(10.0) as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..m {
        sum += pow_neg_s(n as f64 + q, s);
    }
    let mq = m as f64 + q;
    sum += pow_neg_s(mq, s - 1.0) / (s - 1.0) + 0.5 * pow_neg_s(mq, s);
    let mut poch = s; // s(s+1)...(s+2k-2)
    let mut fact = 2.0; // (2k)!
    let mut p = pow_neg_s(mq, s + 1.0);
    let mq2 = mq * mq;
    for (k, &b) in BERNOULLI.iter().enumerate().take(8) {
        sum += b / fact * poch * p;
        let kk = 2.0 * (k + 1) as f64;
        poch *= (s + (kk - 1.0)) * (s + kk);
        fact *= (kk + 1.0) * (kk + 2.0);
        p /= mq2;
    }
    Ok(sum)
}

/// Riemann zeta via Euler-Maclaurin.
pub fn zeta_em(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

static MANGOLDT_1E6: OnceLock<MangoldtTable> = OnceLock::new();

pub(crate) fn mangoldt_1e6() -> &'static MangoldtTable {
    MANGOLDT_1E6.get_or_init(|| von_mangoldt_upto(1_000_000).expect("static sieve"))
}

/// zeta'(s)/zeta(s).
///
/// Far right of the critical strip the prime-power series with an integral
/// tail correction converges well; elsewhere a fourth-order central
/// difference of log zeta (via principal logs of zeta ratios) is used.
/// Errors out within 1e-6 of the pole at 1 or of a zero of zeta.
pub fn log_deriv_zeta(s: Complex64) -> Result<Complex64> {
    let d_pole = (s - 1.0).norm();
    if d_pole < 1e-6 {
        return Err(Error::NearSingularity(format!(
            "log_deriv_zeta within 1e-6 of the pole at 1 (s = {s})"
        )));
    }
    if s.re >= 1.8 {
        let t = mangoldt_1e6();
        let mut sum = Complex64::new(0.0, 0.0);
        for &(n, lp) in t.entries.iter().rev() {
            sum += lp * pow_neg_s(n as f64, s);
        }
        // sum_{n>N} Lambda(n) n^{-s} ~ int_N^inf x^{-s} dx
        let nf = t.limit as f64;
        let tail = pow_neg_s(nf, s - 1.0) / (s - 1.0);
        return Ok(-sum - tail);
    }
    log_deriv_zeta_fd(s)
}

/// The finite-difference route for zeta'/zeta, usable anywhere zeta_em is
/// accurate; cheap when |Im s| is small (short Euler-Maclaurin sums).
pub(crate) fn log_deriv_zeta_fd(s: Complex64) -> Result<Complex64> {
    let d_pole = (s - 1.0).norm();
    let z0 = zeta_em(s)?;
    if z0.norm() < 1e-6 {
        return Err(Error::NearSingularity(format!(
            "log_deriv_zeta within 1e-6 of a zero of zeta (s = {s})"
        )));
    }
    let h = (1e-3_f64).min(d_pole / 20.0).min(z0.norm() / 50.0).max(1e-7);
    // 4th-order central difference of log zeta; each bracket is the
    // principal log of a ratio of nearby values, so no branch tracking
    let r1 = (zeta_em(s + h)? / zeta_em(s - h)?).ln();
    let r2 = (zeta_em(s + 2.0 * h)? / zeta_em(s - 2.0 * h)?).ln();
    Ok((8.0 * r1 - r2) / (12.0 * h))
}

/// ln |zeta(sigma)| on the real axis, sigma > 1/2, sigma != 1.
pub fn log_abs_zeta_real(sigma: f64) -> Result<f64> {
    if sigma <= 0.5 {
        return Err(Error::Domain(format!(
            "log_abs_zeta_real requires sigma > 1/2, got {sigma}"
        )));
    }
    if (sigma - 1.0).abs() < 1e-9 {
        return Err(Error::Pole("zeta pole at sigma = 1".into()));
    }
    let z = zeta_em(Complex64::new(sigma, 0.0))?.re;
    if z == 0.0 {
        return Err(Error::Domain(format!("zeta({sigma}) vanished")));
    }
    Ok(z.abs().ln())
}

/// (1/pi) * int_{1/2}^inf ln |zeta(sigma)| d sigma.
///
/// The integrand has an integrable -ln|sigma-1| singularity, split off in
/// closed form around 1; the residual ln |(sigma-1) zeta(sigma)| is smooth.
/// Two independent panelizations are compared and their disagreement
/// reported as the error estimate.
pub fn c_tilde1() -> (f64, f64) {
    static VAL: OnceLock<(f64, f64)> = OnceLock::new();
    *VAL.get_or_init(|| {
        let a = c_tilde1_scheme(0.125, 40.0, 1e-13);
        let b = c_tilde1_scheme(0.0625, 48.0, 1e-12);
        (b, (a - b).abs() + 1e-11)
    })
}

fn c_tilde1_scheme(delta: f64, cut: f64, tol: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let mut f = |x: f64| log_abs_zeta_real(x).expect("integrand domain");
    let (left, _) = adaptive_quad(0.5, 1.0 - delta, tol, &mut f);
    let (right, _) = adaptive_quad(1.0 + delta, cut, tol, &mut f);
    // around the pole: ln|zeta| = -ln|sigma-1| + ln|(sigma-1) zeta(sigma)|
    let sing = 2.0 * delta * (1.0 - delta.ln());
    let smooth = gauss16(1.0 - delta, 1.0 + delta, |x| {
        if (x - 1.0).abs() < 1e-9 {
            // (sigma-1) zeta(sigma) -> 1
            0.0
        } else {
            (x - 1.0).abs().ln() + log_abs_zeta_real(x).expect("integrand domain")
        }
    });
    // beyond the cut ln zeta ~ 2^{-sigma}, integrating to 2^{-cut}/ln 2
    let tail = (2.0_f64).powf(-cut) / std::f64::consts::LN_2;
    (left + right + sing + smooth + tail) / pi
}

/// Prime-power table: all n = p^k <= limit with Lambda(n) = ln p.
pub struct MangoldtTable {
    pub limit: u64,
    /// (n, ln p) sorted by n.
    pub entries: Vec<(u64, f64)>,
}

impl MangoldtTable {
    pub fn lambda(&self, n: u64) -> f64 {
        match self.entries.binary_search_by_key(&n, |e| e.0) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0.0,
        }
    }
}

/// Sieve of Eratosthenes up to `limit` (bitset), expanded to prime powers.
pub fn von_mangoldt_upto(limit: u64) -> Result<MangoldtTable> {
    if limit < 2 {
        return Err(Error::Domain(format!(
            "von_mangoldt_upto requires limit >= 2, got {limit}"
        )));
    }
    if limit > 100_000_000 {
        return Err(Error::Domain(format!(
            "von_mangoldt_upto capped at 1e8, got {limit}"
        )));
    }
    let n = limit as usize;
    let mut composite = vec![0u64; n / 64 + 1];
    let is_set = |v: &[u64], i: usize| v[i >> 6] >> (i & 63) & 1 == 1;
    let mut p = 2usize;
    while p * p <= n {
        if !is_set(&composite, p) {
            let mut q = p * p;
            while q <= n {
                composite[q >> 6] |= 1 << (q & 63);
                q += p;
            }
        }
        p += 1;
    }
    let mut entries = Vec::new();
    for p in 2..=n {
        if !is_set(&composite, p) {
            let lp = (p as f64).ln();
            let mut q = p as u64;
            while q <= limit {
                entries.push((q, lp));
                match q.checked_mul(p as u64) {
                    Some(next) => q = next,
                    None => break,
                }
            }
        }
    }
    entries.sort_unstable_by_key(|e| e.0);
    Ok(MangoldtTable { limit, entries })
}
