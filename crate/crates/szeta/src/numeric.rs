//! Shared numeric helpers: Gauss-Legendre panels, adaptive quadrature,
//! closed-form integrals of x^{-c} ln^m x, a deterministic RNG for sampled
//! tests, and stable float formatting.

use num_complex::Complex64;

pub const TWO_PI: f64 = std::f64::consts::TAU;
pub const LN_2PI: f64 = 1.837_877_066_409_345_3;

/// Gauss-Legendre nodes/weights on [-1, 1], 8 points.
pub const GL8: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_2, 0.101_228_536_290_376_26),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (-0.525_532_409_916_329, 0.313_706_645_877_887_29),
    (-0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.525_532_409_916_329, 0.313_706_645_877_887_29),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (0.960_289_856_497_536_2, 0.101_228_536_290_376_26),
];

/// Gauss-Legendre nodes/weights on [-1, 1], 16 points.
pub const GL16: [(f64, f64); 16] = [
    (-0.989_400_934_991_649_9, 0.027_152_459_411_754_1),
    (-0.944_575_023_073_232_6, 0.062_253_523_938_647_89),
    (-0.865_631_202_387_831_7, 0.095_158_511_682_492_79),
    (-0.755_404_408_355_003, 0.124_628_971_255_533_87),
    (-0.617_876_244_402_643_7, 0.149_595_988_816_576_73),
    (-0.458_016_777_657_227_4, 0.169_156_519_395_002_54),
    (-0.281_603_550_779_258_9, 0.182_603_415_044_923_59),
    (-0.095_012_509_837_637_44, 0.189_450_610_455_068_5),
    (0.095_012_509_837_637_44, 0.189_450_610_455_068_5),
    (0.281_603_550_779_258_9, 0.182_603_415_044_923_59),
    (0.458_016_777_657_227_4, 0.169_156_519_395_002_54),
    (0.617_876_244_402_643_7, 0.149_595_988_816_576_73),
    (0.755_404_408_355_003, 0.124_628_971_255_533_87),
    (0.865_631_202_387_831_7, 0.095_158_511_682_492_79),
    (0.944_575_023_073_232_6, 0.062_253_523_938_647_89),
    (0.989_400_934_991_649_9, 0.027_152_459_411_754_1),
];

pub fn gauss8<F: FnMut(f64) -> f64>(a: f64, b: f64, mut f: F) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    GL8.iter().map(|&(x, w)| w * f(c + h * x)).sum::<f64>() * h
}

pub fn gauss16<F: FnMut(f64) -> f64>(a: f64, b: f64, mut f: F) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    GL16.iter().map(|&(x, w)| w * f(c + h * x)).sum::<f64>() * h
}

pub fn gauss8_c<F: FnMut(f64) -> Complex64>(a: f64, b: f64, mut f: F) -> Complex64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    GL8.iter()
        .map(|&(x, w)| f(c + h * x) * w)
        .sum::<Complex64>()
        * h
}

pub fn gauss16_c<F: FnMut(f64) -> Complex64>(a: f64, b: f64, mut f: F) -> Complex64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    GL16.iter()
        .map(|&(x, w)| f(c + h * x) * w)
        .sum::<Complex64>()
        * h
}

/// Adaptive quadrature by panel bisection: a panel is accepted when GL16
/// agrees with the sum of its two GL16 halves. Returns (value, error estimate).
pub fn adaptive_quad<F: FnMut(f64) -> f64>(a: f64, b: f64, tol: f64, f: &mut F) -> (f64, f64) {
    fn rec<F: FnMut(f64) -> f64>(
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
        f: &mut F,
    ) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let left = gauss16(a, m, &mut *f);
        let right = gauss16(m, b, &mut *f);
        let diff = (left + right - whole).abs();
        if diff < tol || depth >= 40 {
            (left + right, diff)
        } else {
            let (lv, le) = rec(a, m, left, 0.5 * tol, depth + 1, f);
            let (rv, re) = rec(m, b, right, 0.5 * tol, depth + 1, f);
            (lv + rv, le + re)
        }
    }
    let whole = gauss16(a, b, &mut *f);
    rec(a, b, whole, tol, 0, f)
}

/// Antiderivative of u^m e^{-q u}:  -e^{-qu} sum_{i=0}^m (m!/i!) u^i / q^{m-i+1}.
fn exp_poly_antider(u: f64, q: Complex64, m: u32) -> Complex64 {
    let mut coef = 1.0 / q; // coefficient of u^m
    let mut sum = Complex64::new(0.0, 0.0);
    let mut i = m;
    loop {
        sum += coef * u.powi(i as i32);
        if i == 0 {
            break;
        }
        coef = coef * (i as f64) / q;
        i -= 1;
    }
    -(-q * u).exp() * sum
}

/// ∫_a^b x^{-c} (ln x)^m dx for 0 < a <= b, complex c.
///
/// Uses the elementary antiderivative unless the interval is so short (in
/// log scale) that the endpoint difference would cancel catastrophically,
/// in which case a Gauss panel on u = ln x is exact to machine precision.
pub fn int_pow_log(a: f64, b: f64, c: Complex64, m: u32) -> Complex64 {
    debug_assert!(a > 0.0 && b >= a);
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    let q = c - 1.0;
    let (ua, ub) = (a.ln(), b.ln());
    if q.norm() * (ub - ua) < 0.35 {
        let g = |u: f64| (-q * u).exp() * u.powi(m as i32);
        if m <= 6 {
            gauss8_c(ua, ub, g)
        } else {
            gauss16_c(ua, ub, g)
        }
    } else {
        exp_poly_antider(ub, q, m) - exp_poly_antider(ua, q, m)
    }
}

/// ∫_a^∞ x^{-c} (ln x)^m dx, requires Re c > 1.
pub fn int_pow_log_tail(a: f64, c: Complex64, m: u32) -> Complex64 {
    debug_assert!(a > 1.0 && c.re > 1.0);
    -exp_poly_antider(a.ln(), c - 1.0, m)
}

/// x^{-s} for x > 0 with the principal real logarithm.
#[inline]
pub fn pow_neg_s(x: f64, s: Complex64) -> Complex64 {
    (-s * x.ln()).exp()
}

/// SplitMix64: tiny deterministic RNG for sampled checks.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Render a float with 17 significant digits (round-trip exact, stable).
pub fn fmt_g17(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Parse "a+bi" / "a-bi" / "a" / "bi" with optional spaces.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    if let Some(body) = t.strip_suffix('i') {
        // find split point of the imaginary part: last +/- not at index 0 and
        // not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re: f64 = body[..k].parse().ok()?;
                let imtxt = &body[k..];
                let im: f64 = if imtxt == "+" {
                    1.0
                } else if imtxt == "-" {
                    -1.0
                } else {
                    imtxt.parse().ok()?
                };
                Some(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() { 1.0 } else { body.parse().ok()? };
                Some(Complex64::new(0.0, im))
            }
        }
    } else {
        t.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0))
    }
}
