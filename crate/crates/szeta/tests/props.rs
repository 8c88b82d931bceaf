//! Property-based invariants for the data layer and special functions.

use num_complex::Complex64;
use proptest::prelude::*;
use szeta::specfun::hurwitz_zeta;
use szeta::zero_data::{parse_zero_file, ZeroFileFormat, ZeroTable};

fn table_from(ordinates: Vec<f64>) -> ZeroTable {
    ZeroTable::from_parts(ordinates, None, 9, "prop".into()).expect("valid synthetic table")
}

proptest! {
    /// Counting over (lo, mid] and (mid, hi] must add up to (lo, hi].
    #[test]
    fn count_interval_additive(
        mut gaps in prop::collection::vec(0.01f64..5.0, 2..200),
        cuts in prop::collection::vec(0.0f64..1.0, 3),
    ) {
        let mut t = 14.2;
        for g in &mut gaps {
            t += *g;
            *g = t;
        }
        let table = table_from(gaps);
        let h = table.ceiling();
        let mut pts: Vec<f64> = cuts.iter().map(|c| 14.0 + c * (h - 14.0)).collect();
        pts.sort_by(f64::total_cmp);
        let (lo, mid, hi) = (pts[0], pts[1], pts[2]);
        let left = table.count_interval(lo, mid).unwrap();
        let right = table.count_interval(mid, hi).unwrap();
        let whole = table.count_interval(lo, hi).unwrap();
        prop_assert_eq!(left + right, whole);
    }

    /// count_upto agrees with a direct scan of the ordinate list.
    #[test]
    fn count_upto_matches_scan(
        mut gaps in prop::collection::vec(0.01f64..5.0, 1..200),
        frac in 0.0f64..1.0,
    ) {
        let mut t = 14.2;
        for g in &mut gaps {
            t += *g;
            *g = t;
        }
        let table = table_from(gaps);
        let cut = 14.0 + frac * (table.ceiling() - 14.0);
        let expect = table.ordinates().iter().filter(|&&g| g <= cut).count();
        prop_assert_eq!(table.count_upto(cut).unwrap(), expect);
    }

    /// A rendered table parses back to the same ordinates.
    #[test]
    fn zero_file_roundtrip(
        mut gaps in prop::collection::vec(0.01f64..5.0, 1..100),
    ) {
        let mut t = 14.2;
        for g in &mut gaps {
            t += *g;
            *g = (t * 1e9).round() / 1e9;
        }
        gaps.dedup();
        let text: String = gaps.iter().map(|g| format!("{g:.9}\n")).collect();
        let parsed = parse_zero_file(&text, ZeroFileFormat::PlainAscending).unwrap();
        prop_assert_eq!(parsed.ordinates(), &gaps[..]);
    }

    /// The Hurwitz shift identity: zeta(s, q) = zeta(s, q + 1) + q^{-s}.
    #[test]
    fn hurwitz_shift_identity(
        sigma in 1.2f64..6.0,
        tau in -5.0f64..5.0,
        q in 0.3f64..10.0,
    ) {
        let s = Complex64::new(sigma, tau);
        let a = hurwitz_zeta(s, q).unwrap();
        let b = hurwitz_zeta(s, q + 1.0).unwrap();
        let shift = (-s * q.ln()).exp();
        let err = (a - b - shift).norm();
        prop_assert!(err < 1e-9 * (1.0 + a.norm()), "residual {err}");
    }
}
