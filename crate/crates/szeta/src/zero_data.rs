//! Zero-table ingestion and the counting functions N(T), n(I), N(sigma,T), A(T).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroFileFormat {
    /// One decimal ordinate per line, '#' comment lines permitted anywhere.
    PlainAscending,
    /// "index ordinate" per line, indices starting at 1.
    Labeled,
}

/// Ascending ordinates of zeta zeros with source metadata.
///
/// Immutable after construction; equal adjacent entries encode multiplicity.
pub struct ZeroTable {
    ordinates: Vec<f64>,
    height_ceiling: f64,
    precision_digits: u32,
    source: String,
}

impl ZeroTable {
    pub fn from_parts(
        ordinates: Vec<f64>,
        height_ceiling: Option<f64>,
        precision_digits: u32,
        source: String,
    ) -> Result<Self> {
        if ordinates.is_empty() {
            return Err(Error::EmptyTable);
        }
        let h = height_ceiling.unwrap_or(*ordinates.last().unwrap());
        if h <= 0.0 {
            return Err(Error::Domain(format!("height ceiling must be positive, got {h}")));
        }
        if ordinates[0] <= 14.0 {
            return Err(Error::Domain(format!(
                "first ordinate {} not above 14; no zero exists below the first ordinate",
                ordinates[0]
            )));
        }
        if let Some((i, _)) = ordinates
            .iter()
            .enumerate()
            .find(|(_, &g)| g > h)
        {
            return Err(Error::Domain(format!(
                "ordinate #{} = {} exceeds the declared ceiling {h}",
                i + 1,
                ordinates[i]
            )));
        }
        Ok(ZeroTable {
            ordinates,
            height_ceiling: h,
            precision_digits,
            source,
        })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn ceiling(&self) -> f64 {
        self.height_ceiling
    }

    pub fn precision_digits(&self) -> u32 {
        self.precision_digits
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Whether t coincides exactly with a tabulated ordinate.
    pub fn contains(&self, t: f64) -> bool {
        self.ordinates
            .binary_search_by(|g| g.partial_cmp(&t).unwrap())
            .is_ok()
    }

    /// N(T): ordinates <= T, counting multiplicity.
    pub fn count_upto(&self, t: f64) -> Result<usize> {
        if t <= 0.0 {
            return Err(Error::Domain(format!("count_upto needs T > 0, got {t}")));
        }
        if t > self.height_ceiling {
            return Err(Error::IncompleteTable {
                requested: t,
                ceiling: self.height_ceiling,
            });
        }
        Ok(self.ordinates.partition_point(|&g| g <= t))
    }

    /// n((lo, hi]): half-open interval count.
    pub fn count_interval(&self, lo: f64, hi: f64) -> Result<usize> {
        if !(0.0 < lo && lo <= hi) {
            return Err(Error::Domain(format!(
                "count_interval needs 0 < lo <= hi, got ({lo}, {hi}]"
            )));
        }
        Ok(self.count_upto(hi)? - self.count_upto(lo)?)
    }

    /// Indices of ordinates in (lo, hi].
    pub fn index_range(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let a = self.ordinates.partition_point(|&g| g <= lo);
        let b = self.ordinates.partition_point(|&g| g <= hi);
        a..b
    }
}

/// Parse a zero table from text.
pub fn parse_zero_file(text: &str, format: ZeroFileFormat) -> Result<ZeroTable> {
    let mut ordinates = Vec::new();
    let mut ceiling = None;
    let mut precision = 0u32;
    let mut source = String::from("unlabeled input");
    let mut expected_index = 1u64;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some((key, value)) = comment.split_once(':') {
                let value = value.trim();
                match key.trim().to_ascii_lowercase().as_str() {
                    "ceiling" | "h" | "height" => {
                        ceiling = Some(value.parse().map_err(|_| Error::Parse {
                            line: lineno,
                            msg: format!("bad ceiling value '{value}'"),
                        })?)
                    }
                    "precision" => {
                        precision = value.parse().map_err(|_| Error::Parse {
                            line: lineno,
                            msg: format!("bad precision value '{value}'"),
                        })?
                    }
                    "source" => source = value.to_string(),
                    _ => {}
                }
            }
            continue;
        }
        let value_text = match format {
            ZeroFileFormat::PlainAscending => line,
            ZeroFileFormat::Labeled => {
                let (idx, rest) = line.split_once(char::is_whitespace).ok_or(Error::Parse {
                    line: lineno,
                    msg: "labeled format needs 'index ordinate'".into(),
                })?;
                let idx: u64 = idx.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad index '{idx}'"),
                })?;
                if idx != expected_index {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected index {expected_index}, got {idx}"),
                    });
                }
                expected_index += 1;
                rest.trim()
            }
        };
        let value: f64 = value_text.parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("not a decimal ordinate: '{value_text}'"),
        })?;
        if !(value > 0.0 && value < 1e13) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("ordinate {value} outside (0, 1e13)"),
            });
        }
        if let Some(&prev) = ordinates.last() {
            if value < prev {
                return Err(Error::Monotonicity {
                    line: lineno,
                    prev,
                    value,
                });
            }
        }
        ordinates.push(value);
    }
    ZeroTable::from_parts(ordinates, ceiling, precision, source)
}

/// Read and parse a zero table from a file path.
pub fn load_zero_file(path: &std::path::Path, format: ZeroFileFormat) -> Result<ZeroTable> {
    let text = std::fs::read_to_string(path)?;
    let mut table = parse_zero_file(&text, format)?;
    if table.source == "unlabeled input" {
        table.source = path.display().to_string();
    }
    Ok(table)
}

/// Hypothetical off-critical-line zeros (synthetic test data only).
pub struct OffLineZeroTable {
    pairs: Vec<(f64, f64)>, // (beta, gamma)
    pub source: String,
}

impl OffLineZeroTable {
    pub fn new(pairs: Vec<(f64, f64)>, source: String) -> Result<Self> {
        for &(beta, gamma) in &pairs {
            if !(0.5 < beta && beta < 1.0) {
                return Err(Error::Domain(format!(
                    "off-line beta must lie in (1/2, 1), got {beta}"
                )));
            }
            if gamma <= 0.0 {
                return Err(Error::Domain(format!(
                    "off-line gamma must be positive, got {gamma}"
                )));
            }
        }
        Ok(OffLineZeroTable { pairs, source })
    }

    pub fn empty() -> Self {
        OffLineZeroTable {
            pairs: Vec::new(),
            source: "empty".into(),
        }
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }
}

/// (N(sigma, T), A(T)) over the off-line table.
pub fn offline_counters(table: &OffLineZeroTable, sigma: f64, t: f64) -> Result<(usize, f64)> {
    if !(0.5 < sigma && sigma < 1.0) {
        return Err(Error::Domain(format!(
            "offline_counters needs sigma in (1/2, 1), got {sigma}"
        )));
    }
    if t <= 0.0 {
        return Err(Error::Domain(format!("offline_counters needs T > 0, got {t}")));
    }
    let mut n = 0usize;
    let mut a = 0.0;
    for &(beta, gamma) in &table.pairs {
        if gamma <= t {
            if beta > sigma {
                n += 1;
            }
            a += (beta - 0.5) * (beta - 0.5);
        }
    }
    Ok((n, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_parse_and_counts() {
        let t = parse_zero_file("14.5\n21.0\n25.0\n", ZeroFileFormat::PlainAscending).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.ceiling(), 25.0);
        assert_eq!(t.count_upto(21.0).unwrap(), 2); // closed on the right
        assert_eq!(t.count_interval(14.5, 25.0).unwrap(), 2); // (lo, hi]
        assert_eq!(t.count_interval(21.0, 21.0).unwrap(), 0);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_zero_file("21.0\n14.5\n", ZeroFileFormat::PlainAscending),
            Err(Error::Monotonicity { line: 2, .. })
        ));
        assert!(matches!(
            parse_zero_file("14.5\nabc\n", ZeroFileFormat::PlainAscending),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_zero_file("# just a comment\n", ZeroFileFormat::PlainAscending),
            Err(Error::EmptyTable)
        ));
        assert!(matches!(
            parse_zero_file("13.0\n", ZeroFileFormat::PlainAscending),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn header_fields() {
        let text = "# source: unit test\n# precision: 9\n# ceiling: 30\n14.5\n21.0\n";
        let t = parse_zero_file(text, ZeroFileFormat::PlainAscending).unwrap();
        assert_eq!(t.source(), "unit test");
        assert_eq!(t.precision_digits(), 9);
        assert_eq!(t.ceiling(), 30.0);
        // count up to the declared (not last-ordinate) ceiling is fine
        assert_eq!(t.count_upto(28.0).unwrap(), 2);
    }

    #[test]
    fn labeled_format() {
        let t = parse_zero_file("1 14.5\n2 21.0\n", ZeroFileFormat::Labeled).unwrap();
        assert_eq!(t.len(), 2);
        assert!(matches!(
            parse_zero_file("1 14.5\n3 21.0\n", ZeroFileFormat::Labeled),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn ceiling_guard() {
        let t = parse_zero_file("14.5\n21.0\n", ZeroFileFormat::PlainAscending).unwrap();
        assert!(matches!(
            t.count_upto(22.0),
            Err(Error::IncompleteTable { .. })
        ));
        assert!(matches!(t.count_upto(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn multiplicity_by_repetition() {
        let t = parse_zero_file("14.5\n14.5\n21.0\n", ZeroFileFormat::PlainAscending).unwrap();
        assert_eq!(t.count_upto(15.0).unwrap(), 2);
    }

    #[test]
    fn offline_counts() {
        let empty = OffLineZeroTable::empty();
        assert_eq!(offline_counters(&empty, 0.6, 100.0).unwrap(), (0, 0.0));
        let syn = OffLineZeroTable::new(vec![(0.75, 10.0)], "synthetic".into()).unwrap();
        let (n, a) = offline_counters(&syn, 0.6, 20.0).unwrap();
        assert_eq!(n, 1);
        assert!((a - 0.0625).abs() < 1e-15);
        let (n, a) = offline_counters(&syn, 0.8, 20.0).unwrap();
        assert_eq!(n, 0);
        assert!((a - 0.0625).abs() < 1e-15);
        assert!(OffLineZeroTable::new(vec![(0.4, 10.0)], "bad".into()).is_err());
    }

    #[test]
    fn a_of_t_integral_identity() {
        // A(T) = 2 int_{1/2}^1 (sigma - 1/2) dN-count ... checked against
        // quadrature of N(sigma, T) per the section-2 identity
        let syn = OffLineZeroTable::new(
            vec![(0.6, 5.0), (0.75, 10.0), (0.9, 12.0)],
            "synthetic".into(),
        )
        .unwrap();
        let t = 20.0;
        let a_exact = offline_counters(&syn, 0.6, t).unwrap().1;
        // 2 int (sigma-1/2) N(sigma,T) dsigma with N piecewise constant:
        // breakpoints at the betas
        let mut breaks = vec![0.5, 0.6, 0.75, 0.9, 1.0];
        breaks.dedup();
        let mut acc = 0.0;
        for w in breaks.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let n = syn
                .pairs()
                .iter()
                .filter(|&&(b, g)| b > mid && g <= t)
                .count() as f64;
            // integral of 2(sigma-1/2) over the piece
            let piece = (w[1] - 0.5).powi(2) - (w[0] - 0.5).powi(2);
            acc += n * piece;
        }
        assert!((acc - a_exact).abs() < 1e-10, "{acc} vs {a_exact}");
    }
}
