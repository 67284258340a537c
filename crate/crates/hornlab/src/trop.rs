//! Max-plus semiring values and Gelfand–Zeitlin patterns.
//!
//! Finite values are exact rationals; the bottom element is a distinguished
//! tag rather than a large negative float, so that ⊗-chains cannot overflow
//! and ties stay exact.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// A tropical number: a rational or −∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trop {
    NegInf,
    Fin(BigRational),
}

impl Trop {
    pub fn zero() -> Self {
        Trop::NegInf
    }

    pub fn one() -> Self {
        Trop::Fin(BigRational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Trop::Fin(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Trop::Fin(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Exact conversion from a finite float (floats are binary rationals).
    pub fn from_f64(v: f64) -> Result<Self> {
        if v == f64::NEG_INFINITY {
            return Ok(Trop::NegInf);
        }
        BigRational::from_float(v)
            .map(Trop::Fin)
            .ok_or_else(|| Error::NumericDomain(format!("non-finite weight {v}")))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Trop::Fin(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Trop::NegInf => None,
            Trop::Fin(r) => Some(r),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Trop::NegInf => f64::NEG_INFINITY,
            Trop::Fin(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Tropical addition: max, with −∞ neutral.
    pub fn tadd(&self, other: &Trop) -> Trop {
        match (self, other) {
            (Trop::NegInf, b) => b.clone(),
            (a, Trop::NegInf) => a.clone(),
            (Trop::Fin(a), Trop::Fin(b)) => Trop::Fin(a.max(b).clone()),
        }
    }

    /// Tropical multiplication: +, with −∞ absorbing.
    pub fn tmul(&self, other: &Trop) -> Trop {
        match (self, other) {
            (Trop::NegInf, _) | (_, Trop::NegInf) => Trop::NegInf,
            (Trop::Fin(a), Trop::Fin(b)) => Trop::Fin(a + b),
        }
    }

    /// Difference of finite values; errors on −∞.
    pub fn sub(&self, other: &Trop) -> Result<Trop> {
        match (self, other) {
            (Trop::Fin(a), Trop::Fin(b)) => Ok(Trop::Fin(a - b)),
            _ => Err(Error::NonFinite("tropical subtraction".into())),
        }
    }
}

impl PartialOrd for Trop {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Trop {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Trop::NegInf, Trop::NegInf) => Ordering::Equal,
            (Trop::NegInf, Trop::Fin(_)) => Ordering::Less,
            (Trop::Fin(_), Trop::NegInf) => Ordering::Greater,
            (Trop::Fin(a), Trop::Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Trop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trop::NegInf => write!(f, "-inf"),
            Trop::Fin(r) => write!(f, "{r}"),
        }
    }
}

/// Both semiring operations at once: (max(a,b), a+b).
pub fn trop_ops(a: &Trop, b: &Trop) -> (Trop, Trop) {
    (a.tadd(b), a.tmul(b))
}

/// Triangular array `m_i^{(l)}` for `0 ≤ i ≤ l ≤ n`, with `m_0^{(l)} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GzPattern {
    n: usize,
    /// `rows[l]` has length `l + 1`; entry `i` is `m_i^{(l)}`.
    rows: Vec<Vec<Trop>>,
}

/// One failed inequality of [`gz_check`]: the pair family and the indices
/// `(i, l)` at which it fails (`l` is the lower row of the pair).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GzViolation {
    /// `m_i^{(l+1)} + m_{i-1}^{(l)} ≥ m_{i-1}^{(l+1)} + m_i^{(l)}` fails.
    Upper { i: usize, l: usize },
    /// `m_i^{(l+1)} + m_i^{(l)} ≥ m_{i+1}^{(l+1)} + m_{i-1}^{(l)}` fails.
    Lower { i: usize, l: usize },
    /// A pattern entry is −∞; the strict cone is defined over the reals.
    NonFinite { i: usize, l: usize },
}

/// Result of a slack check on a pattern.
#[derive(Clone, Debug)]
pub struct GzCheck {
    pub ok: bool,
    pub violations: Vec<GzViolation>,
}

impl GzPattern {
    /// Build from rows *without* the leading `m_0^{(l)} = 0` entries.
    /// `inner[l-1]` holds `(m_1^{(l)}, …, m_l^{(l)})`.
    pub fn from_inner_rows(n: usize, inner: Vec<Vec<Trop>>) -> Result<Self> {
        if inner.len() != n {
            return Err(Error::SizeMismatch(format!(
                "expected {n} rows, got {}",
                inner.len()
            )));
        }
        let mut rows = vec![vec![Trop::one()]];
        for (l, row) in inner.into_iter().enumerate() {
            if row.len() != l + 1 {
                return Err(Error::SizeMismatch(format!(
                    "row {} must have {} entries, got {}",
                    l + 1,
                    l + 1,
                    row.len()
                )));
            }
            let mut full = vec![Trop::one()];
            full.extend(row);
            rows.push(full);
        }
        Ok(GzPattern { n, rows })
    }

    pub fn zero(n: usize) -> Self {
        let rows = (0..=n).map(|l| vec![Trop::one(); l + 1]).collect();
        GzPattern { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m_i^{(l)}`.
    pub fn entry(&self, i: usize, l: usize) -> &Trop {
        &self.rows[l][i]
    }

    /// Inner row `(m_1^{(l)}, …, m_l^{(l)})`.
    pub fn inner_row(&self, l: usize) -> &[Trop] {
        &self.rows[l][1..]
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Trop::is_finite))
    }

    /// Add the same constant to every entry except the fixed `m_0^{(l)} = 0`.
    pub fn shift_all(&self, c: &Trop) -> GzPattern {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(i, v)| if i == 0 { v.clone() } else { v.tmul(c) })
                    .collect()
            })
            .collect();
        GzPattern { n: self.n, rows }
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| r.iter().map(Trop::to_f64).collect()).collect()
    }
}

/// Check the two inequality families with slack ≥ `delta` for all
/// `0 < i ≤ l ≤ n−1`. Patterns containing −∞ fail with a non-finite report.
pub fn gz_check(p: &GzPattern, delta: &BigRational) -> GzCheck {
    let mut violations = Vec::new();
    for l in 0..=p.n {
        for i in 0..=l {
            if !p.entry(i, l).is_finite() {
                violations.push(GzViolation::NonFinite { i, l });
            }
        }
    }
    if !violations.is_empty() {
        return GzCheck { ok: false, violations };
    }
    let fin = |i: usize, l: usize| p.entry(i, l).as_rational().unwrap();
    for l in 1..p.n {
        for i in 1..=l {
            // m_i^{(l+1)} + m_{i-1}^{(l)} ≥ m_{i-1}^{(l+1)} + m_i^{(l)} + δ
            if fin(i, l + 1) + fin(i - 1, l) < fin(i - 1, l + 1) + fin(i, l) + delta {
                violations.push(GzViolation::Upper { i, l });
            }
            // m_i^{(l+1)} + m_i^{(l)} ≥ m_{i+1}^{(l+1)} + m_{i-1}^{(l)} + δ
            if fin(i, l + 1) + fin(i, l) < fin(i + 1, l + 1) + fin(i - 1, l) + delta {
                violations.push(GzViolation::Lower { i, l });
            }
        }
    }
    GzCheck { ok: violations.is_empty(), violations }
}

/// Convenience wrapper around [`gz_check`] with a nonnegative integer slack.
pub fn gz_check_int(p: &GzPattern, delta: i64) -> GzCheck {
    gz_check(p, &BigRational::from_integer(BigInt::from(delta)))
}

/// Consecutive differences `λ_i^{(l)} = m_i^{(l)} − m_{i-1}^{(l)}` for
/// `1 ≤ i ≤ l ≤ n`. Differences involving −∞ come out as −∞.
pub fn interlacing_values(p: &GzPattern) -> Vec<Vec<Trop>> {
    let mut out = Vec::with_capacity(p.n);
    for l in 1..=p.n {
        let mut row = Vec::with_capacity(l);
        for i in 1..=l {
            let v = match (p.entry(i, l), p.entry(i - 1, l)) {
                (Trop::Fin(a), Trop::Fin(b)) => Trop::Fin(a - b),
                _ => Trop::NegInf,
            };
            row.push(v);
        }
        out.push(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: i64) -> Trop {
        Trop::from_int(v)
    }

    #[test]
    fn semiring_identities() {
        let (s, p) = trop_ops(&t(2), &Trop::NegInf);
        assert_eq!(s, t(2));
        assert_eq!(p, Trop::NegInf);
        let (s, p) = trop_ops(&t(3), &t(5));
        assert_eq!(s, t(5));
        assert_eq!(p, t(8));
        let (s, p) = trop_ops(&t(-1), &t(-1));
        assert_eq!(s, t(-1));
        assert_eq!(p, t(-2));
    }

    fn pat(n: usize, inner: Vec<Vec<i64>>) -> GzPattern {
        GzPattern::from_inner_rows(
            n,
            inner.into_iter().map(|r| r.into_iter().map(t).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn gz_check_interlacing_examples() {
        // λ: 3 ≥ 2 ≥ 1
        let good = pat(2, vec![vec![2], vec![3, 4]]);
        assert!(gz_check_int(&good, 0).ok);
        // 0 < λ_2^{(2)} = 1 violates interlacing
        let bad = pat(2, vec![vec![0], vec![3, 4]]);
        let chk = gz_check_int(&bad, 0);
        assert!(!chk.ok);
        assert!(chk.violations.contains(&GzViolation::Lower { i: 1, l: 1 }));
        assert!(gz_check_int(&GzPattern::zero(3), 0).ok);
    }

    #[test]
    fn gz_check_rejects_non_finite() {
        let mut rows = vec![vec![Trop::from_int(2)], vec![Trop::NegInf, Trop::from_int(4)]];
        rows[1][0] = Trop::NegInf;
        let p = GzPattern::from_inner_rows(2, rows).unwrap();
        let chk = gz_check_int(&p, 0);
        assert!(!chk.ok);
        assert!(matches!(chk.violations[0], GzViolation::NonFinite { .. }));
    }

    #[test]
    fn interlacing_matches_differences() {
        let p = pat(2, vec![vec![2], vec![3, 4]]);
        let lam = interlacing_values(&p);
        assert_eq!(lam[0], vec![t(2)]);
        assert_eq!(lam[1], vec![t(3), t(1)]);
        let z = GzPattern::zero(3);
        for row in interlacing_values(&z) {
            assert!(row.iter().all(|v| *v == t(0)));
        }
    }

    #[test]
    fn delta_monotone_and_shift_invariant() {
        let p = pat(2, vec![vec![2], vec![4, 6]]);
        assert!(gz_check_int(&p, 2).ok);
        assert!(gz_check_int(&p, 1).ok);
        assert!(gz_check_int(&p, 0).ok);
        let shifted = p.shift_all(&t(7));
        assert_eq!(gz_check_int(&shifted, 0).ok, gz_check_int(&p, 0).ok);
        let bad = pat(2, vec![vec![0], vec![3, 4]]);
        assert_eq!(gz_check_int(&bad.shift_all(&t(-3)), 0).ok, false);
    }

    #[test]
    fn interlacing_iff_gz() {
        // Build a few patterns and compare gz_check(·,0) with the λ inequalities.
        let cases = vec![
            pat(2, vec![vec![2], vec![3, 4]]),
            pat(2, vec![vec![0], vec![3, 4]]),
            pat(3, vec![vec![1], vec![2, 2], vec![3, 3, 2]]),
            pat(3, vec![vec![5], vec![2, 2], vec![3, 3, 2]]),
        ];
        for p in cases {
            let lam = interlacing_values(&p);
            let mut ok = true;
            for l in 2..=p.n() {
                for i in 1..=l - 1 {
                    // λ_i^{(l)} ≥ λ_i^{(l−1)} ≥ λ_{i+1}^{(l)}
                    ok &= lam[l - 1][i - 1] >= lam[l - 2][i - 1];
                    ok &= lam[l - 2][i - 1] >= lam[l - 1][i];
                }
            }
            assert_eq!(ok, gz_check_int(&p, 0).ok);
        }
    }
}
