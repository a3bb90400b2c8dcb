use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// The exact value `(1/k)·log₂(p)` for a positive integer `p` and period `k ≥ 1`.
///
/// Values are kept in canonical form: `p = 1` forces `k = 1`, and otherwise
/// `p` is not a perfect `g`-th power for any `g > 1` dividing `k`. Ordering
/// compares `p₁^{k₂}` with `p₂^{k₁}` exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogValue {
    p: BigUint,
    k: u64,
}

impl LogValue {
    pub fn new(p: BigUint, k: u64) -> Self {
        assert!(k >= 1, "LogValue period must be positive");
        assert!(p >= BigUint::one(), "LogValue argument must be positive");
        if p.is_one() {
            return Self::zero();
        }
        let mut p = p;
        let mut k = k;
        // Strip the largest root allowed by the period.
        let mut g = k;
        while g > 1 {
            if k.is_multiple_of(g) {
                if let Ok(g32) = u32::try_from(g) {
                    let r = p.nth_root(g32);
                    if r.pow(g32) == p {
                        p = r;
                        k /= g;
                        g = k;
                        continue;
                    }
                }
            }
            g -= 1;
        }
        Self { p, k }
    }

    pub fn from_u64(p: u64, k: u64) -> Self {
        Self::new(BigUint::from(p), k)
    }

    /// `log₂(p)` with period one.
    pub fn log2_of(p: BigUint) -> Self {
        Self::new(p, 1)
    }

    pub fn zero() -> Self {
        Self { p: BigUint::one(), k: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_one()
    }

    pub fn base(&self) -> &BigUint {
        &self.p
    }

    pub fn period(&self) -> u64 {
        self.k
    }

    pub fn to_f64(&self) -> f64 {
        log2_big(&self.p) / self.k as f64
    }

    /// `(1/k)*log2(p)`, or `0`.
    pub fn exact_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        format!("(1/{})*log2({})", self.k, self.p)
    }

    /// Decimal rendering truncated (not rounded) to twelve digits.
    pub fn decimal_string(&self) -> String {
        let mut s = format!("{:.15}", self.to_f64());
        s.truncate(s.len() - 3);
        s
    }
}

impl Ord for LogValue {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.k == other.k {
            return self.p.cmp(&other.p);
        }
        let lhs = self.p.pow(other.k as u32);
        let rhs = other.p.pow(self.k as u32);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.exact_string())
    }
}

/// `log₂(n)` for a big integer, accurate to double precision.
pub fn log2_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().map(f64::log2).unwrap_or(f64::INFINITY)
    } else {
        let shift = bits - 64;
        let top: BigUint = n >> shift;
        top.to_f64().unwrap().log2() + shift as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_reduces_perfect_powers() {
        let v = LogValue::from_u64(4, 2);
        assert_eq!((v.base().clone(), v.period()), (BigUint::from(2u32), 1));
        let v = LogValue::from_u64(64, 4);
        assert_eq!((v.base().clone(), v.period()), (BigUint::from(8u32), 2));
        let v = LogValue::from_u64(8, 6);
        assert_eq!((v.base().clone(), v.period()), (BigUint::from(2u32), 2));
        assert_eq!(LogValue::from_u64(1, 7), LogValue::zero());
        assert_eq!(LogValue::from_u64(2, 4).exact_string(), "(1/4)*log2(2)");
    }

    #[test]
    fn exact_ordering_resolves_ties() {
        assert_eq!(LogValue::from_u64(2, 2).cmp(&LogValue::from_u64(4, 4)), Ordering::Equal);
        assert!(LogValue::from_u64(3, 2) > LogValue::from_u64(2, 2));
        assert!(LogValue::from_u64(2, 4) < LogValue::from_u64(2, 2));
        assert!(LogValue::zero() < LogValue::from_u64(2, 100));
        // 3^5 = 243 < 2^8 = 256
        assert!(LogValue::from_u64(3, 8) < LogValue::from_u64(2, 5));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(LogValue::from_u64(2, 4).decimal_string(), "0.250000000000");
        assert_eq!(LogValue::from_u64(3, 2).decimal_string(), "0.792481250360");
        assert_eq!(LogValue::zero().decimal_string(), "0.000000000000");
    }

    #[test]
    fn log2_of_huge_numbers() {
        let n = BigUint::from(3u32).pow(2000);
        let expected = 2000.0 * 3f64.log2();
        assert!((log2_big(&n) - expected).abs() < 1e-9 * expected);
    }
}
