//! Exact integer Laurent polynomials in one variable `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse Laurent polynomial; zero coefficients are never stored, so derived
/// equality is exact polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::term(1, 0)
    }

    /// `c * A^e`
    pub fn term(c: i64, e: i64) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0) == Some(&1)
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// max exponent − min exponent; 0 for constants and zero.
    pub fn span(&self) -> i64 {
        match (self.coeffs.keys().next(), self.coeffs.keys().next_back()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// Multiply by `(-A^3)^k` for any integer `k`.
    pub fn mul_neg_a3_pow(&self, k: i64) -> LaurentPoly {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let mut coeffs = BTreeMap::new();
        for (&e, &c) in &self.coeffs {
            coeffs.insert(e + 3 * k, sign * c);
        }
        LaurentPoly { coeffs }
    }

    /// JSON object with exponents as string keys, per the invariant report
    /// format.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (&e, &c) in &self.coeffs {
            map.insert(e.to_string(), serde_json::Value::from(c));
        }
        serde_json::Value::Object(map)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect();
        LaurentPoly { coeffs }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.coeffs.iter().rev() {
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => write!(f, "A")?,
                (1, e) => write!(f, "A^{e}")?,
                (m, 1) => write!(f, "{m}A")?,
                (m, e) => write!(f, "{m}A^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_collapse() {
        let p = LaurentPoly::from_terms([(2, 1), (2, -1), (0, 3)]);
        assert_eq!(p, LaurentPoly::term(3, 0));
        assert_eq!(p.term_count(), 1);
    }

    #[test]
    fn ring_ops() {
        let a = LaurentPoly::from_terms([(1, 1), (-1, 1)]); // A + A^-1
        let sq = &a * &a;
        assert_eq!(sq, LaurentPoly::from_terms([(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(&sq - &sq, LaurentPoly::zero());
        assert_eq!(&a + &(-&a), LaurentPoly::zero());
    }

    #[test]
    fn neg_a3_powers() {
        let one = LaurentPoly::one();
        assert_eq!(one.mul_neg_a3_pow(1), LaurentPoly::term(-1, 3));
        assert_eq!(one.mul_neg_a3_pow(-1), LaurentPoly::term(-1, -3));
        assert_eq!(one.mul_neg_a3_pow(2), LaurentPoly::term(1, 6));
        let p = LaurentPoly::term(-1, 3); // -A^3, a positive kink bracket
        assert!(p.mul_neg_a3_pow(-1).is_one());
    }

    #[test]
    fn display_is_readable() {
        let p = LaurentPoly::from_terms([(5, -1), (-3, -1), (-7, 1)]);
        assert_eq!(p.to_string(), "-A^5 - A^-3 + A^-7");
    }
}
