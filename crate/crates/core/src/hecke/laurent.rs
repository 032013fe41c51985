use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// An element of `Z[v, v^-1]`, stored as exponent -> nonzero coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// `v -> v^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => "v".into(),
                _ => format!("v^{e}"),
            };
            if a.is_one() && e != 0 {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}

/// Serialized as `{exponent: coefficient}` with exact integer coefficients.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &crate::json::big_int(c))?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i32..5, -5i64..6), 0..5)
            .prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
    }

    #[test]
    fn normalization() {
        let mut p = LaurentPoly::monomial(3, 2);
        p.add_term(2, BigInt::from(-3));
        assert!(p.is_zero());
        assert_eq!(LaurentPoly::monomial(0, 5), LaurentPoly::zero());
    }

    #[test]
    fn display() {
        let p = &LaurentPoly::v_pow(2) - &LaurentPoly::one();
        assert_eq!(p.to_string(), "v^2 - 1");
        assert_eq!(LaurentPoly::monomial(-2, -1).to_string(), "-2v^-1");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!(a.bar().bar(), a);
        }
    }
}
