//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::poly::{cyclotomic, euler_phi};

/// An element of `Q(zeta_N)` in the power basis `1, z, ..., z^(phi(N)-1)`
/// where `z = exp(2 pi i / N)`.
///
/// Coordinates are kept as integers over one positive common denominator in
/// lowest terms. Rational values are always stored with conductor 1, so the
/// representation of a rational number is unique.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from(1)
    }

    pub fn rational(r: BigRational) -> Self {
        let (n, d) = r.into_raw();
        Cyclotomic::normalized(1, vec![n], d)
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0, "conductor must be positive");
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        Cyclotomic::from_exponents(n, v, BigInt::one())
    }

    /// `sum_i coeffs[i] zeta_n^i` for a coefficient vector of any length.
    pub fn from_exponent_coeffs(n: u32, coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Cyclotomic::from_exponents(n, num, den)
    }

    fn from_exponents(n: u32, exps: Vec<BigInt>, den: BigInt) -> Self {
        let m = n as usize;
        let mut folded = vec![BigInt::zero(); m.max(1)];
        for (k, c) in exps.into_iter().enumerate() {
            folded[k % m] += c;
        }
        Cyclotomic::normalized(n, reduce_mod_cyclotomic(n, folded), den)
    }

    fn normalized(n: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        let phi = euler_phi(n as u64) as usize;
        num.resize(phi, BigInt::zero());
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        let g = num.iter().fold(den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            num.iter_mut().for_each(|c| *c = &*c / &g);
            den /= &g;
        }
        if num.iter().skip(1).all(Zero::is_zero) {
            let c = num.swap_remove(0);
            let den = if c.is_zero() { BigInt::one() } else { den };
            return Cyclotomic { conductor: 1, num: vec![c], den };
        }
        Cyclotomic { conductor: n, num, den }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates, `phi(conductor)` of them.
    pub fn coords(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.num[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// The same number written in `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn widen(&self, m: u32) -> Self {
        assert!(m % self.conductor == 0, "conductor {} does not divide {m}", self.conductor);
        if self.is_rational() || m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut exps = vec![BigInt::zero(); step * (self.num.len() - 1) + 1];
        for (i, c) in self.num.iter().enumerate() {
            exps[i * step] = c.clone();
        }
        Cyclotomic::from_exponents(m, exps, self.den.clone())
    }

    /// Coordinates of both numbers in a common field.
    fn aligned(&self, other: &Self) -> (u32, Vec<BigInt>, Vec<BigInt>, BigInt, BigInt) {
        let m = (self.conductor).lcm(&other.conductor);
        let a = self.widen_raw(m);
        let b = other.widen_raw(m);
        (m, a, b, self.den.clone(), other.den.clone())
    }

    fn widen_raw(&self, m: u32) -> Vec<BigInt> {
        let phi = euler_phi(m as u64) as usize;
        let mut out = self.widen(m).num;
        out.resize(phi, BigInt::zero());
        out
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.conductor as usize;
        let mut exps = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            exps[(n - i) % n] = c.clone();
        }
        Cyclotomic::from_exponents(self.conductor, exps, self.den.clone())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic::normalized(
            self.conductor,
            self.num.iter().map(|c| c * r.numer()).collect(),
            &self.den * r.denom(),
        )
    }

    /// Numerical value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let d = big_to_f64(&self.den);
        let n = self.conductor as f64;
        self.num.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let t = std::f64::consts::TAU * k as f64 / n;
            let c = big_to_f64(c) / d;
            (re + c * t.cos(), im + c * t.sin())
        })
    }

    /// Lexicographic comparison of coordinates in a common field, used to
    /// order tables deterministically. Not compatible with field operations.
    pub fn cmp_coords(&self, other: &Self) -> Ordering {
        let (_, a, b, da, db) = self.aligned(other);
        for (x, y) in a.iter().zip(&b) {
            let ord = (x * &db).cmp(&(y * &da));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

fn big_to_f64(c: &BigInt) -> f64 {
    c.to_string().parse().unwrap_or(f64::NAN)
}

/// Reduces a coefficient vector (exponents below `n`) modulo `Phi_n`.
fn reduce_mod_cyclotomic(n: u32, mut v: Vec<BigInt>) -> Vec<BigInt> {
    let phi_poly = cyclotomic(n as u64);
    let d = phi_poly.len() - 1;
    for k in (d..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[k]);
        for (j, &p) in phi_poly.iter().enumerate().take(d) {
            if p != 0 {
                v[k - d + j] -= &c * p;
            }
        }
    }
    v.truncate(d.max(1));
    v
}

impl From<i64> for Cyclotomic {
    fn from(c: i64) -> Self {
        Cyclotomic { conductor: 1, num: vec![BigInt::from(c)], den: BigInt::one() }
    }
}

impl From<BigInt> for Cyclotomic {
    fn from(c: BigInt) -> Self {
        Cyclotomic { conductor: 1, num: vec![c], den: BigInt::one() }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        if self.is_rational() || other.is_rational() {
            return false;
        }
        self.cmp_coords(other) == Ordering::Equal
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_rational() && other.is_rational() {
            let num = &self.num[0] * &other.den + &other.num[0] * &self.den;
            return Cyclotomic::normalized(1, vec![num], &self.den * &other.den);
        }
        let (m, a, b, da, db) = self.aligned(other);
        let num = a.iter().zip(&b).map(|(x, y)| x * &db + y * &da).collect();
        Cyclotomic::normalized(m, num, da * db)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, other: &Cyclotomic) -> Cyclotomic {
        self + &-other
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        if self.is_rational() || other.is_rational() {
            let (r, c) = if self.is_rational() { (self, other) } else { (other, self) };
            return Cyclotomic::normalized(
                c.conductor,
                c.num.iter().map(|x| x * &r.num[0]).collect(),
                &c.den * &r.den,
            );
        }
        let (m, a, b, da, db) = self.aligned(other);
        let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclotomic::normalized(m, reduce_mod_cyclotomic(m, prod), da * db)
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, other: &Cyclotomic) {
        *self = &*self + other;
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Written as a polynomial in `z<N> = exp(2 pi i / N)`, for example `1 + 2*z5^3`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.abs(), self.den.clone());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let z = match k {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{k}", self.conductor),
            };
            match (k, r.is_one()) {
                (0, _) => write!(f, "{r}")?,
                (_, true) => write!(f, "{z}")?,
                _ => write!(f, "{r}*{z}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as `{"conductor": N, "coords": [...]}` with exact rational coordinates.
impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("conductor", &self.conductor)?;
        let coords: Vec<serde_json::Value> = self.coords().iter().map(crate::json::rational).collect();
        st.serialize_field("coords", &coords)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(z(2, 1), Cyclotomic::from(-1));
        assert_eq!(z(4, 2), Cyclotomic::from(-1));
        assert_eq!(&z(3, 1) * &z(3, 2), Cyclotomic::one());
        // 1 + w + w^2 = 0
        assert!((&(&z(3, 0) + &z(3, 1)) + &z(3, 2)).is_zero());
        // the sum of all primitive 12th roots of unity is mu(12) = 0
        let s = [1, 5, 7, 11].iter().fold(Cyclotomic::zero(), |acc, &k| &acc + &z(12, k));
        assert!(s.is_zero());
        assert_eq!(z(5, 1).conj(), z(5, 4));
    }

    #[test]
    fn widening_is_compatible() {
        assert_eq!(z(3, 1), z(6, 2));
        assert_eq!(z(3, 1).widen(12), z(12, 4));
        assert_eq!(&z(4, 1) * &z(3, 1), z(12, 7));
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from(-1));
        // i = sqrt(-1), (1 + i)^2 = 2i
        let a = &Cyclotomic::one() + &z(4, 1);
        assert_eq!(&a * &a, &Cyclotomic::from(2) * &z(4, 1));
    }

    #[test]
    fn rationals_are_canonical() {
        let half = Cyclotomic::rational(BigRational::new(3.into(), 6.into()));
        assert_eq!(half.to_rational(), Some(BigRational::new(1.into(), 2.into())));
        let x = &z(5, 1) + &half;
        let back = &x - &z(5, 1);
        assert_eq!(back, half);
        assert_eq!(back.conductor(), 1);
    }

    #[test]
    fn json_and_display() {
        let x = &z(3, 1).scale(&BigRational::new(1.into(), 2.into())) + &Cyclotomic::one();
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"conductor":3,"coords":[1,"1/2"]}"#);
        assert_eq!(x.to_string(), "1 + 1/2*z3");
        let (re, im) = x.to_complex();
        assert!((re - 0.75).abs() < 1e-12 && (im - 3f64.sqrt() / 4.0).abs() < 1e-12);
    }

    fn element() -> impl Strategy<Value = Cyclotomic> {
        (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]), prop::collection::vec(-3i64..4, 0..6)).prop_map(|(n, cs)| {
            cs.iter().enumerate().fold(Cyclotomic::zero(), |acc, (k, &c)| {
                &acc + &(&Cyclotomic::from(c) * &Cyclotomic::root_of_unity(n, k as i64))
            })
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in element(), b in element(), c in element()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
        }
    }
}
