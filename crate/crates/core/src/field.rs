//! Finite fields `GF(p^s)` with table-driven arithmetic, plus the field
//! abstraction used by the generic linear algebra.

use std::fmt;
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{too_large, Error, Result};

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u64 = 13;
/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// The operations the linear-algebra routines need from a field.
pub trait FieldOps {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl FieldOps for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Writes `q = p^s` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut s = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        s += 1;
    }
    (r == 1).then_some((p, s))
}

/// The field with `p^s` elements.
///
/// An element is encoded as the integer `sum c_i p^i` of its coordinates
/// `c_i` in the basis `1, a, ..., a^(s-1)`, where `a` is the class of `x`
/// modulo the defining polynomial. The defining polynomial is the least
/// monic polynomial of degree `s` (ordering its lower coefficients by the
/// same integer encoding) whose root `a` generates the multiplicative
/// group. For `s = 1` it is `x - g` with `g` the least primitive root mod `p`,
/// so that `a = g`.
#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    s: u32,
    q: u32,
    /// Lower coefficients of the monic defining polynomial, constant term first.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    digits: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.s)
    }
}

impl GaloisField {
    pub fn new(p: u64, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(too_large("characteristic", p, MAX_CHARACTERISTIC));
        }
        if s == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        let q = p.checked_pow(s).filter(|&q| q <= MAX_FIELD_SIZE);
        let Some(q) = q else {
            return Err(too_large(format!("GF({p}^{s})"), format!("{p}^{s}"), MAX_FIELD_SIZE));
        };
        let (p, q) = (p as u32, q as u32);
        let digits: Vec<u32> = (0..q).flat_map(|x| (0..s).map(move |i| (x / p.pow(i)) % p)).collect();
        if s == 1 {
            let g = (1..p.max(2)).find(|&g| multiplicative_order(g, p) == p - 1).unwrap_or(1);
            let mut exp = Vec::with_capacity(q as usize);
            let mut x = 1u32;
            for _ in 0..q - 1 {
                exp.push(x);
                x = x * g % p;
            }
            return Ok(Self::from_exp(p, s, vec![(p - g) % p], exp, digits));
        }
        for code in 1..q {
            let lower: Vec<u32> = (0..s).map(|i| (code / p.pow(i)) % p).collect();
            if lower[0] == 0 {
                continue;
            }
            if let Some(exp) = power_cycle(p, &lower, q) {
                return Ok(Self::from_exp(p, s, lower, exp, digits));
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    fn from_exp(p: u32, s: u32, modulus: Vec<u32>, exp: Vec<u32>, digits: Vec<u32>) -> Self {
        let q = p.pow(s);
        let mut log = vec![u32::MAX; q as usize];
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }
        GaloisField { p, s, q, modulus, exp, log, digits }
    }

    /// The field with `q` elements.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, s) = prime_power(q).ok_or(Error::NotPrime(q))?;
        Self::new(p, s)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the monic defining polynomial, constant term first.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    /// The primitive element `a`.
    pub fn generator(&self) -> u32 {
        self.exp.get(1).copied().unwrap_or(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    fn digit(&self, x: u32, i: u32) -> u32 {
        self.digits[(x * self.s + i) as usize]
    }

    /// Coordinates in the basis `1, a, ..., a^(s-1)`.
    pub fn coordinates(&self, x: u32) -> Vec<u32> {
        (0..self.s).map(|i| self.digit(x, i)).collect()
    }

    pub fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.s == 1 {
            return (a + b) % self.p;
        }
        let mut out = 0;
        let mut place = 1;
        for i in 0..self.s {
            out += (self.digit(a, i) + self.digit(b, i)) % self.p * place;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.s == 1 {
            return (self.p - a) % self.p;
        }
        let mut out = 0;
        let mut place = 1;
        for i in 0..self.s {
            out += (self.p - self.digit(a, i)) % self.p * place;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in {self:?}");
        let k = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 * k) % (self.q as u64 - 1);
        self.exp[e as usize]
    }

    /// `a^k` for possibly negative `k`; `a` must be nonzero when `k < 0`.
    pub fn pow_signed(&self, a: u32, k: i64) -> u32 {
        if k >= 0 {
            self.pow(a, k as u64)
        } else {
            self.inv(self.pow(a, k.unsigned_abs()))
        }
    }

    /// Discrete logarithm to the base [`GaloisField::generator`].
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `a^(g^k)` for the generator; `a` with `log_g a = k` is `exp(k)`.
    pub fn exp(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// The Frobenius map `x -> x^p` applied `times` times.
    pub fn frobenius(&self, x: u32, times: u32) -> u32 {
        let e = (self.p as u64).pow(times % self.s.max(1));
        self.pow(x, e)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> u64 {
        let n = self.q as u64 - 1;
        let k = self.log[a as usize] as u64;
        n / num_integer::gcd(n, k)
    }

    /// Written as a polynomial in the generator `a`, e.g. `a^2 + 2a + 1`.
    pub fn format(&self, x: u32) -> String {
        if x == 0 {
            return "0".into();
        }
        let mut terms = Vec::new();
        for i in (0..self.s).rev() {
            let c = self.digit(x, i);
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}a"),
                _ => format!("{coeff}a^{i}"),
            });
        }
        terms.join(" + ")
    }

    /// The subfield fixed by `x -> x^(p^d)`, for `d` dividing the degree.
    pub fn subfield_elements(&self, d: u32) -> Vec<u32> {
        let e = (self.p as u64).pow(d);
        self.elements().filter(|&x| self.pow(x, e) == x).collect()
    }
}

fn multiplicative_order(g: u32, p: u32) -> u32 {
    let mut x = g % p;
    if x == 0 {
        return 0;
    }
    let mut k = 1;
    while x != 1 {
        x = x * g % p;
        k += 1;
    }
    k
}

/// Successive powers `1, x, x^2, ...` modulo `x^s + lower`, if `x` has order
/// exactly `q - 1` (then the polynomial is primitive).
fn power_cycle(p: u32, lower: &[u32], q: u32) -> Option<Vec<u32>> {
    let s = lower.len();
    let mut coeffs = vec![0u32; s];
    coeffs[0] = 1;
    let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
    let mut exp = Vec::with_capacity(q as usize - 1);
    for k in 0..q - 1 {
        let code = encode(&coeffs);
        if k > 0 && code == 1 {
            return None;
        }
        exp.push(code);
        // multiply by x: shift up and reduce x^s = -lower
        let top = coeffs[s - 1];
        for i in (1..s).rev() {
            coeffs[i] = coeffs[i - 1];
        }
        coeffs[0] = 0;
        for i in 0..s {
            coeffs[i] = (coeffs[i] + (p - lower[i]) % p * top) % p;
        }
    }
    (encode(&coeffs) == 1).then_some(exp)
}

impl FieldOps for GaloisField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        GaloisField::add(self, *a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        GaloisField::sub(self, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        GaloisField::mul(self, *a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        GaloisField::neg(self, *a)
    }
    fn inv(&self, a: &u32) -> u32 {
        GaloisField::inv(self, *a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
}
