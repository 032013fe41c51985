use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::algebra::{add_into, Coeffs, HeckeAlgebra, HeckeElement};
use super::LaurentPoly;
use crate::error::Result;
use crate::weyl::WeylElement;

/// The standard-basis coefficients of one `C'_w`: `T_y -> v^-l(w) P_{y,w}(v^2)`.
pub(crate) type CPrimeColumn = Coeffs;

/// A polynomial in `q`, stored by its coefficient sequence (constant term first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct QPoly {
    #[serde(serialize_with = "serialize_big_ints")]
    coeffs: Vec<BigInt>,
}

fn serialize_big_ints<S: Serializer>(cs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let values: Vec<serde_json::Value> = cs.iter().map(crate::json::big_int).collect();
    values.serialize(s)
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    /// Reads `v^shift * P(v^2)` back as `P`; `None` if some exponent does not fit.
    fn from_laurent(l: &LaurentPoly, shift: i32) -> Option<Self> {
        let mut coeffs = Vec::new();
        for (e, c) in l.terms() {
            let e = e - shift;
            if e < 0 || e % 2 != 0 {
                return None;
            }
            let k = (e / 2) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(QPoly::new(coeffs))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &BigInt::zero();
            let abs = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let show = k == 0 || !abs.is_one();
            if show {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl HeckeAlgebra {
    /// Standard-basis coefficients of `C'_x`, computed on first use.
    pub(crate) fn cprime_column(&self, x: usize) -> Arc<CPrimeColumn> {
        if let Some(c) = self.cprimes[x].get() {
            return c.clone();
        }
        let computed = Arc::new(self.compute_cprime(x));
        if self.verify {
            self.check_cprime(x, &computed);
        }
        self.cprimes[x].get_or_init(|| computed).clone()
    }

    /// `C'_s C'_{sw} - sum_{z < sw, sz < z} mu(z, sw) C'_z` with `s` the
    /// smallest left descent of `w`.
    fn compute_cprime(&self, w: usize) -> CPrimeColumn {
        let table = self.table();
        if w == 0 {
            return Coeffs::from([(0, LaurentPoly::one())]);
        }
        let s = table.word(w)[0] as usize;
        let x = table.lmul(w, s);
        let cx = self.cprime_column(x);
        // C'_s = v^-1 (T_1 + T_s)
        let mut out: Coeffs = cx.iter().map(|(&y, c)| (y, c.shift(-1))).collect();
        for (y, c) in self.left_mul_generator(s, &cx) {
            add_into(&mut out, y, &c.shift(-1));
        }
        for z in self.lower_mu_neighbours(x) {
            if z.0 != x && table.is_left_descent(z.0, s) {
                let cz = self.cprime_column(z.0);
                let m = LaurentPoly::from_terms([(0, z.1.clone())]);
                for (&y, c) in cz.iter() {
                    add_into(&mut out, y, &-&(c * &m));
                }
            }
        }
        out
    }

    /// Pairs `(z, mu(z, w))` for `z < w` with nonzero `mu`.
    pub(crate) fn lower_mu_neighbours(&self, w: usize) -> Vec<(usize, BigInt)> {
        let col = self.cprime_column(w);
        col.iter()
            .filter(|(&z, _)| z != w)
            .filter_map(|(&z, c)| {
                let m = c.coeff(-(self.table().length(z) as i32) - 1);
                (!m.is_zero()).then_some((z, m))
            })
            .collect()
    }

    fn check_cprime(&self, w: usize, col: &CPrimeColumn) {
        let lw = self.table().length(w) as i32;
        assert_eq!(col.get(&w), Some(&LaurentPoly::v_pow(-lw)), "P_(w,w) must be 1");
        for (&y, c) in col {
            if y == w {
                continue;
            }
            let ly = self.table().length(y) as i32;
            let p = QPoly::from_laurent(c, -lw)
                .unwrap_or_else(|| panic!("C'_w coefficient {c} is not v^-l(w) times a polynomial in v^2"));
            let bound = (lw - ly - 1).div_euclid(2);
            assert!(
                p.degree().is_some_and(|d| d as i32 <= bound),
                "degree bound violated for P_(y,w) = {p} with l(w) - l(y) = {}",
                lw - ly
            );
        }
        assert_eq!(&self.bar_coeffs(col), col, "C'_w is not bar-invariant");
    }

    fn pair(&self, y: &WeylElement, w: &WeylElement) -> Result<(usize, usize)> {
        Ok((self.table().index_of(y)?, self.table().index_of(w)?))
    }

    /// The Kazhdan-Lusztig basis element `C'_w`.
    pub fn cprime(self: &Arc<Self>, w: &WeylElement) -> Result<HeckeElement> {
        let x = self.table().index_of(w)?;
        Ok(self.cprime_at(x))
    }

    pub fn cprime_at(self: &Arc<Self>, x: usize) -> HeckeElement {
        self.element((*self.cprime_column(x)).clone())
    }

    /// `P_{y,w}` as a polynomial in `q = v^2`; zero unless `y <= w`.
    pub fn kl_polynomial(&self, y: &WeylElement, w: &WeylElement) -> Result<QPoly> {
        let (y, w) = self.pair(y, w)?;
        Ok(self.kl_polynomial_at(y, w))
    }

    pub fn kl_polynomial_at(&self, y: usize, w: usize) -> QPoly {
        let col = self.cprime_column(w);
        match col.get(&y) {
            Some(c) => QPoly::from_laurent(c, -(self.table().length(w) as i32))
                .expect("C'_w coefficients have the shape v^-l(w) P(v^2)"),
            None => QPoly::zero(),
        }
    }

    /// The coefficient of `q^((l(w)-l(y)-1)/2)` in `P_{y,w}` (zero for even
    /// length difference).
    pub fn mu(&self, y: &WeylElement, w: &WeylElement) -> Result<BigInt> {
        let (y, w) = self.pair(y, w)?;
        Ok(self.mu_at(y, w))
    }

    pub fn mu_at(&self, y: usize, w: usize) -> BigInt {
        if y == w {
            return BigInt::zero();
        }
        let col = self.cprime_column(w);
        col.get(&y).map(|c| c.coeff(-(self.table().length(y) as i32) - 1)).unwrap_or_default()
    }

    /// Every `P_{y,w}` with `y <= w`.
    pub fn kl_table(self: &Arc<Self>) -> KlTable {
        let mut entries = BTreeMap::new();
        for w in 0..self.table().len() {
            for y in self.cprime_column(w).keys() {
                entries.insert((*y, w), self.kl_polynomial_at(*y, w));
            }
        }
        KlTable { algebra: self.clone(), entries }
    }

    /// Computes `Pi(X) = sum_{y <= w} X^l(y) P_{y,w}(X)` and checks
    /// `X^l(w) Pi(1/X) = Pi(X)`.
    pub fn palindrome_check(&self, w: &WeylElement) -> Result<PalindromeReport> {
        let x = self.table().index_of(w)?;
        Ok(self.palindrome_check_at(x))
    }

    pub fn palindrome_check_at(&self, w: usize) -> PalindromeReport {
        let lw = self.table().length(w);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for &y in self.cprime_column(w).keys() {
            let ly = self.table().length(y);
            for (k, c) in self.kl_polynomial_at(y, w).coeffs().iter().enumerate() {
                if coeffs.len() <= ly + k {
                    coeffs.resize(ly + k + 1, BigInt::zero());
                }
                coeffs[ly + k] += c;
            }
        }
        let poly = QPoly::new(coeffs);
        let palindromic = poly.degree().is_some_and(|d| d <= lw)
            && (0..=lw).all(|i| poly.coeff(i) == poly.coeff(lw - i));
        PalindromeReport { w: self.table().word_string(w), length: lw, polynomial: poly, palindromic }
    }
}

/// Result of the palindromicity check for the Poincare polynomial of a
/// Bruhat interval weighted by Kazhdan-Lusztig polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PalindromeReport {
    pub w: String,
    pub length: usize,
    /// Coefficients of `Pi(X)`, constant term first.
    pub polynomial: QPoly,
    pub palindromic: bool,
}

/// All Kazhdan-Lusztig polynomials `P_{y,w}` of a group, keyed by table indices.
#[derive(Clone)]
pub struct KlTable {
    algebra: Arc<HeckeAlgebra>,
    entries: BTreeMap<(usize, usize), QPoly>,
}

impl fmt::Debug for KlTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KlTable").field("group", &self.algebra.group().spec()).field("pairs", &self.len()).finish()
    }
}

impl KlTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, y: &WeylElement, w: &WeylElement) -> Result<QPoly> {
        self.algebra.kl_polynomial(y, w)
    }

    /// `((y, w), P_{y,w})` for all `y <= w`, ordered by `(y, w)` table index.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &QPoly)> {
        self.entries.iter().map(|(&k, p)| (k, p))
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.algebra
    }
}

struct KlEntry<'a> {
    y: String,
    w: String,
    coeffs: &'a QPoly,
}

impl Serialize for KlEntry<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("KlEntry", 3)?;
        st.serialize_field("y", &self.y)?;
        st.serialize_field("w", &self.w)?;
        st.serialize_field("coeffs", self.coeffs)?;
        st.end()
    }
}

/// Serialized as an array of `{y, w, coeffs}` objects with reduced words.
impl Serialize for KlTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let t = self.algebra.table();
        serializer.collect_seq(self.entries.iter().map(|(&(y, w), p)| KlEntry {
            y: t.word_string(y),
            w: t.word_string(w),
            coeffs: p,
        }))
    }
}
