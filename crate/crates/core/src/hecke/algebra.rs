use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::kl::CPrimeColumn;
use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::weyl::{ElementTable, WeylElement, WeylGroup};

/// Coefficients in the standard basis, keyed by element index in the table.
pub(crate) type Coeffs = BTreeMap<usize, LaurentPoly>;

/// The Iwahori-Hecke algebra of a finite Weyl group over `Z[v, v^-1]`,
/// with basis `T_w` and quadratic relation `(T_s + 1)(T_s - v^2) = 0`.
///
/// The algebra owns the enumeration of its group together with the memo
/// tables for the bar involution and the Kazhdan-Lusztig basis. Both tables
/// fill lazily and are safe to share between threads.
pub struct HeckeAlgebra {
    table: Arc<ElementTable>,
    bars: Vec<OnceLock<Arc<Coeffs>>>,
    pub(crate) cprimes: Vec<OnceLock<Arc<CPrimeColumn>>>,
    pub(crate) verify: bool,
}

impl fmt::Debug for HeckeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeckeAlgebra").field("group", &self.group().spec()).finish()
    }
}

impl HeckeAlgebra {
    /// Enumerates the group (refusing more than `bound` elements) and builds
    /// an empty algebra. Each Kazhdan-Lusztig element is checked against its
    /// defining properties as it is computed when debug assertions are on.
    pub fn new(group: &Arc<WeylGroup>, bound: u64) -> Result<Arc<Self>> {
        Ok(Self::from_table(Arc::new(ElementTable::new(group, bound)?)))
    }

    pub fn from_table(table: Arc<ElementTable>) -> Arc<Self> {
        Self::with_verification(table, cfg!(debug_assertions))
    }

    /// Like [`HeckeAlgebra::from_table`] with explicit control over the
    /// self-check of every computed `C'_w`.
    pub fn with_verification(table: Arc<ElementTable>, verify: bool) -> Arc<Self> {
        let n = table.len();
        Arc::new(HeckeAlgebra {
            table,
            bars: (0..n).map(|_| OnceLock::new()).collect(),
            cprimes: (0..n).map(|_| OnceLock::new()).collect(),
            verify,
        })
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        self.table.group()
    }

    pub fn table(&self) -> &Arc<ElementTable> {
        &self.table
    }

    pub fn zero(self: &Arc<Self>) -> HeckeElement {
        HeckeElement { algebra: self.clone(), coeffs: Coeffs::new() }
    }

    pub fn one(self: &Arc<Self>) -> HeckeElement {
        self.basis(0)
    }

    /// The standard basis element `T_w`.
    pub fn t(self: &Arc<Self>, w: &WeylElement) -> Result<HeckeElement> {
        Ok(self.basis(self.table.index_of(w)?))
    }

    /// `T_w` for the element with the given table index.
    pub fn basis(self: &Arc<Self>, x: usize) -> HeckeElement {
        assert!(x < self.table.len(), "element index {x} out of range");
        self.element(Coeffs::from([(x, LaurentPoly::one())]))
    }

    /// Builds `sum c_w T_w` from pairs of group elements and coefficients.
    pub fn from_terms(
        self: &Arc<Self>,
        terms: impl IntoIterator<Item = (WeylElement, LaurentPoly)>,
    ) -> Result<HeckeElement> {
        let mut coeffs = Coeffs::new();
        for (w, c) in terms {
            add_into(&mut coeffs, self.table.index_of(&w)?, &c);
        }
        Ok(self.element(coeffs))
    }

    pub(crate) fn element(self: &Arc<Self>, coeffs: Coeffs) -> HeckeElement {
        HeckeElement { algebra: self.clone(), coeffs }
    }

    /// `h * T_s` in the standard basis.
    pub(crate) fn right_mul_generator(&self, h: &Coeffs, s: usize) -> Coeffs {
        let mut out = Coeffs::new();
        let q_minus_one = LaurentPoly::from_terms([(2, BigInt::from(1)), (0, BigInt::from(-1))]);
        for (&x, c) in h {
            let xs = self.table.rmul(x, s);
            if self.table.length(xs) > self.table.length(x) {
                add_into(&mut out, xs, c);
            } else {
                add_into(&mut out, x, &(c * &q_minus_one));
                add_into(&mut out, xs, &c.shift(2));
            }
        }
        out
    }

    /// `T_s * h` in the standard basis.
    pub(crate) fn left_mul_generator(&self, s: usize, h: &Coeffs) -> Coeffs {
        let mut out = Coeffs::new();
        let q_minus_one = LaurentPoly::from_terms([(2, BigInt::from(1)), (0, BigInt::from(-1))]);
        for (&x, c) in h {
            let sx = self.table.lmul(x, s);
            if self.table.length(sx) > self.table.length(x) {
                add_into(&mut out, sx, c);
            } else {
                add_into(&mut out, x, &(c * &q_minus_one));
                add_into(&mut out, sx, &c.shift(2));
            }
        }
        out
    }

    pub(crate) fn multiply_coeffs(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        let mut out = Coeffs::new();
        for (&y, cy) in b {
            let mut prod = a.clone();
            for &s in self.table.word(y) {
                prod = self.right_mul_generator(&prod, s as usize);
            }
            for (x, c) in prod {
                add_into(&mut out, x, &(&c * cy));
            }
        }
        out
    }

    /// `bar(T_x) = T_{x^-1}^{-1}` in the standard basis, memoized.
    pub(crate) fn bar_basis(&self, x: usize) -> Arc<Coeffs> {
        self.bars[x]
            .get_or_init(|| {
                if x == 0 {
                    return Arc::new(Coeffs::from([(0, LaurentPoly::one())]));
                }
                let word = self.table.word(x);
                let s = *word.last().expect("non-identity element has a nonempty word") as usize;
                let prefix = self.table.rmul(x, s);
                let head = self.bar_basis(prefix);
                // bar(T_s) = v^-2 T_s + (v^-2 - 1) T_1
                let mut out: Coeffs =
                    self.right_mul_generator(&head, s).into_iter().map(|(y, c)| (y, c.shift(-2))).collect();
                let factor = LaurentPoly::from_terms([(-2, BigInt::from(1)), (0, BigInt::from(-1))]);
                for (&y, c) in head.iter() {
                    add_into(&mut out, y, &(c * &factor));
                }
                Arc::new(out)
            })
            .clone()
    }

    pub(crate) fn bar_coeffs(&self, h: &Coeffs) -> Coeffs {
        let mut out = Coeffs::new();
        for (&x, c) in h {
            let cb = c.bar();
            for (&y, d) in self.bar_basis(x).iter() {
                add_into(&mut out, y, &(&cb * d));
            }
        }
        out
    }
}

pub(crate) fn add_into(map: &mut Coeffs, x: usize, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(x).or_insert_with(LaurentPoly::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&x);
    }
}

/// An element `sum_w c_w T_w` of a Hecke algebra.
#[derive(Clone)]
pub struct HeckeElement {
    algebra: Arc<HeckeAlgebra>,
    coeffs: Coeffs,
}

impl HeckeElement {
    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `T_w`.
    pub fn coeff(&self, w: &WeylElement) -> Result<LaurentPoly> {
        let x = self.algebra.table.index_of(w)?;
        Ok(self.coeff_at(x))
    }

    /// Coefficient of `T_x` for the element with table index `x`.
    pub fn coeff_at(&self, x: usize) -> LaurentPoly {
        self.coeffs.get(&x).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Nonzero terms, ordered by the table index of the basis element.
    pub fn terms(&self) -> impl Iterator<Item = (WeylElement, &LaurentPoly)> + '_ {
        self.coeffs.iter().map(|(&x, c)| (self.algebra.table.element(x), c))
    }

    pub fn support_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    fn same_algebra(&self, other: &HeckeElement) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::MixedGroups)
        }
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.same_algebra(other)?;
        let mut coeffs = self.coeffs.clone();
        for (&x, c) in &other.coeffs {
            add_into(&mut coeffs, x, c);
        }
        Ok(self.algebra.element(coeffs))
    }

    pub fn sub(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.add(&other.scale(&LaurentPoly::from(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let mut coeffs = Coeffs::new();
        for (&x, d) in &self.coeffs {
            add_into(&mut coeffs, x, &(d * c));
        }
        self.algebra.element(coeffs)
    }

    /// Product in the Hecke algebra.
    pub fn t_multiply(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.same_algebra(other)?;
        Ok(self.algebra.element(self.algebra.multiply_coeffs(&self.coeffs, &other.coeffs)))
    }

    /// The bar involution `v^n T_w -> v^-n T_{w^-1}^{-1}`.
    pub fn bar(&self) -> HeckeElement {
        self.algebra.element(self.algebra.bar_coeffs(&self.coeffs))
    }
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

impl Eq for HeckeElement {}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (&x, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) T[{}]", self.algebra.table.word_string(x))?;
        }
        Ok(())
    }
}

/// Serialized as a map from reduced word to the Laurent coefficient.
impl Serialize for HeckeElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (&x, c) in &self.coeffs {
            map.serialize_entry(&self.algebra.table.word_string(x), c)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn algebra(spec: &str) -> Arc<HeckeAlgebra> {
        HeckeAlgebra::new(&WeylGroup::new(spec.parse().unwrap()).unwrap(), 100_000).unwrap()
    }

    fn t_word(h: &Arc<HeckeAlgebra>, word: &[usize]) -> HeckeElement {
        h.t(&h.group().from_word(word).unwrap()).unwrap()
    }

    #[test]
    fn generator_relations() {
        let h = algebra("A2");
        let t1 = t_word(&h, &[0]);
        let t2 = t_word(&h, &[1]);
        assert_eq!(t1.t_multiply(&t2).unwrap(), t_word(&h, &[0, 1]));
        // T_s^2 = (v^2 - 1) T_s + v^2 T_1
        let expected = t1
            .scale(&LaurentPoly::from_terms([(2, 1.into()), (0, (-1).into())]))
            .add(&h.one().scale(&LaurentPoly::v_pow(2)))
            .unwrap();
        assert_eq!(t1.t_multiply(&t1).unwrap(), expected);
        assert_eq!(h.one().t_multiply(&t2).unwrap(), t2);
        // braid relation
        let a = t1.t_multiply(&t2).unwrap().t_multiply(&t1).unwrap();
        let b = t2.t_multiply(&t1).unwrap().t_multiply(&t2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn quadratic_relation_for_every_generator() {
        for spec in ["A3", "B2", "G2"] {
            let h = algebra(spec);
            for s in 0..h.group().rank() {
                let ts = t_word(&h, &[s]);
                // (T_s + 1)(T_s - v^2) = 0
                let a = ts.add(&h.one()).unwrap();
                let b = ts.sub(&h.one().scale(&LaurentPoly::v_pow(2))).unwrap();
                assert!(a.t_multiply(&b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn bar_examples() {
        let h = algebra("A2");
        assert_eq!(h.one().bar(), h.one());
        assert_eq!(h.one().scale(&LaurentPoly::v_pow(1)).bar(), h.one().scale(&LaurentPoly::v_pow(-1)));
        let ts = t_word(&h, &[0]);
        let expected = ts
            .scale(&LaurentPoly::v_pow(-2))
            .add(&h.one().scale(&LaurentPoly::from_terms([(-2, 1.into()), (0, (-1).into())])))
            .unwrap();
        assert_eq!(ts.bar(), expected);
        assert_eq!(ts.t_multiply(&ts.bar()).unwrap(), h.one());
    }

    #[test]
    fn bar_of_basis_inverts_inverse_basis() {
        let h = algebra("B2");
        let t = h.table().clone();
        for x in 0..t.len() {
            let prod = h.basis(t.inverse(x)).t_multiply(&h.basis(x).bar()).unwrap();
            assert_eq!(prod, h.one());
        }
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let a = algebra("A2");
        let b = algebra("A2");
        assert!(matches!(a.one().t_multiply(&b.one()), Err(Error::MixedGroups)));
        let w = b.group().identity();
        assert!(matches!(a.t(&w), Err(Error::MixedGroups)));
    }

    fn random_element(h: &Arc<HeckeAlgebra>, terms: &[(usize, i32, i64)]) -> HeckeElement {
        let mut coeffs = Coeffs::new();
        for &(x, e, c) in terms {
            add_into(&mut coeffs, x % h.table().len(), &LaurentPoly::monomial(c, e));
        }
        h.element(coeffs)
    }

    fn terms_strategy() -> impl Strategy<Value = Vec<(usize, i32, i64)>> {
        prop::collection::vec((0usize..1000, -3i32..4, -3i64..4), 0..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn associativity_on_basis_triples(x in 0usize..24, y in 0usize..24, z in 0usize..24, w in 0usize..8) {
            for (h, a, b, c) in [(algebra("A3"), x, y, z), (algebra("B2"), x % 8, y % 8, w)] {
                let (a, b, c) = (h.basis(a), h.basis(b), h.basis(c));
                let left = a.t_multiply(&b).unwrap().t_multiply(&c).unwrap();
                let right = a.t_multiply(&b.t_multiply(&c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }
        }

        #[test]
        fn bar_is_a_ring_involution(a in terms_strategy(), b in terms_strategy()) {
            let h = algebra("A3");
            let a = random_element(&h, &a);
            let b = random_element(&h, &b);
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!(a.add(&b).unwrap().bar(), a.bar().add(&b.bar()).unwrap());
            prop_assert_eq!(a.t_multiply(&b).unwrap().bar(), a.bar().t_multiply(&b.bar()).unwrap());
        }
    }
}
