use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::perm::{generator_permutations, BigPermutation};
use super::roots::RootSystem;
use super::CoxeterSpec;
use crate::error::{Error, Result};

/// A finite Weyl group acting on its root system.
pub struct WeylGroup {
    spec: CoxeterSpec,
    pub(crate) roots: RootSystem,
    order: OnceLock<BigUint>,
    perm_generators: Option<Vec<Vec<u32>>>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylGroup").field("spec", &self.spec).finish_non_exhaustive()
    }
}

impl WeylGroup {
    pub fn new(spec: CoxeterSpec) -> Result<Arc<Self>> {
        let spec = CoxeterSpec::new(spec.family, spec.rank)?;
        let roots = RootSystem::new(spec)?;
        Ok(Arc::new(WeylGroup { spec, roots, order: OnceLock::new(), perm_generators: generator_permutations(spec) }))
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn n_roots(&self) -> usize {
        self.roots.n_roots()
    }

    pub fn n_positive_roots(&self) -> usize {
        self.roots.n_positive
    }

    pub fn order(&self) -> &BigUint {
        self.order.get_or_init(|| self.spec.group_order())
    }

    /// The action of generator `i` as a permutation of the root list.
    pub fn generator_action(&self, i: usize) -> &[u16] {
        &self.roots.reflections[i]
    }

    pub(crate) fn perm_generators(&self) -> Option<&[Vec<u32>]> {
        self.perm_generators.as_deref()
    }

    pub fn identity(self: &Arc<Self>) -> WeylElement {
        let images: Box<[u16]> = (0..self.rank() as u16).collect();
        WeylElement::from_images(self.clone(), images)
    }

    pub fn generator(self: &Arc<Self>, i: usize) -> Result<WeylElement> {
        if i >= self.rank() {
            return Err(Error::InvalidInput(format!("generator index {i} out of range for {}", self.spec)));
        }
        Ok(self.identity().left_mul_generator(i))
    }

    /// Product of generators, 0-based indices.
    pub fn from_word(self: &Arc<Self>, word: &[usize]) -> Result<WeylElement> {
        let mut images: Box<[u16]> = (0..self.rank() as u16).collect();
        for &i in word.iter().rev() {
            if i >= self.rank() {
                return Err(Error::InvalidInput(format!("generator index {i} out of range for {}", self.spec)));
            }
            images = self.lmul(&images, i);
        }
        Ok(WeylElement::from_images(self.clone(), images))
    }

    /// Parse a word such as `"s1 s2 s1"` (1-based). `""`, `"1"` and `"e"`
    /// denote the identity; commas, dots and `*` are accepted as separators.
    pub fn parse_element(self: &Arc<Self>, text: &str) -> Result<WeylElement> {
        let word = parse_word(text)?;
        self.from_word(&word)
    }

    pub fn coxeter_element(self: &Arc<Self>) -> WeylElement {
        let word: Vec<usize> = (0..self.rank()).collect();
        self.from_word(&word).expect("indices in range")
    }

    pub fn longest_element(self: &Arc<Self>) -> WeylElement {
        // the element sending every positive root to a negative one
        let mut w = self.identity();
        while let Some(i) = (0..self.rank()).find(|&i| !w.is_right_descent(i)) {
            w = w.right_mul_generator(i);
        }
        w
    }

    pub(crate) fn lmul(&self, images: &[u16], i: usize) -> Box<[u16]> {
        let refl = &self.roots.reflections[i];
        images.iter().map(|&r| refl[r as usize]).collect()
    }

    pub(crate) fn rmul(&self, images: &[u16], i: usize) -> Box<[u16]> {
        let refl = &self.roots.reflections[i];
        (0..self.rank())
            .map(|j| {
                let sj = refl[j];
                if sj as usize == j {
                    images[j]
                } else if sj == self.roots.negate(j as u16) {
                    self.roots.negate(images[j])
                } else {
                    self.roots.apply(images, sj)
                }
            })
            .collect()
    }

    pub(crate) fn compose(&self, a: &[u16], b: &[u16]) -> Box<[u16]> {
        b.iter().map(|&r| self.roots.apply(a, r)).collect()
    }

    pub(crate) fn is_identity_images(&self, images: &[u16]) -> bool {
        images.iter().enumerate().all(|(j, &r)| r as usize == j)
    }
}

pub(crate) fn parse_word(text: &str) -> Result<Vec<usize>> {
    let cleaned: String =
        text.chars().map(|c| if matches!(c, ',' | '.' | '*' | '\u{b7}') { ' ' } else { c }).collect();
    let t = cleaned.trim();
    if t.is_empty() || t == "1" || t == "e" || t == "id" {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    // allow both "s1 s2" and "s1s2"
    for token in t.split_whitespace() {
        for piece in token.split('s').filter(|p| !p.is_empty()) {
            let k: usize = piece.parse().map_err(|_| Error::Parse(format!("bad generator '{piece}' in '{text}'")))?;
            if k == 0 {
                return Err(Error::Parse(format!("generators are numbered from 1: '{text}'")));
            }
            word.push(k - 1);
        }
        if !token.starts_with('s') {
            return Err(Error::Parse(format!("expected tokens like s1, got '{token}'")));
        }
    }
    Ok(word)
}

#[derive(Debug)]
struct Cached {
    length: usize,
    word: Vec<usize>,
    inverse: Box<[u16]>,
}

/// An element of a [`WeylGroup`], identified by the images of the simple roots.
#[derive(Clone)]
pub struct WeylElement {
    group: Arc<WeylGroup>,
    images: Box<[u16]>,
    cache: OnceLock<Arc<Cached>>,
}

impl WeylElement {
    pub(crate) fn from_images(group: Arc<WeylGroup>, images: Box<[u16]>) -> Self {
        WeylElement { group, images, cache: OnceLock::new() }
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    /// Root-list indices of the images of the simple roots.
    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.group.is_identity_images(&self.images)
    }

    fn same_group(&self, other: &WeylElement) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::MixedGroups)
        }
    }

    fn cached(&self) -> &Cached {
        self.cache.get_or_init(|| {
            let g = &self.group;
            // strip right descents to get the inverse and the length
            let mut cur = self.images.clone();
            let mut stripped = Vec::new();
            while let Some(i) = (0..g.rank()).find(|&i| !g.roots.is_positive(cur[i])) {
                cur = g.rmul(&cur, i);
                stripped.push(i);
            }
            let mut inverse: Box<[u16]> = (0..g.rank() as u16).collect();
            for &i in stripped.iter().rev() {
                inverse = g.lmul(&inverse, i);
            }
            // ShortLex: repeatedly take the smallest left descent
            let mut inv = inverse.clone();
            let mut word = Vec::with_capacity(stripped.len());
            while let Some(i) = (0..g.rank()).find(|&i| !g.roots.is_positive(inv[i])) {
                word.push(i);
                inv = g.rmul(&inv, i);
            }
            Arc::new(Cached { length: stripped.len(), word, inverse })
        })
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        self.cached().length
    }

    /// The ShortLex-least reduced word, 0-based generator indices.
    pub fn reduced_word(&self) -> &[usize] {
        &self.cached().word
    }

    /// The reduced word rendered as `"s1 s2 s1"`, or `"1"` for the identity.
    pub fn word_string(&self) -> String {
        format_word(self.reduced_word())
    }

    pub fn multiply(&self, other: &WeylElement) -> Result<WeylElement> {
        self.same_group(other)?;
        Ok(WeylElement::from_images(self.group.clone(), self.group.compose(&self.images, &other.images)))
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement::from_images(self.group.clone(), self.cached().inverse.clone())
    }

    pub fn left_mul_generator(&self, i: usize) -> WeylElement {
        WeylElement::from_images(self.group.clone(), self.group.lmul(&self.images, i))
    }

    pub fn right_mul_generator(&self, i: usize) -> WeylElement {
        WeylElement::from_images(self.group.clone(), self.group.rmul(&self.images, i))
    }

    /// `s_i` is a right descent when `w(alpha_i)` is negative.
    pub fn is_right_descent(&self, i: usize) -> bool {
        !self.group.roots.is_positive(self.images[i])
    }

    pub fn is_left_descent(&self, i: usize) -> bool {
        !self.group.roots.is_positive(self.cached().inverse[i])
    }

    pub fn descents(&self, side: Side) -> Vec<usize> {
        (0..self.group.rank())
            .filter(|&i| match side {
                Side::Left => self.is_left_descent(i),
                Side::Right => self.is_right_descent(i),
            })
            .collect()
    }

    /// Generators appearing in a (equivalently, every) reduced word.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.reduced_word().to_vec();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn conjugate_by_generator(&self, i: usize) -> WeylElement {
        let g = &self.group;
        WeylElement::from_images(g.clone(), g.rmul(&g.lmul(&self.images, i), i))
    }

    /// Matrix on the reflection representation in the simple-root basis.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.group.roots.matrix(&self.images)
    }

    /// Image under the permutation model of a classical group.
    pub fn to_big_permutation(&self) -> Result<BigPermutation> {
        let gens = self
            .group
            .perm_generators()
            .ok_or_else(|| Error::UnsupportedFamily(self.group.spec().to_string()))?;
        let degree = gens[0].len();
        let mut p = BigPermutation::identity(degree);
        for &i in self.reduced_word() {
            p = p.compose(&BigPermutation::from_images_unchecked(gens[i].clone()));
        }
        Ok(p)
    }
}

pub(crate) fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.images == other.images
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by length, then by ShortLex reduced word.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.reduced_word().cmp(other.reduced_word()))
            .then_with(|| self.images.cmp(&other.images))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.group.spec(), self.word_string())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.word_string())
    }
}
