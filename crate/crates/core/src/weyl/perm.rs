use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CoxeterSpec, Family};
use crate::error::{Error, Result};

/// A permutation of `{1, ..., m}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BigPermutation {
    images: Vec<u32>,
}

impl BigPermutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in &images {
            if x == 0 || x as usize > m || seen[x as usize] {
                return Err(Error::NotPermutation(format!("{images:?}")));
            }
            seen[x as usize] = true;
        }
        Ok(BigPermutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        BigPermutation { images }
    }

    pub fn identity(m: usize) -> Self {
        BigPermutation { images: (1..=m as u32).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of `x`, 1-based.
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize - 1]
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &BigPermutation) -> BigPermutation {
        BigPermutation { images: other.images.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn inverse(&self) -> BigPermutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = i as u32 + 1;
        }
        BigPermutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// Whether `self` commutes with `i -> m+1-i`.
    pub fn commutes_with_involution(&self) -> bool {
        let m = self.images.len() as u32;
        (1..=m).all(|i| self.apply(m + 1 - i) == m + 1 - self.apply(i))
    }

    /// Cycle lengths including fixed points, in increasing order.
    pub fn cycle_type(&self) -> Vec<u32> {
        cycle_type(self)
    }

    /// Number of inversions (the type A length).
    pub fn inversions(&self) -> usize {
        let v = &self.images;
        (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count()).sum()
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let m = self.images.len();
        let mut seen = vec![false; m + 1];
        let mut out = Vec::new();
        for start in 1..=m as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }
}

pub fn cycle_type(p: &BigPermutation) -> Vec<u32> {
    let mut t: Vec<u32> = p.cycles().iter().map(|c| c.len() as u32).collect();
    t.sort_unstable();
    t
}

impl fmt::Display for BigPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn transposition(m: usize, pairs: &[(u32, u32)]) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=m as u32).collect();
    for &(a, b) in pairs {
        v.swap(a as usize - 1, b as usize - 1);
    }
    v
}

/// Generator images for the classical permutation models.
pub(crate) fn generator_permutations(spec: CoxeterSpec) -> Option<Vec<Vec<u32>>> {
    let n = spec.rank as u32;
    let gens = match spec.family {
        Family::A => (1..=n).map(|i| transposition(spec.rank + 1, &[(i, i + 1)])).collect(),
        Family::B | Family::C | Family::D => {
            let m = 2 * n;
            let mut g: Vec<Vec<u32>> =
                (1..n).map(|i| transposition(m as usize, &[(i, i + 1), (m + 1 - i, m - i)])).collect();
            if spec.family == Family::D {
                g.push(transposition(m as usize, &[(n - 1, n + 1), (n, n + 2)]));
            } else {
                g.push(transposition(m as usize, &[(n, n + 1)]));
            }
            g
        }
        _ => return None,
    };
    Some(gens)
}

/// Right descents of a permutation in the classical models, matching the
/// generator numbering of [`generator_permutations`].
pub(crate) fn permutation_right_descent(spec: CoxeterSpec, p: &BigPermutation, i: usize) -> bool {
    let n = spec.rank;
    let v = p.images();
    match spec.family {
        Family::A => v[i] > v[i + 1],
        _ if i + 1 < n => v[i] > v[i + 1],
        Family::D => v[n - 2] > v[n],
        _ => v[n - 1] > v[n],
    }
}

impl super::WeylGroup {
    /// The element whose permutation model is `p`.
    pub fn from_big_permutation(self: &std::sync::Arc<Self>, p: &BigPermutation) -> Result<super::WeylElement> {
        let spec = self.spec();
        let gens = self.perm_generators().ok_or_else(|| Error::UnsupportedFamily(spec.to_string()))?;
        if Some(p.degree()) != spec.permutation_degree() {
            return Err(Error::DimensionMismatch(format!("{spec} acts on {:?} points, got {}", spec.permutation_degree(), p.degree())));
        }
        if spec.family != Family::A && !p.commutes_with_involution() {
            return Err(Error::InvalidInput(format!("{p} does not commute with the involution")));
        }
        let mut cur = p.clone();
        let mut stripped = Vec::new();
        while let Some(i) = (0..spec.rank).find(|&i| permutation_right_descent(spec, &cur, i)) {
            cur = cur.compose(&BigPermutation::from_images_unchecked(gens[i].clone()));
            stripped.push(i);
        }
        if !cur.is_identity() {
            return Err(Error::InvalidInput(format!("{p} is not in W({spec})")));
        }
        stripped.reverse();
        self.from_word(&stripped)
    }
}
