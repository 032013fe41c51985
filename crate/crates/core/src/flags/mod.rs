//! Complete flags over finite fields, relative position, Deligne–Lusztig
//! point counts, the Drinfeld curve and flag-function spaces.

mod brauer;
mod dl;
mod drinfeld;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{too_large, Error, Result};
use crate::field::GaloisField;
use crate::linalg::{self, Matrix};
use crate::weyl::BigPermutation;

pub use brauer::{
    brauer_character, brauer_space_dim, kernel_stability_check, BrauerMode, BrauerValue, FlagFunctionSpace,
};
pub use dl::{
    coxeter_condition_check, coxeter_condition_check_bounded, coxeter_element, dl_piece_counts, dl_piece_counts_bounded,
    CoxeterCheck, DlCountReport, GroupType,
};
pub use drinfeld::{drinfeld_count, drinfeld_solutions_brute_force, DrinfeldReport};

/// Largest number of flags the enumerators will produce.
pub const FLAG_BOUND: u64 = 1_000_000;

/// The alternating form `x_1 y_N - x_N y_1 + x_2 y_(N-1) - ... ` on `F^N`,
/// `N = 2n`, with Gram matrix entries `J[i][N-1-i] = 1` and
/// `J[N-1-i][i] = -1` for `i < n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymplecticForm {
    dimension: usize,
}

impl SymplecticForm {
    pub fn new(dimension: usize) -> Result<Self> {
        if dimension % 2 != 0 || dimension == 0 {
            return Err(Error::DimensionMismatch(format!("symplectic space of odd or zero dimension {dimension}")));
        }
        Ok(SymplecticForm { dimension })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn gram(&self, f: &GaloisField) -> Matrix<u32> {
        let n = self.dimension;
        let mut j = vec![vec![0; n]; n];
        for i in 0..n / 2 {
            j[i][n - 1 - i] = 1;
            j[n - 1 - i][i] = f.neg(1);
        }
        j
    }

    pub fn pair(&self, f: &GaloisField, x: &[u32], y: &[u32]) -> u32 {
        let n = self.dimension;
        (0..n / 2).fold(0, |acc, i| {
            let t = f.sub(f.mul(x[i], y[n - 1 - i]), f.mul(x[n - 1 - i], y[i]));
            f.add(acc, t)
        })
    }

    /// The orthogonal complement of the row space of `rows`, in reduced form.
    pub fn perp(&self, f: &GaloisField, rows: &Matrix<u32>) -> Matrix<u32> {
        let n = self.dimension;
        // x is perpendicular to v iff sum_k (v J)_k x_k = 0
        let j = self.gram(f);
        let constraints: Matrix<u32> = if rows.is_empty() { vec![vec![0; n]] } else { linalg::multiply(f, rows, &j) };
        linalg::rref(f, linalg::kernel(f, constraints, n)).0
    }
}

/// A complete flag `V_1 < V_2 < ... < V_(n-1)` in `F^n`, each space stored
/// as the reduced row echelon form of a basis, so equal flags compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flag {
    dimension: usize,
    spaces: Vec<Matrix<u32>>,
}

impl Flag {
    /// Builds a flag from the first `n - 1` rows of a basis matrix, in order.
    pub fn from_basis(f: &GaloisField, basis: &Matrix<u32>) -> Result<Self> {
        let n = basis.len();
        if basis.iter().any(|row| row.len() != n) || linalg::rank(f, basis.clone()) != n {
            return Err(Error::InvalidInput("a flag basis must be an invertible square matrix".into()));
        }
        let spaces = (1..n).map(|i| linalg::rref(f, basis[..i].to_vec()).0).collect();
        Ok(Flag { dimension: n, spaces })
    }

    /// Builds a flag from nested subspaces given by spanning rows.
    pub fn from_spaces(f: &GaloisField, dimension: usize, spaces: Vec<Matrix<u32>>) -> Result<Self> {
        if spaces.len() + 1 != dimension.max(1) {
            return Err(Error::DimensionMismatch(format!("{} subspaces in dimension {dimension}", spaces.len())));
        }
        let mut reduced = Vec::with_capacity(spaces.len());
        for (i, rows) in spaces.into_iter().enumerate() {
            if rows.iter().any(|r| r.len() != dimension) {
                return Err(Error::DimensionMismatch(format!("vector length differs from {dimension}")));
            }
            let (r, _) = linalg::rref(f, rows);
            if r.len() != i + 1 {
                return Err(Error::InvalidInput(format!("V_{} has dimension {}", i + 1, r.len())));
            }
            if let Some(prev) = reduced.last() {
                let joined: Matrix<u32> = r.iter().chain(prev).cloned().collect();
                if linalg::rank(f, joined) != i + 1 {
                    return Err(Error::InvalidInput(format!("V_{i} is not contained in V_{}", i + 1)));
                }
            }
            reduced.push(r);
        }
        Ok(Flag { dimension, spaces: reduced })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `V_i` for `1 <= i < n`, in reduced row echelon form.
    pub fn space(&self, i: usize) -> &Matrix<u32> {
        &self.spaces[i - 1]
    }

    pub fn spaces(&self) -> &[Matrix<u32>] {
        &self.spaces
    }

    /// The normalized spanning vector of the line `V_1`.
    pub fn line(&self) -> &[u32] {
        &self.spaces[0][0]
    }

    /// Applies the field automorphism `x -> x^(p^times)` to every coordinate.
    pub fn frobenius(&self, f: &GaloisField, times: u32) -> Flag {
        let spaces = self
            .spaces
            .iter()
            .map(|m| m.iter().map(|row| row.iter().map(|&x| f.frobenius(x, times)).collect()).collect())
            .collect();
        Flag { dimension: self.dimension, spaces }
    }

    /// The image under `v -> g v`.
    pub fn transform(&self, f: &GaloisField, g: &Matrix<u32>) -> Flag {
        let spaces = self
            .spaces
            .iter()
            .map(|m| linalg::rref(f, m.iter().map(|row| linalg::apply(f, g, row)).collect()).0)
            .collect();
        Flag { dimension: self.dimension, spaces }
    }

    /// Whether `V_i = V_(N-i)^perp` for every `i`.
    pub fn is_symplectic(&self, f: &GaloisField, form: &SymplecticForm) -> bool {
        let n = self.dimension;
        n == form.dimension() && (1..n).all(|i| form.perp(f, self.space(n - i)) == *self.space(i))
    }
}

fn count_bound(count: Option<u64>, bound: u64, what: impl FnOnce() -> String) -> Result<u64> {
    match count {
        Some(c) if c <= bound => Ok(c),
        Some(c) => Err(too_large(what(), c, bound)),
        None => Err(too_large(what(), "overflow", bound)),
    }
}

/// Number of complete flags in `F_q^n`: `prod_(i=1..n) (q^i - 1)/(q - 1)`.
pub fn flag_count(n: usize, q: u64) -> Option<u64> {
    (1..=n as u32).try_fold(1u64, |acc, i| acc.checked_mul((q.checked_pow(i)? - 1) / (q - 1)))
}

/// Number of flags in `F_q^(2n)` compatible with the symplectic form:
/// `prod_(i=1..n) (q^(2i) - 1)/(q - 1)`.
pub fn symplectic_flag_count(n: usize, q: u64) -> Option<u64> {
    (1..=n as u32).try_fold(1u64, |acc, i| acc.checked_mul((q.checked_pow(2 * i)? - 1) / (q - 1)))
}

/// Every complete flag of `F^n`, or with a form every flag with
/// `V_i = V_(n-i)^perp`, in a deterministic order.
pub fn enumerate_flags(n: usize, f: &GaloisField, form: Option<&SymplecticForm>) -> Result<Vec<Flag>> {
    enumerate_flags_bounded(n, f, form, FLAG_BOUND)
}

/// [`enumerate_flags`] with an explicit bound on the number of flags.
pub fn enumerate_flags_bounded(n: usize, f: &GaloisField, form: Option<&SymplecticForm>, bound: u64) -> Result<Vec<Flag>> {
    let q = f.order() as u64;
    if let Some(form) = form {
        if form.dimension() != n {
            return Err(Error::DimensionMismatch(format!("form on dimension {} for flags in dimension {n}", form.dimension())));
        }
        count_bound(symplectic_flag_count(n / 2, q), bound, || format!("symplectic flags of F_{q}^{n}"))?;
    } else {
        count_bound(flag_count(n, q), bound, || format!("flags of F_{q}^{n}"))?;
    }
    if n <= 1 {
        return Ok(vec![Flag { dimension: n, spaces: Vec::new() }]);
    }
    let top = form.map_or(n - 1, |_| n / 2);
    let mut out = Vec::new();
    let mut chain = Vec::new();
    extend_chain(f, n, form, top, &mut chain, &mut out);
    Ok(out)
}

fn extend_chain(
    f: &GaloisField,
    n: usize,
    form: Option<&SymplecticForm>,
    top: usize,
    chain: &mut Vec<Matrix<u32>>,
    out: &mut Vec<Flag>,
) {
    if chain.len() == top {
        let mut spaces = chain.clone();
        if let Some(form) = form {
            for i in (0..top.saturating_sub(1)).rev() {
                spaces.push(form.perp(f, &chain[i]));
            }
        }
        out.push(Flag { dimension: n, spaces });
        return;
    }
    let current: Matrix<u32> = chain.last().cloned().unwrap_or_default();
    let ambient = match form {
        Some(form) => form.perp(f, &current),
        None => linalg::identity(f, n),
    };
    for v in quotient_lines(f, &current, &ambient) {
        let mut rows = current.clone();
        rows.push(v);
        chain.push(linalg::rref(f, rows).0);
        extend_chain(f, n, form, top, chain, out);
        chain.pop();
    }
}

/// One vector for each line of `ambient / sub`, where `sub` (reduced) lies in
/// `ambient`.
fn quotient_lines(f: &GaloisField, sub: &Matrix<u32>, ambient: &Matrix<u32>) -> Vec<Vec<u32>> {
    let pivots: Vec<usize> = sub.iter().map(|row| row.iter().position(|&x| x != 0).expect("nonzero row")).collect();
    let residues: Matrix<u32> = ambient.iter().map(|v| reduce_modulo(f, v, sub, &pivots)).collect();
    let complement = linalg::rref(f, residues).0;
    let d = complement.len();
    let q = f.order();
    let n = ambient.first().map_or(0, Vec::len);
    let mut lines = Vec::new();
    // coefficient vectors whose first nonzero entry is 1
    for lead in 0..d {
        let free = d - lead - 1;
        let total = (q as u64).pow(free as u32);
        for code in 0..total {
            let mut v = complement[lead].clone();
            let mut c = code;
            for k in lead + 1..d {
                let a = (c % q as u64) as u32;
                c /= q as u64;
                if a != 0 {
                    for (x, y) in v.iter_mut().zip(&complement[k]) {
                        *x = f.add(*x, f.mul(a, *y));
                    }
                }
            }
            debug_assert_eq!(v.len(), n);
            lines.push(v);
        }
    }
    lines
}

fn reduce_modulo(f: &GaloisField, v: &[u32], sub: &Matrix<u32>, pivots: &[usize]) -> Vec<u32> {
    let mut v = v.to_vec();
    for (row, &p) in sub.iter().zip(pivots) {
        let c = v[p];
        if c != 0 {
            for (x, y) in v.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, *y));
            }
        }
    }
    v
}

/// The array `r[i][j] = dim(V_i ∩ V'_j)` for `0 <= i, j <= n`.
pub fn intersection_dimensions(f: &GaloisField, a: &Flag, b: &Flag) -> Vec<Vec<usize>> {
    let n = a.dimension;
    let mut r = vec![vec![0; n + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=n {
            r[i][j] = if i == 0 || j == 0 {
                0
            } else if i == n {
                j
            } else if j == n {
                i
            } else {
                let joined: Matrix<u32> = a.space(i).iter().chain(b.space(j)).cloned().collect();
                i + j - linalg::rank(f, joined)
            };
        }
    }
    r
}

/// The permutation `w` for which some basis `v_1, ..., v_n` has
/// `V_i = <v_1, ..., v_i>` and `V'_i = <v_w(1), ..., v_w(i)>`.
///
/// Read off the jumps of `dim(V_i ∩ V'_j)`: `w(j)` is the least `i` with
/// `r[i][j] - r[i][j-1] = 1`.
pub fn relative_position(
    f: &GaloisField,
    a: &Flag,
    b: &Flag,
    form: Option<&SymplecticForm>,
) -> Result<BigPermutation> {
    if a.dimension != b.dimension {
        return Err(Error::DimensionMismatch(format!("flags in dimensions {} and {}", a.dimension, b.dimension)));
    }
    if let Some(form) = form {
        if !a.is_symplectic(f, form) || !b.is_symplectic(f, form) {
            return Err(Error::NotSymplectic);
        }
    }
    let n = a.dimension;
    let r = intersection_dimensions(f, a, b);
    let images = (1..=n)
        .map(|j| (1..=n).find(|&i| r[i][j] - r[i][j - 1] == 1).expect("dimension jumps once per column") as u32)
        .collect();
    BigPermutation::new(images)
}

/// Indices of flags, for looking up images under group actions.
pub(crate) fn index_flags(flags: &[Flag]) -> HashMap<&Flag, usize> {
    flags.iter().enumerate().map(|(i, fl)| (fl, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> GaloisField {
        GaloisField::with_order(q).unwrap()
    }

    #[test]
    fn flag_counts_match_formula() {
        for (n, q) in [(2, 2), (2, 4), (3, 2), (3, 3), (4, 2), (2, 13), (1, 5)] {
            let f = gf(q);
            let flags = enumerate_flags(n, &f, None).unwrap();
            assert_eq!(flags.len() as u64, flag_count(n, q).unwrap(), "n={n} q={q}");
            let mut sorted = flags.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), flags.len());
        }
        assert_eq!(enumerate_flags(2, &gf(2), None).unwrap().len(), 3);
        assert_eq!(enumerate_flags(2, &gf(4), None).unwrap().len(), 5);
    }

    #[test]
    fn flag_count_against_lines_brute_force() {
        // lines of F_q^2 by scanning all nonzero vectors
        for q in [2u64, 3, 4, 5] {
            let f = gf(q);
            let mut lines = std::collections::BTreeSet::new();
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    if (a, b) != (0, 0) {
                        lines.insert(linalg::rref(&f, vec![vec![a, b]]).0);
                    }
                }
            }
            assert_eq!(lines.len(), enumerate_flags(2, &f, None).unwrap().len());
        }
    }

    #[test]
    fn symplectic_flags() {
        for (n, q) in [(2, 2), (2, 3), (4, 2), (4, 3), (6, 2)] {
            let f = gf(q);
            let form = SymplecticForm::new(n).unwrap();
            let flags = enumerate_flags(n, &f, Some(&form)).unwrap();
            assert_eq!(flags.len() as u64, symplectic_flag_count(n / 2, q).unwrap());
            for fl in &flags {
                assert!(fl.is_symplectic(&f, &form));
                let joined: Matrix<u32> = fl.space(1).iter().chain(fl.space(n - 1)).cloned().collect();
                assert_eq!(linalg::rank(&f, joined), n - 1, "V_1 inside V_(n-1)");
            }
        }
        let f = gf(2);
        let form = SymplecticForm::new(4).unwrap();
        let fl = &enumerate_flags(4, &f, Some(&form)).unwrap()[0];
        assert_eq!(form.perp(&f, fl.space(1)), *fl.space(3));
    }

    #[test]
    fn too_many_flags() {
        assert!(matches!(enumerate_flags(6, &gf(4), None), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn relative_position_basics() {
        let f = gf(3);
        let flags = enumerate_flags(2, &f, None).unwrap();
        let s = BigPermutation::new(vec![2, 1]).unwrap();
        for a in &flags {
            for b in &flags {
                let w = relative_position(&f, a, b, None).unwrap();
                assert_eq!(w, if a == b { BigPermutation::identity(2) } else { s.clone() });
            }
        }
        let other = enumerate_flags(3, &f, None).unwrap();
        assert!(matches!(relative_position(&f, &flags[0], &other[0], None), Err(Error::DimensionMismatch(_))));
    }

    /// Finds a basis adapted to both flags by exhaustive search, returning the
    /// permutation it realizes.
    fn common_basis_position(f: &GaloisField, a: &Flag, b: &Flag) -> Vec<BigPermutation> {
        let n = a.dimension();
        let q = f.order() as u64;
        let vectors: Vec<Vec<u32>> = (0..q.pow(n as u32))
            .map(|mut c| {
                (0..n)
                    .map(|_| {
                        let d = (c % q) as u32;
                        c /= q;
                        d
                    })
                    .collect()
            })
            .collect();
        let space = |fl: &Flag, i: usize| -> Matrix<u32> {
            if i == n {
                linalg::identity(f, n)
            } else if i == 0 {
                Vec::new()
            } else {
                fl.space(i).clone()
            }
        };
        let contains = |s: &Matrix<u32>, v: &[u32]| {
            let mut rows = s.clone();
            rows.push(v.to_vec());
            linalg::rank(f, rows) == s.len()
        };
        let mut perms = vec![];
        permutations(n, &mut Vec::new(), &mut perms);
        perms
            .into_iter()
            .filter(|w| {
                let winv = w.inverse();
                // v_k lies in V_k \ V_(k-1) and in the primed space where it first appears
                let admissible = |k: usize, v: &[u32]| {
                    contains(&space(a, k), v)
                        && !contains(&space(a, k - 1), v)
                        && contains(&space(b, winv.apply(k as u32) as usize), v)
                };
                let spans_match = |chosen: &[Vec<u32>]| {
                    (1..n).all(|j| {
                        let rows: Matrix<u32> = (1..=j).map(|t| chosen[w.apply(t as u32) as usize - 1].clone()).collect();
                        linalg::rref(f, rows).0 == *b.space(j)
                    })
                };
                search(&vectors, &mut Vec::new(), n, &admissible, &spans_match)
            })
            .collect()
    }

    fn search(
        vectors: &[Vec<u32>],
        chosen: &mut Vec<Vec<u32>>,
        n: usize,
        admissible: &dyn Fn(usize, &[u32]) -> bool,
        accept: &dyn Fn(&[Vec<u32>]) -> bool,
    ) -> bool {
        let k = chosen.len() + 1;
        if k > n {
            return accept(chosen);
        }
        for v in vectors {
            if admissible(k, v) {
                chosen.push(v.clone());
                if search(vectors, chosen, n, admissible, accept) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    fn permutations(n: usize, prefix: &mut Vec<u32>, out: &mut Vec<BigPermutation>) {
        if prefix.len() == n {
            out.push(BigPermutation::new(prefix.clone()).unwrap());
            return;
        }
        for x in 1..=n as u32 {
            if !prefix.contains(&x) {
                prefix.push(x);
                permutations(n, prefix, out);
                prefix.pop();
            }
        }
    }

    #[test]
    fn relative_position_matches_common_basis() {
        for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let f = gf(q);
            let flags = enumerate_flags(n, &f, None).unwrap();
            let step = if q == 3 && n == 3 { 5 } else { 1 };
            for a in flags.iter().step_by(step) {
                for b in &flags {
                    let w = relative_position(&f, a, b, None).unwrap();
                    assert_eq!(common_basis_position(&f, a, b), vec![w]);
                }
            }
        }
    }

    #[test]
    fn schubert_cell_sizes() {
        for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let f = gf(q);
            let flags = enumerate_flags(n, &f, None).unwrap();
            for base in [&flags[0], &flags[flags.len() / 2]] {
                let mut sizes: HashMap<BigPermutation, u64> = HashMap::new();
                for b in &flags {
                    *sizes.entry(relative_position(&f, base, b, None).unwrap()).or_default() += 1;
                }
                let mut perms = Vec::new();
                permutations(n, &mut Vec::new(), &mut perms);
                for w in perms {
                    assert_eq!(sizes.get(&w).copied().unwrap_or(0), q.pow(w.inversions() as u32), "{w}");
                }
            }
        }
    }

    fn random_invertible(f: &GaloisField, n: usize, rng: &mut ChaCha8Rng) -> Matrix<u32> {
        loop {
            let m: Matrix<u32> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..f.order())).collect()).collect();
            if linalg::rank(f, m.clone()) == n {
                return m;
            }
        }
    }

    #[test]
    fn equivariance_and_antisymmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, q) in [(3, 2), (3, 4), (4, 3)] {
            let f = gf(q);
            let flags = enumerate_flags(n, &f, None).unwrap();
            for _ in 0..40 {
                let a = &flags[rng.gen_range(0..flags.len())];
                let b = &flags[rng.gen_range(0..flags.len())];
                let g = random_invertible(&f, n, &mut rng);
                let w = relative_position(&f, a, b, None).unwrap();
                assert_eq!(relative_position(&f, &a.transform(&f, &g), &b.transform(&f, &g), None).unwrap(), w);
                assert_eq!(relative_position(&f, b, a, None).unwrap(), w.inverse());
                assert!(relative_position(&f, a, a, None).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn symplectic_positions_commute_with_involution() {
        for (n, q) in [(4, 2), (4, 3), (6, 2)] {
            let f = gf(q);
            let form = SymplecticForm::new(n).unwrap();
            let flags = enumerate_flags(n, &f, Some(&form)).unwrap();
            let step = (flags.len() / 15).max(1);
            for a in flags.iter().step_by(step) {
                for b in flags.iter() {
                    assert!(relative_position(&f, a, b, Some(&form)).unwrap().commutes_with_involution());
                }
            }
        }
        let f = gf(2);
        let form = SymplecticForm::new(4).unwrap();
        let plain = enumerate_flags(4, &f, None).unwrap();
        let bad = plain.iter().find(|fl| !fl.is_symplectic(&f, &form)).unwrap();
        assert_eq!(relative_position(&f, bad, bad, Some(&form)), Err(Error::NotSymplectic));
    }

    #[test]
    fn construction_checks() {
        let f = gf(2);
        let fl = Flag::from_basis(&f, &vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(fl.line(), &[0, 1, 0]);
        let same = Flag::from_spaces(&f, 3, vec![vec![vec![0, 1, 0]], vec![vec![1, 1, 0], vec![1, 0, 0]]]).unwrap();
        assert_eq!(fl, same);
        assert!(Flag::from_spaces(&f, 3, vec![vec![vec![0, 0, 1]], vec![vec![1, 1, 0], vec![1, 0, 0]]]).is_err());
        assert!(Flag::from_basis(&f, &vec![vec![1, 1], vec![1, 1]]).is_err());
    }
}
