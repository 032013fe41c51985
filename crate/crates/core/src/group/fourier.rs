use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::character::{character_table, CharacterTable};
use super::finite::{FiniteGroup, Subgroup};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// A pair `(x, sigma)`: a conjugacy class of the group, through its stored
/// representative, and an irreducible character of the centralizer of that
/// representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MPair {
    /// Index of the class in the group's class order.
    pub class: usize,
    pub representative: String,
    /// Row of the centralizer's character table.
    pub character: usize,
    pub degree: u64,
}

/// Centralizers and their character tables for every class of a group.
pub struct MData {
    group: Arc<FiniteGroup>,
    centralizers: Vec<(Subgroup, CharacterTable)>,
    pairs: Vec<MPair>,
}

impl MData {
    pub fn new(group: &Arc<FiniteGroup>) -> Result<Self> {
        let mut centralizers = Vec::new();
        let mut pairs = Vec::new();
        for (i, class) in group.classes().iter().enumerate() {
            let z = group.centralizer(class.representative);
            let table = character_table(&z.group)?;
            for (row, &degree) in table.degrees.iter().enumerate() {
                pairs.push(MPair { class: i, representative: group.label(class.representative), character: row, degree });
            }
            centralizers.push((z, table));
        }
        Ok(MData { group: group.clone(), centralizers, pairs })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// The set `M(G)` in its deterministic order: classes by size then
    /// representative, characters as ordered in each centralizer table.
    pub fn pairs(&self) -> &[MPair] {
        &self.pairs
    }

    pub fn centralizer(&self, class: usize) -> &(Subgroup, CharacterTable) {
        &self.centralizers[class]
    }

    fn position(&self, class: usize, character: usize) -> Result<usize> {
        self.pairs
            .iter()
            .position(|p| p.class == class && p.character == character)
            .ok_or_else(|| Error::InvalidPair(format!("(class {class}, character {character})")))
    }

    /// Counts of the `g` in the pairing sum for classes `i` (of `x`) and
    /// `j` (of `y`), grouped by the centralizer classes of `g^-1 x^-1 g` in
    /// `Z(y)` and of `g y g^-1` in `Z(x)`.
    fn class_pair_counts(&self, i: usize, j: usize) -> HashMap<(usize, usize), u64> {
        let g = &self.group;
        let x = g.classes()[i].representative;
        let y = g.classes()[j].representative;
        let (zx, tx) = &self.centralizers[i];
        let (zy, ty) = &self.centralizers[j];
        let x_inv = g.inverse(x);
        let mut counts = HashMap::new();
        for h in 0..g.order() {
            let conj_y = g.multiply(h, g.multiply(y, g.inverse(h)));
            if !g.commute(x, conj_y) {
                continue;
            }
            let a = g.multiply(g.inverse(h), g.multiply(x_inv, h));
            let a_local = zy.local_index(a).expect("conjugate of x^-1 centralizes y");
            let b_local = zx.local_index(conj_y).expect("conjugate of y centralizes x");
            let key = (class_column(ty, &zy.group, a_local), class_column(tx, &zx.group, b_local));
            *counts.entry(key).or_insert(0) += 1;
        }
        counts
    }

    fn entry_from_counts(&self, counts: &HashMap<(usize, usize), u64>, i: usize, s: usize, j: usize, t: usize) -> Cyclotomic {
        let (zx, tx) = &self.centralizers[i];
        let (zy, ty) = &self.centralizers[j];
        let mut keys: Vec<_> = counts.iter().collect();
        keys.sort();
        let mut sum = Cyclotomic::zero();
        for (&(a, b), &c) in keys {
            let term = &ty.values[t][a] * &tx.values[s][b];
            sum += &(&Cyclotomic::from(c as i64) * &term);
        }
        let denom = BigInt::from(zx.group.order()) * BigInt::from(zy.group.order());
        sum.scale(&BigRational::new(1.into(), denom))
    }

    /// `{(x, sigma), (y, tau)} = sum_g tr(g^-1 x^-1 g, tau) tr(g y g^-1, sigma) / (|Z(x)| |Z(y)|)`
    /// over the `g` for which `x` commutes with `g y g^-1`.
    pub fn pairing_entry(&self, a: &MPair, b: &MPair) -> Result<Cyclotomic> {
        self.position(a.class, a.character)?;
        self.position(b.class, b.character)?;
        let counts = self.class_pair_counts(a.class, b.class);
        Ok(self.entry_from_counts(&counts, a.class, a.character, b.class, b.character))
    }

    /// The full pairing matrix on `M(G)` in the order of [`MData::pairs`].
    pub fn pairing_matrix(&self) -> FourierMatrix {
        let m = self.pairs.len();
        let r = self.group.classes().len();
        let mut entries = vec![vec![Cyclotomic::zero(); m]; m];
        let rows_of = |class: usize| -> Vec<usize> { (0..m).filter(|&k| self.pairs[k].class == class).collect() };
        let blocks: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
        let computed: Vec<Vec<(usize, usize, Cyclotomic)>> = std::thread::scope(|scope| {
            let handles: Vec<_> = blocks
                .chunks(blocks.len().div_ceil(4).max(1))
                .map(|chunk| {
                    scope.spawn(move || {
                        let mut out = Vec::new();
                        for &(i, j) in chunk {
                            let counts = self.class_pair_counts(i, j);
                            for a in rows_of(i) {
                                for b in rows_of(j) {
                                    let pa = &self.pairs[a];
                                    let pb = &self.pairs[b];
                                    out.push((a, b, self.entry_from_counts(&counts, i, pa.character, j, pb.character)));
                                }
                            }
                        }
                        out
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("pairing worker panicked")).collect()
        });
        for (a, b, v) in computed.into_iter().flatten() {
            entries[a][b] = v;
        }
        FourierMatrix { labels: self.pairs.clone(), entries }
    }
}

fn class_column(table: &CharacterTable, group: &FiniteGroup, element: usize) -> usize {
    let class = group.class_of(element);
    debug_assert_eq!(table.classes[class].representative, group.classes()[class].representative);
    class
}

/// The set `M(G)` of a group.
pub fn m_set(group: &Arc<FiniteGroup>) -> Result<Vec<MPair>> {
    Ok(MData::new(group)?.pairs)
}

/// The nonabelian Fourier matrix on `M(G)`.
pub fn pairing_matrix(group: &Arc<FiniteGroup>) -> Result<FourierMatrix> {
    Ok(MData::new(group)?.pairing_matrix())
}

/// A square matrix of cyclotomic numbers indexed by `M(G)`.
#[derive(Debug, Clone, Serialize)]
pub struct FourierMatrix {
    pub labels: Vec<MPair>,
    pub entries: Vec<Vec<Cyclotomic>>,
}

impl FourierMatrix {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn product(&self, other: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
        let m = self.len();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut s = Cyclotomic::zero();
                        for k in 0..m {
                            if !self.entries[i][k].is_zero() && !other[k][j].is_zero() {
                                s += &(&self.entries[i][k] * &other[k][j]);
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect()
    }

    fn is_identity(m: &[Vec<Cyclotomic>]) -> bool {
        m.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, v)| if i == j { *v == Cyclotomic::one() } else { v.is_zero() })
        })
    }

    /// `M M = I`.
    pub fn is_involutive(&self) -> bool {
        Self::is_identity(&self.product(&self.entries))
    }

    /// `M conj(M)^T = I`.
    pub fn is_unitary(&self) -> bool {
        let m = self.len();
        let adjoint: Vec<Vec<Cyclotomic>> =
            (0..m).map(|i| (0..m).map(|j| self.entries[j][i].conj()).collect()).collect();
        Self::is_identity(&self.product(&adjoint))
    }

    /// `M[a][b] = conj(M[b][a])`.
    pub fn is_hermitian(&self) -> bool {
        let m = self.len();
        (0..m).all(|i| (0..m).all(|j| self.entries[i][j] == self.entries[j][i].conj()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    fn data(name: &str) -> MData {
        MData::new(&builtin(name).unwrap()).unwrap()
    }

    #[test]
    fn sizes_of_m() {
        for (name, size) in [("trivial", 1), ("Z2", 4), ("F2^2", 16), ("S3", 8), ("S4", 21)] {
            assert_eq!(data(name).pairs().len(), size, "{name}");
        }
    }

    #[test]
    fn small_entries() {
        let t = data("trivial");
        assert_eq!(t.pairing_matrix().entries, vec![vec![Cyclotomic::one()]]);
        let z2 = data("Z2");
        let sgn = z2.pairs()[1].clone();
        assert_eq!((sgn.class, sgn.character), (0, 1));
        assert_eq!(z2.pairing_entry(&sgn, &sgn).unwrap(), Cyclotomic::rational(BigRational::new(1.into(), 2.into())));
        let s3 = data("S3");
        let p = s3.pairs()[0].clone();
        assert_eq!(s3.pairing_entry(&p, &p).unwrap(), Cyclotomic::rational(BigRational::new(1.into(), 6.into())));
        let bogus = MPair { class: 0, representative: "()".into(), character: 9, degree: 1 };
        assert!(matches!(s3.pairing_entry(&bogus, &p), Err(Error::InvalidPair(_))));
    }

    #[test]
    fn unitary_involutive_hermitian() {
        for name in ["Z2", "Z3", "F2^2", "S3", "S4", "A4"] {
            let m = data(name).pairing_matrix();
            assert!(m.is_involutive(), "{name}");
            assert!(m.is_unitary(), "{name}");
            assert!(m.is_hermitian(), "{name}");
        }
    }

    #[test]
    fn entry_and_matrix_agree() {
        let d = data("S3");
        let m = d.pairing_matrix();
        for (a, pa) in d.pairs().iter().enumerate() {
            for (b, pb) in d.pairs().iter().enumerate() {
                assert_eq!(d.pairing_entry(pa, pb).unwrap(), m.entries[a][b]);
            }
        }
    }
}
