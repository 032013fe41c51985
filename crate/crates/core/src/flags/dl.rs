use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{enumerate_flags_bounded, relative_position, Flag, SymplecticForm, FLAG_BOUND};
use crate::error::{too_large, Error, Result};
use crate::field::{prime_power, GaloisField, MAX_FIELD_SIZE};
use crate::weyl::BigPermutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupType {
    #[serde(rename = "GL")]
    Gl,
    #[serde(rename = "Sp")]
    Sp,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupType::Gl => "GL",
            GroupType::Sp => "Sp",
        })
    }
}

impl FromStr for GroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(GroupType::Gl),
            "sp" => Ok(GroupType::Sp),
            _ => Err(Error::Parse(format!("group type must be GL or Sp, got {s:?}"))),
        }
    }
}

/// Point counts of the pieces `X_w` over `GF(q^m)`.
#[derive(Debug, Clone, Serialize)]
pub struct DlCountReport {
    pub group_type: GroupType,
    /// `GL_n`, or `Sp_2n` acting on a space of dimension `2n`.
    pub n: usize,
    pub q: u64,
    pub m: u32,
    pub total_flags: u64,
    /// Every Weyl group element, in lexicographic order of one-line notation,
    /// with its count (zeros included).
    pub counts: Vec<(BigPermutation, u64)>,
}

impl DlCountReport {
    pub fn count(&self, w: &BigPermutation) -> Option<u64> {
        self.counts.iter().find(|(v, _)| v == w).map(|&(_, c)| c)
    }

    /// `w,count` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("w,count\n");
        for (w, c) in &self.counts {
            let images: Vec<String> = w.images().iter().map(u32::to_string).collect();
            out.push_str(&format!("\"[{}]\",{c}\n", images.join(",")));
        }
        out
    }
}

/// The field `GF(q^m)` together with the exponent `t` of `F: x -> x^q = x^(p^t)`.
pub(crate) fn extension_field(q: u64, m: u32) -> Result<(GaloisField, u32)> {
    let (p, t) = prime_power(q).ok_or(Error::NotPrime(q))?;
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let degree = t.checked_mul(m).filter(|&d| p.checked_pow(d).is_some_and(|size| size <= MAX_FIELD_SIZE));
    let Some(degree) = degree else {
        return Err(too_large(format!("GF({q}^{m})"), format!("{q}^{m}"), MAX_FIELD_SIZE));
    };
    Ok((GaloisField::new(p, degree)?, t))
}

fn weyl_elements(group_type: GroupType, dim: usize) -> Vec<BigPermutation> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    all_permutations(dim, &mut prefix, &mut out);
    if group_type == GroupType::Sp {
        out.retain(BigPermutation::commutes_with_involution);
    }
    out
}

fn all_permutations(n: usize, prefix: &mut Vec<u32>, out: &mut Vec<BigPermutation>) {
    if prefix.len() == n {
        out.push(BigPermutation::from_images_unchecked(prefix.clone()));
        return;
    }
    for x in 1..=n as u32 {
        if !prefix.contains(&x) {
            prefix.push(x);
            all_permutations(n, prefix, out);
            prefix.pop();
        }
    }
}

/// Flags over `GF(q^m)` with their Frobenius images `F(B)`.
fn flags_with_frobenius(
    group_type: GroupType,
    n: usize,
    q: u64,
    m: u32,
    bound: u64,
) -> Result<(GaloisField, Option<SymplecticForm>, Vec<(Flag, Flag)>)> {
    let (field, t) = extension_field(q, m)?;
    let (dim, form) = match group_type {
        GroupType::Gl => (n, None),
        GroupType::Sp => (2 * n, Some(SymplecticForm::new(2 * n)?)),
    };
    let flags = enumerate_flags_bounded(dim, &field, form.as_ref(), bound)?;
    let pairs = flags
        .into_iter()
        .map(|b| {
            let fb = b.frobenius(&field, t);
            (b, fb)
        })
        .collect();
    Ok((field, form, pairs))
}

fn positions(field: &GaloisField, form: Option<&SymplecticForm>, pairs: &[(Flag, Flag)]) -> Result<Vec<BigPermutation>> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = pairs.len().div_ceil(workers).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = pairs
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter().map(|(b, fb)| relative_position(field, b, fb, form)).collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        let mut out = Vec::with_capacity(pairs.len());
        for h in handles {
            out.extend(h.join().expect("relative position worker panicked")?);
        }
        Ok(out)
    })
}

/// For each Weyl element `w`, the number of flags `B` over `GF(q^m)` whose
/// position relative to `F(B)` is `w`, where `F` raises coordinates to the
/// `q`-th power.
pub fn dl_piece_counts(group_type: GroupType, n: usize, q: u64, m: u32) -> Result<DlCountReport> {
    dl_piece_counts_bounded(group_type, n, q, m, FLAG_BOUND)
}

/// [`dl_piece_counts`] with an explicit bound on the number of flags.
pub fn dl_piece_counts_bounded(group_type: GroupType, n: usize, q: u64, m: u32, bound: u64) -> Result<DlCountReport> {
    let (field, form, pairs) = flags_with_frobenius(group_type, n, q, m, bound)?;
    let dim = if group_type == GroupType::Sp { 2 * n } else { n };
    let mut counts: BTreeMap<BigPermutation, u64> = weyl_elements(group_type, dim).into_iter().map(|w| (w, 0)).collect();
    for w in positions(&field, form.as_ref(), &pairs)? {
        *counts.get_mut(&w).expect("relative position lies in the Weyl group") += 1;
    }
    Ok(DlCountReport { group_type, n, q, m, total_flags: pairs.len() as u64, counts: counts.into_iter().collect() })
}

/// Both descriptions of the Coxeter piece for `GL_n` over `GF(q^m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterCheck {
    pub n: usize,
    pub q: u64,
    pub m: u32,
    /// Flags with `V_i != F(V_i) ⊂ V_(i+1)` for `i = 1, ..., n-1`.
    pub chain_condition: u64,
    /// Flags in relative position `s_1 s_2 ... s_(n-1)` to their image.
    pub coxeter_position: u64,
    pub equal: bool,
}

/// `s_1 s_2 ... s_(n-1)` in one-line notation: `[2, 3, ..., n, 1]`.
pub fn coxeter_element(n: usize) -> BigPermutation {
    BigPermutation::from_images_unchecked((2..=n as u32).chain((n > 0).then_some(1)).collect())
}

fn contained_in(field: &GaloisField, small: &[Vec<u32>], big: &[Vec<u32>]) -> bool {
    let rows: Vec<Vec<u32>> = big.iter().chain(small).cloned().collect();
    crate::linalg::rank(field, rows) == big.len()
}

/// Compares the chain description of the Coxeter piece with the relative
/// position description, flag by flag.
pub fn coxeter_condition_check(n: usize, q: u64, m: u32) -> Result<CoxeterCheck> {
    coxeter_condition_check_bounded(n, q, m, FLAG_BOUND)
}

/// [`coxeter_condition_check`] with an explicit bound on the number of flags.
pub fn coxeter_condition_check_bounded(n: usize, q: u64, m: u32, bound: u64) -> Result<CoxeterCheck> {
    let (field, _, pairs) = flags_with_frobenius(GroupType::Gl, n, q, m, bound)?;
    let cox = coxeter_element(n);
    let positions = positions(&field, None, &pairs)?;
    let mut chain_condition = 0;
    let mut coxeter_position = 0;
    let mut equal = true;
    for ((b, fb), w) in pairs.iter().zip(positions) {
        let chain = (1..n).all(|i| {
            let moved = b.space(i) != fb.space(i);
            let inside = i + 1 == n || contained_in(&field, fb.space(i), b.space(i + 1));
            moved && inside
        });
        let by_position = w == cox;
        chain_condition += chain as u64;
        coxeter_position += by_position as u64;
        equal &= chain == by_position;
    }
    Ok(CoxeterCheck { n, q, m, chain_condition, coxeter_position, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::{flag_count, symplectic_flag_count};

    fn perm(v: &[u32]) -> BigPermutation {
        BigPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn gl2_examples() {
        let r = dl_piece_counts(GroupType::Gl, 2, 2, 1).unwrap();
        assert_eq!(r.counts, vec![(perm(&[1, 2]), 3), (perm(&[2, 1]), 0)]);
        let r = dl_piece_counts(GroupType::Gl, 2, 2, 2).unwrap();
        assert_eq!(r.counts, vec![(perm(&[1, 2]), 3), (perm(&[2, 1]), 2)]);
        assert_eq!(r.to_csv(), "w,count\n\"[1,2]\",3\n\"[2,1]\",2\n");
    }

    #[test]
    fn partition_identity() {
        for (t, n, q, m) in [
            (GroupType::Gl, 3, 2, 2),
            (GroupType::Gl, 3, 2, 3),
            (GroupType::Gl, 3, 3, 2),
            (GroupType::Gl, 2, 3, 3),
            (GroupType::Gl, 4, 2, 2),
            (GroupType::Sp, 1, 2, 2),
            (GroupType::Sp, 2, 2, 2),
            (GroupType::Sp, 2, 3, 1),
        ] {
            let r = dl_piece_counts(t, n, q, m).unwrap();
            let expected = match t {
                GroupType::Gl => flag_count(n, q.pow(m)).unwrap(),
                GroupType::Sp => symplectic_flag_count(n, q.pow(m)).unwrap(),
            };
            assert_eq!(r.total_flags, expected);
            assert_eq!(r.counts.iter().map(|c| c.1).sum::<u64>(), expected, "{t} {n} {q} {m}");
        }
    }

    #[test]
    fn rational_points_are_fixed() {
        for (t, n, q) in [(GroupType::Gl, 3, 3), (GroupType::Gl, 3, 4), (GroupType::Sp, 2, 3)] {
            let r = dl_piece_counts(t, n, q, 1).unwrap();
            let dim = if t == GroupType::Sp { 2 * n } else { n };
            for (w, c) in &r.counts {
                assert_eq!(*c, if *w == BigPermutation::identity(dim) { r.total_flags } else { 0 });
            }
        }
    }

    #[test]
    fn sp_keys_are_signed_permutations() {
        let r = dl_piece_counts(GroupType::Sp, 2, 2, 2).unwrap();
        assert_eq!(r.counts.len(), 8);
        let mut sorted = r.counts.clone();
        sorted.sort();
        assert_eq!(sorted, r.counts);
    }

    #[test]
    fn coxeter_pieces() {
        let c = coxeter_condition_check(2, 2, 2).unwrap();
        assert!(c.equal);
        assert_eq!((c.chain_condition, c.coxeter_position), (2, 2));
        let c = coxeter_condition_check(3, 2, 2).unwrap();
        assert!(c.equal);
        let c = coxeter_condition_check(2, 3, 1).unwrap();
        assert!(c.equal);
        assert_eq!((c.chain_condition, c.coxeter_position), (0, 0));
        assert!(coxeter_condition_check(3, 3, 2).unwrap().equal);
        assert_eq!(coxeter_element(3), perm(&[2, 3, 1]));
    }

    #[test]
    fn field_limits() {
        assert!(matches!(dl_piece_counts(GroupType::Gl, 2, 2, 17), Err(Error::TooLarge { .. })));
        assert!(matches!(dl_piece_counts(GroupType::Gl, 2, 6, 1), Err(Error::NotPrime(6))));
    }
}
