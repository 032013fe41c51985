use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::FiniteGroup;
use crate::cyclotomic::Cyclotomic;
use crate::error::{too_large, Result};

/// Groups above this order are refused by [`character_table`].
pub const CHARACTER_TABLE_BOUND: u64 = 10_000;
const CLASS_COUNT_BOUND: u64 = 400;

/// Class data as seen by a character table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    pub representative: usize,
    pub size: usize,
    pub element_order: u64,
}

/// The irreducible characters of a finite group with exact values.
///
/// Columns follow the group's class order. Rows are sorted by degree and,
/// within a degree, by value vectors in decreasing lexicographic order of
/// their power-basis coordinates, which puts the trivial character first.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub group_order: usize,
    pub exponent: u64,
    pub classes: Vec<ClassInfo>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, character: usize, class: usize) -> &Cyclotomic {
        &self.values[character][class]
    }

    /// `sum_k h_k chi(g_k) conj(psi(g_k)) / |G|`.
    pub fn inner_product(&self, chi: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
        let mut sum = Cyclotomic::zero();
        for (k, c) in self.classes.iter().enumerate() {
            sum += &(&Cyclotomic::from(c.size as i64) * &(&chi[k] * &psi[k].conj()));
        }
        sum.scale(&BigRational::new(1.into(), BigInt::from(self.group_order)))
    }

    /// Row and column orthogonality, checked exactly.
    pub fn orthogonality_holds(&self) -> bool {
        let r = self.len();
        if r != self.classes.len() {
            return false;
        }
        for i in 0..r {
            for j in i..r {
                let expected = Cyclotomic::from(i64::from(i == j));
                if self.inner_product(&self.values[i], &self.values[j]) != expected {
                    return false;
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut sum = Cyclotomic::zero();
                for row in &self.values {
                    sum += &(&row[k] * &row[l].conj());
                }
                let expected = if k == l {
                    Cyclotomic::from((self.group_order / self.classes[k].size) as i64)
                } else {
                    Cyclotomic::zero()
                };
                if sum != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// The character table, computed by Dixon's method: the simultaneous
/// eigenvectors of the class-multiplication matrices are found modulo a
/// prime `p = 1 mod exponent`, and every value is then recovered exactly
/// from the eigenvalue multiplicities of its element.
pub fn character_table(group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    let n = group.order();
    if n as u64 > CHARACTER_TABLE_BOUND {
        return Err(too_large("group for a character table", n, CHARACTER_TABLE_BOUND));
    }
    let classes = group.classes();
    let r = classes.len();
    if r as u64 > CLASS_COUNT_BOUND {
        return Err(too_large("number of conjugacy classes", r, CLASS_COUNT_BOUND));
    }
    let e = group.exponent();
    let p = dixon_prime(e, n as u64);
    let f = Fp(p);
    let infos: Vec<ClassInfo> = classes
        .iter()
        .map(|c| ClassInfo { representative: c.representative, size: c.size(), element_order: group.element_order(c.representative) })
        .collect();

    // c[j][i][k] = #{(a, b) in C_j x C_i : a b = z_k}
    let mut consts = vec![0u64; r * r * r];
    for (k, ck) in classes.iter().enumerate() {
        let z = ck.representative;
        for a in 0..n {
            let b = group.multiply(group.inverse(a), z);
            consts[(group.class_of(a) * r + group.class_of(b)) * r + k] += 1;
        }
    }
    let class_matrix = |j: usize| -> Vec<Vec<u64>> {
        (0..r).map(|i| (0..r).map(|k| consts[(j * r + i) * r + k] % p).collect()).collect()
    };

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity_rows(r)];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(j);
        spaces = spaces.into_iter().flat_map(|s| if s.len() == 1 { vec![s] } else { f.split(&m, s) }).collect();
    }
    assert!(spaces.iter().all(|s| s.len() == 1), "class matrices failed to separate the characters");

    let inverse_class: Vec<usize> = classes.iter().map(|c| group.class_of(group.inverse(c.representative))).collect();
    // power maps: class of g_k^l for l < e
    let power_class: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let mut out = Vec::with_capacity(e as usize);
            let mut y = 0;
            for _ in 0..e {
                out.push(group.class_of(y));
                y = group.multiply(y, c.representative);
            }
            out
        })
        .collect();
    let z = f.primitive_root_of_order(e);
    let z_pow: Vec<u64> = (0..e).map(|k| f.pow(z, k)).collect();

    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        let scale = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, scale)).collect();
        let mut s = 0;
        for k in 0..r {
            s = f.add(s, f.mul(f.mul(omega[k], omega[inverse_class[k]]), f.inv(infos[k].size as u64 % p)));
        }
        let d2 = f.mul(n as u64 % p, f.inv(s));
        let degree = (1..=n as u64).find(|d| d * d % p == d2).expect("degree squared is a square below |G|");
        let modular: Vec<u64> =
            (0..r).map(|k| f.mul(f.mul(degree, omega[k]), f.inv(infos[k].size as u64 % p))).collect();
        let exact = (0..r)
            .map(|k| {
                // multiplicity of z^a among the eigenvalues of g_k
                let mut coeffs = vec![BigRational::from_integer(0.into()); e as usize];
                for (a, coeff) in coeffs.iter_mut().enumerate() {
                    let mut m = 0;
                    for l in 0..e {
                        let t = z_pow[((e - (a as u64 * l) % e) % e) as usize];
                        m = f.add(m, f.mul(modular[power_class[k][l as usize]], t));
                    }
                    let m = f.mul(m, f.inv(e % p));
                    assert!(m <= degree, "eigenvalue multiplicity out of range");
                    *coeff = BigRational::from_integer(m.into());
                }
                Cyclotomic::from_exponent_coeffs(e as u32, &coeffs)
            })
            .collect();
        rows.push((degree, exact));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp_rows(&b.1, &a.1)));
    let table = CharacterTable {
        group_order: n,
        exponent: e,
        classes: infos,
        degrees: rows.iter().map(|r| r.0).collect(),
        values: rows.into_iter().map(|r| r.1).collect(),
    };
    debug_assert!(table.orthogonality_holds(), "character table fails orthogonality");
    Ok(table)
}

fn cmp_rows(a: &[Cyclotomic], b: &[Cyclotomic]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.cmp_coords(y)).find(|o| *o != Ordering::Equal).unwrap_or(Ordering::Equal)
}

fn identity_rows(r: usize) -> Vec<Vec<u64>> {
    (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()
}

/// Smallest prime `p = 1 mod e` with `p > 2 |G|`.
fn dixon_prime(e: u64, order: u64) -> u64 {
    let mut p = (2 * order / e + 1) * e + 1;
    while !is_prime(p) {
        p += e;
    }
    p
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Arithmetic in the prime field of order `p < 2^32`.
#[derive(Clone, Copy)]
struct Fp(u64);

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    fn pow(self, mut a: u64, mut k: u64) -> u64 {
        let mut out = 1;
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(out, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        out
    }

    fn inv(self, a: u64) -> u64 {
        assert!(a % self.0 != 0, "inverse of zero");
        self.pow(a, self.0 - 2)
    }

    fn primitive_root_of_order(self, e: u64) -> u64 {
        let p = self.0;
        let factors: Vec<u64> = (2..p).filter(|&q| (p - 1) % q == 0 && is_prime(q)).collect();
        let g = (2..p).find(|&g| factors.iter().all(|&q| self.pow(g, (p - 1) / q) != 1)).expect("prime field has a generator");
        self.pow(g, (p - 1) / e)
    }

    /// Row-reduces `rows` in place and returns the pivot column of each
    /// surviving row.
    fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
            rows.swap(r, k);
            let inv = self.inv(rows[r][c]);
            rows[r].iter_mut().for_each(|x| *x = self.mul(*x, inv));
            for k in 0..rows.len() {
                if k != r && rows[k][c] != 0 {
                    let factor = rows[k][c];
                    for col in 0..cols {
                        let t = self.mul(factor, rows[r][col]);
                        rows[k][col] = self.sub(rows[k][col], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        pivots
    }

    /// Null space of a square matrix, as row vectors.
    fn kernel(self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let d = m.len();
        let mut rows = m.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; d];
                v[fc] = 1;
                for (row, &pc) in rows.iter().zip(&pivots) {
                    v[pc] = self.sub(0, row[fc]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI - A)` by Faddeev-LeVerrier,
    /// coefficients from the constant term up.
    fn charpoly(self, a: &[Vec<u64>]) -> Vec<u64> {
        let d = a.len();
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        let mut m = vec![vec![0u64; d]; d];
        for k in 1..=d {
            // M_k = A M_{k-1} + c_{d-k+1} I
            let mut next = vec![vec![0u64; d]; d];
            for i in 0..d {
                for j in 0..d {
                    let mut s = 0;
                    for l in 0..d {
                        s = self.add(s, self.mul(a[i][l], m[l][j]));
                    }
                    next[i][j] = s;
                }
                next[i][i] = self.add(next[i][i], coeffs[d - k + 1]);
            }
            m = next;
            let mut trace = 0;
            for i in 0..d {
                let mut s = 0;
                for l in 0..d {
                    s = self.add(s, self.mul(a[i][l], m[l][i]));
                }
                trace = self.add(trace, s);
            }
            coeffs[d - k] = self.sub(0, self.mul(trace, self.inv(k as u64)));
        }
        coeffs
    }

    fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Splits an invariant subspace (rows in reduced echelon form) into the
    /// eigenspaces of the matrix `m` acting on column vectors.
    fn split(self, m: &[Vec<u64>], mut basis: Vec<Vec<u64>>) -> Vec<Vec<Vec<u64>>> {
        let pivots = self.rref(&mut basis);
        let d = basis.len();
        let r = m.len();
        // restriction: column t holds the coordinates of m * b_t
        let mut a = vec![vec![0u64; d]; d];
        for (t, b) in basis.iter().enumerate() {
            let image: Vec<u64> =
                (0..r).map(|i| (0..r).fold(0, |s, k| self.add(s, self.mul(m[i][k], b[k])))).collect();
            for (u, &pc) in pivots.iter().enumerate() {
                a[u][t] = image[pc];
            }
        }
        let poly = self.charpoly(&a);
        let roots: Vec<u64> = (0..self.0).filter(|&x| self.eval(&poly, x) == 0).collect();
        if roots.len() == 1 {
            return vec![basis];
        }
        let mut out = Vec::new();
        for lambda in roots {
            let shifted: Vec<Vec<u64>> = (0..d)
                .map(|i| (0..d).map(|j| if i == j { self.sub(a[i][j], lambda) } else { a[i][j] }).collect())
                .collect();
            let mut space: Vec<Vec<u64>> = self
                .kernel(&shifted)
                .into_iter()
                .map(|coords| {
                    (0..r).map(|c| (0..d).fold(0, |s, t| self.add(s, self.mul(coords[t], basis[t][c])))).collect()
                })
                .collect();
            self.rref(&mut space);
            out.push(space);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    fn table(name: &str) -> CharacterTable {
        character_table(&builtin(name).unwrap()).unwrap()
    }

    #[test]
    fn small_tables() {
        let z2 = table("Z2");
        assert_eq!(z2.values, vec![vec![1.into(), 1.into()], vec![1.into(), (-1).into()]]);
        let s3 = table("S3");
        assert_eq!(s3.degrees, vec![1, 1, 2]);
        let z3 = table("Z3");
        let w = Cyclotomic::root_of_unity(3, 1);
        let w2 = Cyclotomic::root_of_unity(3, 2);
        for row in &z3.values {
            assert_eq!(row[0], Cyclotomic::one());
            assert!(row[1] == Cyclotomic::one() || row[1] == w || row[1] == w2);
            // a character of Z_3 is determined by its value on a generator
            assert_eq!(row[2], &row[1] * &row[1]);
        }
    }

    #[test]
    fn orthogonality_and_degrees() {
        for (name, classes) in [("S3", 3), ("S4", 5), ("S5", 7), ("A4", 4), ("A5", 5), ("Z6", 6), ("F2^3", 8), ("trivial", 1)]
        {
            let g = builtin(name).unwrap();
            let t = character_table(&g).unwrap();
            assert_eq!(t.len(), classes, "{name}");
            assert!(t.orthogonality_holds(), "{name}");
            assert_eq!(t.degrees.iter().map(|d| d * d).sum::<u64>(), g.order() as u64);
            assert!(t.degrees.iter().all(|d| g.order() as u64 % d == 0));
            assert!(t.values[0].iter().all(|v| *v == Cyclotomic::one()), "{name}: trivial character first");
        }
    }

    #[test]
    fn a5_has_golden_ratio_values() {
        let t = table("A5");
        assert_eq!(t.degrees, vec![1, 3, 3, 4, 5]);
        // (1 + sqrt 5)/2 = -(z5^2 + z5^3)
        let phi = -&(&Cyclotomic::root_of_unity(5, 2) + &Cyclotomic::root_of_unity(5, 3));
        assert!(t.values.iter().any(|row| row.contains(&phi)));
    }

    #[test]
    fn larger_group() {
        let gens = vec![
            crate::group::parse_cycles("(1,2)", 7).unwrap(),
            crate::group::parse_cycles("(1,2,3,4,5,6,7)", 7).unwrap(),
        ];
        let g = FiniteGroup::from_permutations(&gens, 10_000).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.len(), 15);
        assert_eq!(t.degrees.iter().map(|d| d * d).sum::<u64>(), 5040);
    }
}
