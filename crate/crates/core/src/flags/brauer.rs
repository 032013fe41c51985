use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{enumerate_flags, index_flags, Flag};
use crate::cyclotomic::Cyclotomic;
use crate::error::{too_large, Error, Result};
use crate::field::{GaloisField, Rationals, MAX_FIELD_SIZE};
use crate::linalg::{self, Matrix};

/// Largest flag set for which the constraint system is assembled.
pub const BRAUER_FLAG_BOUND: u64 = 5_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BrauerMode {
    /// Functions with `f(B)` in the line `V_1(B)`, solved over `GF(p)`.
    Modular,
    /// Scalar functions, solved over the rationals.
    Rational,
}

impl fmt::Display for BrauerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BrauerMode::Modular => "modular",
            BrauerMode::Rational => "rational",
        })
    }
}

impl FromStr for BrauerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modular" => Ok(BrauerMode::Modular),
            "rational" => Ok(BrauerMode::Rational),
            _ => Err(Error::Parse(format!("mode must be modular or rational, got {s:?}"))),
        }
    }
}

/// The space of flag functions whose sum over the completions of every
/// almost complete flag vanishes.
#[derive(Debug, Clone, Serialize)]
pub struct FlagFunctionSpace {
    pub n: usize,
    pub p: u64,
    pub mode: BrauerMode,
    pub flags: usize,
    pub constraints: usize,
    pub rank: usize,
    pub dimension: usize,
    /// `(p-1)(p^2-1)...(p^(n-1)-1)` for modular, `p^(n(n-1)/2)` for rational.
    pub expected: u64,
}

impl FlagFunctionSpace {
    pub fn matches_expected(&self) -> bool {
        self.dimension as u64 == self.expected
    }
}

struct ConstraintSystem {
    field: GaloisField,
    flags: Vec<Flag>,
    /// For each almost complete flag, the flags completing it.
    groups: Vec<Vec<usize>>,
}

impl ConstraintSystem {
    fn new(n: usize, p: u64) -> Result<Self> {
        let field = GaloisField::new(p, 1)?;
        let count = super::flag_count(n, p).unwrap_or(u64::MAX);
        if count > BRAUER_FLAG_BOUND {
            return Err(too_large(format!("flags of F_{p}^{n}"), count, BRAUER_FLAG_BOUND));
        }
        let flags = enumerate_flags(n, &field, None)?;
        let mut groups = Vec::new();
        for missing in 0..n.saturating_sub(1) {
            let mut by_key: HashMap<Vec<&Matrix<u32>>, Vec<usize>> = HashMap::new();
            for (k, fl) in flags.iter().enumerate() {
                let key = fl.spaces().iter().enumerate().filter(|&(i, _)| i != missing).map(|(_, s)| s).collect();
                by_key.entry(key).or_default().push(k);
            }
            let mut part: Vec<Vec<usize>> = by_key.into_values().collect();
            part.sort();
            groups.extend(part);
        }
        Ok(ConstraintSystem { field, flags, groups })
    }

    fn modular_rows(&self) -> Matrix<u32> {
        let n = self.flags.first().map_or(0, Flag::dimension);
        let mut rows = Vec::new();
        for group in &self.groups {
            for coord in 0..n {
                let mut row = vec![0; self.flags.len()];
                for &k in group {
                    row[k] = self.flags[k].line()[coord];
                }
                rows.push(row);
            }
        }
        rows
    }

    fn rational_rows(&self) -> Matrix<BigRational> {
        self.groups
            .iter()
            .map(|group| {
                let mut row = vec![BigRational::zero(); self.flags.len()];
                for &k in group {
                    row[k] = BigRational::from_integer(1.into());
                }
                row
            })
            .collect()
    }
}

fn expected_dimension(n: usize, p: u64, mode: BrauerMode) -> u64 {
    match mode {
        BrauerMode::Modular => (1..n as u32).map(|i| p.pow(i) - 1).product(),
        BrauerMode::Rational => p.pow((n * n.saturating_sub(1) / 2) as u32),
    }
}

/// Dimension of the space of flag functions on `F_p^n` whose sums over the
/// completions of each almost complete flag vanish.
///
/// In modular mode a function assigns to each flag a vector of its line
/// `V_1`, encoded as one scalar times a fixed spanning vector, and each
/// constraint is a vector equation in `F_p^n`. In rational mode functions are
/// scalar valued and ranks are computed exactly over the rationals.
pub fn brauer_space_dim(n: usize, p: u64, mode: BrauerMode) -> Result<FlagFunctionSpace> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let sys = ConstraintSystem::new(n, p)?;
    let (constraints, rank) = match mode {
        BrauerMode::Modular => {
            let rows = sys.modular_rows();
            (rows.len(), linalg::rank(&sys.field, rows))
        }
        BrauerMode::Rational => {
            let rows = sys.rational_rows();
            (rows.len(), linalg::rank(&Rationals, rows))
        }
    };
    Ok(FlagFunctionSpace {
        n,
        p,
        mode,
        flags: sys.flags.len(),
        constraints,
        rank,
        dimension: sys.flags.len() - rank,
        expected: expected_dimension(n, p, mode),
    })
}

fn random_invertible(f: &GaloisField, n: usize, rng: &mut ChaCha8Rng) -> Matrix<u32> {
    loop {
        let m: Matrix<u32> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..f.order())).collect()).collect();
        if linalg::rank(f, m.clone()) == n {
            return m;
        }
    }
}

/// Applies random elements of `GL_n(F_p)` to random kernel vectors and checks
/// that the images stay in the kernel.
///
/// The action is `(g f)(g B) = g f(B)`; with `f(B) = c_B v_B` and
/// `g v_B = l v_(gB)` the transformed coefficient at `gB` is `c_B l`.
pub fn kernel_stability_check(n: usize, p: u64, mode: BrauerMode, group_samples: usize, vector_samples: usize, seed: u64) -> Result<bool> {
    let sys = ConstraintSystem::new(n, p)?;
    let f = &sys.field;
    let index = index_flags(&sys.flags);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    match mode {
        BrauerMode::Modular => {
            let rows = sys.modular_rows();
            let basis = linalg::kernel(f, rows.clone(), sys.flags.len());
            let vectors: Vec<Vec<u32>> = (0..vector_samples).map(|_| random_combination(f, &basis, &mut rng)).collect();
            for _ in 0..group_samples {
                let g = random_invertible(f, n, &mut rng);
                let moves: Vec<(usize, u32)> = sys
                    .flags
                    .iter()
                    .map(|fl| {
                        let image = fl.transform(f, &g);
                        let gv = linalg::apply(f, &g, fl.line());
                        let lead = image.line().iter().position(|&x| x != 0).expect("nonzero line");
                        (index[&image], f.mul(gv[lead], f.inv(image.line()[lead])))
                    })
                    .collect();
                for c in &vectors {
                    let mut moved = vec![0; c.len()];
                    for (k, &(target, scale)) in moves.iter().enumerate() {
                        moved[target] = f.mul(c[k], scale);
                    }
                    ok &= linalg::apply(f, &rows, &moved).iter().all(|&x| x == 0);
                }
            }
        }
        BrauerMode::Rational => {
            let rows = sys.rational_rows();
            let basis = linalg::kernel(&Rationals, rows.clone(), sys.flags.len());
            let vectors: Vec<Vec<BigRational>> = (0..vector_samples)
                .map(|_| {
                    let mut v = vec![BigRational::zero(); sys.flags.len()];
                    for b in &basis {
                        let c = BigRational::from_integer(BigInt::from(rng.gen_range(-5i64..=5)));
                        for (x, y) in v.iter_mut().zip(b) {
                            *x += &c * y;
                        }
                    }
                    v
                })
                .collect();
            for _ in 0..group_samples {
                let g = random_invertible(f, n, &mut rng);
                let targets: Vec<usize> = sys.flags.iter().map(|fl| index[&fl.transform(f, &g)]).collect();
                for c in &vectors {
                    let mut moved = vec![BigRational::zero(); c.len()];
                    for (k, &t) in targets.iter().enumerate() {
                        moved[t] = c[k].clone();
                    }
                    ok &= linalg::apply(&Rationals, &rows, &moved).iter().all(Zero::is_zero);
                }
            }
        }
    }
    Ok(ok)
}

fn random_combination(f: &GaloisField, basis: &Matrix<u32>, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let len = basis.first().map_or(0, Vec::len);
    let mut v = vec![0; len];
    for b in basis {
        let c = rng.gen_range(0..f.order());
        for (x, y) in v.iter_mut().zip(b) {
            *x = f.add(*x, f.mul(c, *y));
        }
    }
    v
}

/// An eigenvalue in the splitting field, with its discrete logarithm to the
/// generator of that field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eigenvalue {
    pub element: String,
    pub log: u32,
    pub multiplicity: usize,
}

/// The Brauer character value `sum u(lambda_i)` of a matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BrauerValue {
    pub value: Cyclotomic,
    pub dimension: usize,
    /// Order of the field containing all eigenvalues.
    pub splitting_field: u64,
    pub eigenvalues: Vec<Eigenvalue>,
}

/// Polynomials over a finite field, constant term first, without trailing zeros.
type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_divrem(f: &GaloisField, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = trim(a.clone());
    let b = trim(b.clone());
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    let mut quot = vec![0; r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = f.mul(*r.last().expect("nonempty"), lead_inv);
        quot[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
        r = trim(r);
    }
    (trim(quot), r)
}

fn poly_mul(f: &GaloisField, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

fn monic(f: &GaloisField, a: Poly) -> Poly {
    match a.last() {
        Some(&lead) => {
            let inv = f.inv(lead);
            a.into_iter().map(|x| f.mul(x, inv)).collect()
        }
        None => a,
    }
}

fn poly_gcd(f: &GaloisField, a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = poly_divrem(f, &a, &b).1;
        a = b;
        b = r;
    }
    monic(f, a)
}

fn derivative(f: &GaloisField, a: &Poly) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as i64), c)).collect())
}

/// Product of the distinct monic irreducible factors.
fn radical(f: &GaloisField, a: &Poly) -> Poly {
    let a = monic(f, trim(a.clone()));
    if a.len() <= 2 {
        return a;
    }
    let d = derivative(f, &a);
    if d.is_empty() {
        // a(x) = b(x)^p with b's coefficients the p-th roots of a's
        let p = f.characteristic() as usize;
        let s = f.degree();
        let root: Poly = a.iter().step_by(p).map(|&c| f.frobenius(c, s - 1)).collect();
        return radical(f, &root);
    }
    let g = poly_gcd(f, &a, &d);
    let w = poly_divrem(f, &a, &g).0;
    let rg = radical(f, &g);
    let common = poly_gcd(f, &w, &rg);
    monic(f, poly_divrem(f, &poly_mul(f, &w, &rg), &common).0)
}

fn poly_powmod(f: &GaloisField, base: &Poly, mut e: u64, modulus: &Poly) -> Poly {
    let mut result = vec![1];
    let mut b = poly_divrem(f, base, modulus).1;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_divrem(f, &poly_mul(f, &result, &b), modulus).1;
        }
        b = poly_divrem(f, &poly_mul(f, &b, &b), modulus).1;
        e >>= 1;
    }
    result
}

/// Least `d` such that every root of `a` lies in the degree `d` extension.
fn splitting_degree(f: &GaloisField, a: &Poly) -> u32 {
    let mut rest = radical(f, a);
    let q = f.order() as u64;
    let mut h = vec![0, 1];
    let mut degree = 1u32;
    let mut k = 0u32;
    while rest.len() > 1 {
        k += 1;
        h = poly_powmod(f, &h, q, &rest);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = f.sub(diff[1], 1);
        let g = poly_gcd(f, &rest, &trim(diff));
        if g.len() > 1 {
            degree = num_integer::lcm(degree, k);
            rest = poly_divrem(f, &rest, &g).0;
            h = poly_divrem(f, &h, &rest).1;
        }
    }
    degree
}

/// Characteristic polynomial `det(x I - A)`, monic, constant term first,
/// by reduction to Hessenberg form.
pub fn characteristic_polynomial(f: &GaloisField, a: &Matrix<u32>) -> Poly {
    let n = a.len();
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]);
        for k in j + 2..n {
            let factor = f.mul(h[k][j], inv);
            if factor == 0 {
                continue;
            }
            for c in 0..n {
                h[k][c] = f.sub(h[k][c], f.mul(factor, h[j + 1][c]));
            }
            for row in h.iter_mut() {
                row[j + 1] = f.add(row[j + 1], f.mul(factor, row[k]));
            }
        }
    }
    // p_k = (x - h_kk) p_(k-1) - sum_(i<k) h_ik (h_(i+1,i) ... h_(k,k-1)) p_(i-1)
    let mut polys: Vec<Poly> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0; prev.len() + 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(h[k][k], c));
        }
        let mut product = 1;
        for i in (0..k).rev() {
            product = f.mul(product, h[i + 1][i]);
            let coeff = f.mul(h[i][k], product);
            if coeff != 0 {
                for (t, &c) in polys[i].iter().enumerate() {
                    next[t] = f.sub(next[t], f.mul(coeff, c));
                }
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

/// The Brauer character of an invertible matrix over `field`: each
/// eigenvalue `gamma^j`, for `gamma` the generator of the smallest field
/// containing all eigenvalues, is lifted to `exp(2 pi i j / (|field| - 1))`.
///
/// The lift is tied to that splitting field; values computed for matrices
/// with different splitting fields are not compatible in general.
pub fn brauer_character(field: &GaloisField, matrix: &Matrix<u32>) -> Result<BrauerValue> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    if matrix.iter().flatten().any(|&x| x >= field.order()) {
        return Err(Error::InvalidInput(format!("matrix entries must lie in 0..{}", field.order())));
    }
    if linalg::rank(field, matrix.clone()) != n {
        return Err(Error::InvalidInput("matrix is not invertible".into()));
    }
    let charpoly = characteristic_polynomial(field, matrix);
    let d = splitting_degree(field, &charpoly);
    let p = field.characteristic() as u64;
    let degree = field.degree() * d;
    let size = p.checked_pow(degree).filter(|&s| s <= MAX_FIELD_SIZE);
    if size.is_none() {
        return Err(Error::SplittingFieldTooLarge { p, degree });
    }
    let ext = GaloisField::new(p, degree)?;
    let embed = embedding(field, &ext);
    let mut poly: Poly = charpoly.iter().map(|&c| embed(c)).collect();
    let order = ext.order() as u64 - 1;
    let mut eigenvalues = Vec::new();
    for lambda in 1..ext.order() {
        let mut multiplicity = 0;
        loop {
            let (quot, rem) = poly_divrem(&ext, &poly, &vec![ext.neg(lambda), 1]);
            if !rem.is_empty() {
                break;
            }
            poly = quot;
            multiplicity += 1;
        }
        if multiplicity > 0 {
            let log = ext.log(lambda).expect("nonzero");
            eigenvalues.push(Eigenvalue { element: ext.format(lambda), log, multiplicity });
        }
    }
    debug_assert_eq!(eigenvalues.iter().map(|e| e.multiplicity).sum::<usize>(), n);
    eigenvalues.sort_by_key(|e| e.log);
    let conductor = eigenvalues
        .iter()
        .map(|e| order / num_integer::gcd(order, e.log as u64))
        .fold(1u64, num_integer::lcm);
    let mut coeffs = vec![BigRational::zero(); conductor as usize];
    for e in &eigenvalues {
        let k = (e.log as u64 * conductor / order) as usize;
        coeffs[k] += BigRational::from_integer(BigInt::from(e.multiplicity));
    }
    let value = Cyclotomic::from_exponent_coeffs(conductor as u32, &coeffs);
    Ok(BrauerValue { value, dimension: n, splitting_field: ext.order() as u64, eigenvalues })
}

/// Embeds `base` into `ext` by sending its generator to the root of its
/// defining polynomial with the least discrete logarithm.
fn embedding<'a>(base: &'a GaloisField, ext: &'a GaloisField) -> impl Fn(u32) -> u32 + 'a {
    let modulus = base.modulus();
    let root = (0..ext.order() as u64 - 1)
        .map(|k| ext.exp(k))
        .find(|&r| modulus.iter().rev().fold(0, |acc, &c| ext.add(ext.mul(acc, r), c)) == 0)
        .expect("the extension contains the base field");
    move |x| {
        base.coordinates(x)
            .iter()
            .rev()
            .fold(0, |acc, &c| ext.add(ext.mul(acc, root), c))
    }
}
