//! Dense integer polynomials and cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Coefficients in increasing degree; no trailing zeros except for the zero
/// polynomial, which is the empty vector.
pub type IntPoly = Vec<i64>;

pub fn trim(p: &mut IntPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn mul(a: &[i64], b: &[i64]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Division by a monic polynomial. Returns `(quotient, remainder)`.
pub fn divrem_monic(a: &[i64], m: &[i64]) -> (IntPoly, IntPoly) {
    assert_eq!(m.last(), Some(&1), "divisor must be monic");
    let dm = m.len() - 1;
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() <= dm {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0i64; rem.len() - dm];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dm];
        if c == 0 {
            continue;
        }
        quot[k] = c;
        for (j, &mj) in m.iter().enumerate() {
            rem[k + j] -= c * mj;
        }
    }
    rem.truncate(dm);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub fn eval(p: &[i64], x: i64) -> i64 {
    p.iter().rev().fold(0, |acc, &c| acc * x + c)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial, memoized.
pub fn cyclotomic(n: u64) -> Arc<IntPoly> {
    assert!(n >= 1);
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}: multiply the positive factors,
    // then divide out the negative ones.
    let mut num: IntPoly = vec![1];
    let mut den: IntPoly = vec![1];
    for d in divisors(n) {
        let mut f = vec![0i64; d as usize + 1];
        f[0] = -1;
        f[d as usize] = 1;
        match mobius(n / d) {
            1 => num = mul(&num, &f),
            -1 => den = mul(&den, &f),
            _ => {}
        }
    }
    // den is monic up to sign; normalize both to make den monic
    if den.last() == Some(&-1) {
        den.iter_mut().for_each(|c| *c = -*c);
        num.iter_mut().for_each(|c| *c = -*c);
    }
    let (q, r) = divrem_monic(&num, &den);
    debug_assert!(r.is_empty());
    let q = Arc::new(q);
    cyclotomic_cache().lock().unwrap().insert(n, q.clone());
    q
}

/// Factor `p` into cyclotomic polynomials, as `(index, multiplicity)` pairs in
/// increasing index. Returns `None` when `p` is not a product of cyclotomic
/// polynomials (up to sign it must be monic).
pub fn cyclotomic_factorization(p: &[i64]) -> Option<Vec<(u64, u32)>> {
    let mut rest = p.to_vec();
    trim(&mut rest);
    if rest.last() != Some(&1) {
        return None;
    }
    let mut out = Vec::new();
    let deg = rest.len() as u64 - 1;
    let mut d = 1u64;
    // phi(d) >= sqrt(d/2), so d <= 2 deg^2 covers every factor of degree <= deg.
    while rest.len() > 1 && d <= 2 * deg * deg + 2 {
        if euler_phi(d) <= rest.len() as u64 - 1 {
            let phi = cyclotomic(d);
            let mut mult = 0;
            loop {
                let (q, r) = divrem_monic(&rest, &phi);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((d, mult));
            }
        }
        d += 1;
    }
    (rest == vec![1]).then_some(out)
}

/// Render a polynomial in `x`, highest degree first.
pub fn format_poly(p: &[i64], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let coeff = match (c.abs(), i) {
            (1, 0) => "1".to_string(),
            (1, _) => String::new(),
            (a, _) => a.to_string(),
        };
        let sign = if c < 0 { "-" } else { "+" };
        terms.push((sign, format!("{coeff}{mono}")));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (sign, t)) in terms.iter().enumerate() {
        if k == 0 {
            if *sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(if *sign == "-" { " - " } else { " + " });
        }
        s.push_str(t);
    }
    s
}
