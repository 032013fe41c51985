use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dl::extension_field;
use crate::error::Result;
use crate::field::GaloisField;

/// Number of `SL_2(F_q)` elements sampled by [`drinfeld_count`].
pub const SL2_SAMPLES: usize = 10;

/// Points of `x^q y - x y^q = 1` over `GF(q^m)` and the action checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DrinfeldReport {
    pub q: u64,
    pub m: u32,
    pub count: u64,
    /// Sampled `SL_2(F_q)` elements, as `[a, b, c, d]` in field encoding.
    pub sl2_sample: Vec<[u32; 4]>,
    pub sl2_preserves: bool,
    /// Whether `GF(q^m)` contains the `(q+1)`-th roots of unity.
    pub torus_available: bool,
    /// Every torus orbit on the solutions has `q + 1` points
    /// (`None` when the torus is not available).
    pub torus_orbits_free: Option<bool>,
    pub torus_orbits: Option<u64>,
}

fn on_curve(f: &GaloisField, t: u32, x: u32, y: u32) -> bool {
    f.sub(f.mul(f.frobenius(x, t), y), f.mul(x, f.frobenius(y, t))) == 1
}

/// All solutions, by testing every pair. Only sensible for small fields.
pub fn drinfeld_solutions_brute_force(q: u64, m: u32) -> Result<Vec<(u32, u32)>> {
    let (f, t) = extension_field(q, m)?;
    let mut out = Vec::new();
    for x in f.elements() {
        for y in f.elements() {
            if on_curve(&f, t, x, y) {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Solutions via `y = x u`: then `x^(q+1) (u - u^q) = 1`, and the additive map
/// `u -> u - u^q` has kernel `F_q`.
fn solutions(f: &GaloisField, t: u32) -> Vec<(u32, u32)> {
    let mut preimages: Vec<Vec<u32>> = vec![Vec::new(); f.order() as usize];
    for u in f.elements() {
        preimages[f.sub(u, f.frobenius(u, t)) as usize].push(u);
    }
    let q1 = f.characteristic() as u64;
    let q_plus_1 = q1.pow(t) + 1;
    let mut out = Vec::new();
    for x in 1..f.order() {
        let c = f.inv(f.pow(x, q_plus_1));
        out.extend(preimages[c as usize].iter().map(|&u| (x, f.mul(x, u))));
    }
    out
}

/// Counts points of the Drinfeld curve over `GF(q^m)` and checks that sampled
/// `SL_2(F_q)` substitutions and, when present, multiplication by
/// `(q+1)`-th roots of unity permute them.
pub fn drinfeld_count(q: u64, m: u32, seed: u64) -> Result<DrinfeldReport> {
    let (f, t) = extension_field(q, m)?;
    let points = solutions(&f, t);
    let set: HashSet<(u32, u32)> = points.iter().copied().collect();

    let subfield = f.subfield_elements(t);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sl2_sample = Vec::with_capacity(SL2_SAMPLES);
    while sl2_sample.len() < SL2_SAMPLES {
        let [a, b, c, d] = [0; 4].map(|_| subfield[rng.gen_range(0..subfield.len())]);
        if f.sub(f.mul(a, d), f.mul(b, c)) == 1 {
            sl2_sample.push([a, b, c, d]);
        }
    }
    let sl2_preserves = sl2_sample.iter().all(|&[a, b, c, d]| {
        points.iter().all(|&(x, y)| set.contains(&(f.add(f.mul(a, x), f.mul(b, y)), f.add(f.mul(c, x), f.mul(d, y)))))
    });

    let order = f.order() as u64 - 1;
    let q_plus_1 = q + 1;
    let torus_available = order % q_plus_1 == 0;
    let (torus_orbits_free, torus_orbits) = if torus_available {
        let lambda = f.exp(order / q_plus_1);
        let mut seen = HashSet::new();
        let mut orbits = 0u64;
        let mut free = true;
        for &p in &points {
            if seen.contains(&p) {
                continue;
            }
            orbits += 1;
            let mut size = 0u64;
            let mut cur = p;
            loop {
                free &= set.contains(&cur);
                seen.insert(cur);
                size += 1;
                cur = (f.mul(lambda, cur.0), f.mul(lambda, cur.1));
                if cur == p {
                    break;
                }
            }
            free &= size == q_plus_1;
        }
        (Some(free), Some(orbits))
    } else {
        (None, None)
    };

    Ok(DrinfeldReport {
        q,
        m,
        count: points.len() as u64,
        sl2_sample,
        sl2_preserves,
        torus_available,
        torus_orbits_free,
        torus_orbits,
    })
}
