//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits with status 1 if any criterion fails or exceeds its time limit.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use liecomb::cuspidal::{self, CheckStatus, DIAGNOSTIC_BOUND};
use liecomb::cyclotomic::Cyclotomic;
use liecomb::field::GaloisField;
use liecomb::flags::{self, Flag, GroupType, SymplecticForm};
use liecomb::group::{self, FiniteGroup, MData};
use liecomb::hecke::{CellKind, HeckeAlgebra};
use liecomb::weyl::{CoxeterSpec, ElementTable, WeylGroup, DEFAULT_ENUMERATION_BOUND};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn spec(name: &str) -> CoxeterSpec {
    name.parse().expect("valid Cartan type")
}

fn algebra(name: &str) -> Arc<HeckeAlgebra> {
    let group = WeylGroup::new(spec(name)).expect("group");
    HeckeAlgebra::new(&group, DEFAULT_ENUMERATION_BOUND).expect("algebra")
}

fn kl_worked_example() -> Outcome {
    let h = algebra("A3");
    let g = h.group();
    let t = h.table();
    let idx = |word: &str| t.index_of(&g.parse_element(word).unwrap()).unwrap();
    let mut expected = BTreeSet::new();
    for y in ["1", "s2"] {
        expected.insert((idx(y), idx("s2 s1 s3 s2")));
    }
    for y in ["1", "s1", "s3", "s1 s3"] {
        expected.insert((idx(y), idx("s1 s3 s2 s3 s1")));
    }
    let table = h.kl_table();
    let mut found = BTreeSet::new();
    for ((y, w), p) in table.iter() {
        match p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().as_slice() {
            [a] if a == "1" => {}
            [a, b] if a == "1" && b == "1" => {
                found.insert((y, w));
            }
            _ => return Err(format!("P({}, {}) = {p}", t.word_string(y), t.word_string(w))),
        }
    }
    ensure!(found == expected, "pairs with 1 + q: {:?}", found.iter().map(|&(y, w)| (t.word_string(y), t.word_string(w))).collect::<Vec<_>>());
    Ok(format!("{} pairs y <= w, six equal to 1 + q", table.len()))
}

fn kl_defining_properties() -> Outcome {
    let mut checked = 0;
    for name in ["A3", "B3", "G2"] {
        let h = algebra(name);
        let t = h.table();
        for w in 0..t.len() {
            let c = h.cprime_at(w);
            ensure!(c.bar() == c, "{name}: C'_{} is not bar invariant", t.word_string(w));
        }
        let table = h.kl_table();
        for ((y, w), p) in table.iter() {
            let (ly, lw) = (t.length(y), t.length(w));
            if y == w {
                ensure!(p.degree() == Some(0) && p.coeff(0) == 1.into(), "{name}: P_w,w = {p}");
            } else {
                let deg = p.degree().ok_or_else(|| format!("{name}: zero P for y <= w"))?;
                ensure!(2 * deg < lw - ly, "{name}: deg P({}, {}) = {deg}", t.word_string(y), t.word_string(w));
            }
        }
        checked += t.len();
    }
    Ok(format!("{checked} canonical basis elements"))
}

fn palindromicity() -> Outcome {
    let mut checked = 0;
    for name in ["A3", "B3", "G2"] {
        let h = algebra(name);
        for w in 0..h.table().len() {
            let r = h.palindrome_check_at(w);
            ensure!(r.palindromic, "{name}: {} gives {}", r.w, r.polynomial);
            checked += 1;
        }
    }
    Ok(format!("{checked} elements palindromic"))
}

fn rsk_shape(word: &[u32]) -> Vec<usize> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &x in word {
        let mut x = x;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![x]);
                break;
            }
            match rows[r].iter().position(|&y| y > x) {
                Some(p) => {
                    x = std::mem::replace(&mut rows[r][p], x);
                    r += 1;
                }
                None => {
                    rows[r].push(x);
                    break;
                }
            }
        }
    }
    rows.iter().map(Vec::len).collect()
}

fn cells_oracle() -> Outcome {
    let h = algebra("A3");
    let cells = h.cells(CellKind::TwoSided);
    let perm = |w: &liecomb::weyl::WeylElement| w.to_big_permutation().unwrap().images().to_vec();
    let blocks: BTreeSet<BTreeSet<Vec<u32>>> = cells.blocks.iter().map(|b| b.iter().map(perm).collect()).collect();
    let mut by_shape: BTreeMap<Vec<usize>, BTreeSet<Vec<u32>>> = BTreeMap::new();
    for w in h.table().elements() {
        let p = perm(&w);
        by_shape.entry(rsk_shape(&p)).or_default().insert(p);
    }
    let rsk: BTreeSet<_> = by_shape.into_values().collect();
    ensure!(blocks.len() == 5 && blocks == rsk, "S4 cells {:?} differ from RSK classes", cells.block_sizes());
    let mut sizes = algebra("A2").cells(CellKind::TwoSided).block_sizes();
    sizes.sort_unstable();
    ensure!(sizes == [1, 1, 4], "S3 cell sizes {sizes:?}");
    Ok("S4: 5 cells = RSK classes; S3 sizes {1,1,4}".into())
}

/// For an elementary abelian group generated by the disjoint transpositions
/// `(2i+1, 2i+2)`: the coordinates of the class element and of the character
/// of each pair of `M(G)`.
fn elementary_abelian_coordinates(data: &MData, n: usize) -> Vec<Vec<(bool, bool)>> {
    let g = data.group();
    let generator = |i: usize| -> usize {
        (0..g.order())
            .find(|&x| {
                let p = g.permutation(x).unwrap();
                (0..p.len()).all(|k| {
                    let moved = k / 2 == i;
                    (p[k] as usize != k) == moved
                })
            })
            .expect("coordinate generator")
    };
    let gens: Vec<usize> = (0..n).map(generator).collect();
    data.pairs()
        .iter()
        .map(|pair| {
            let x = g.classes()[pair.class].representative;
            let (sub, table) = data.centralizer(pair.class);
            let p = g.permutation(x).unwrap();
            (0..n)
                .map(|i| {
                    let local = sub.local_index(gens[i]).unwrap();
                    let value = &table.values[pair.character][sub.group.class_of(local)];
                    (p[2 * i] as usize != 2 * i, *value == Cyclotomic::from(-1))
                })
                .collect()
        })
        .collect()
}

fn fourier_matrices() -> Outcome {
    let mut sizes = Vec::new();
    for (name, expected) in [("Z2", 4), ("F2^2", 16), ("S3", 8), ("S4", 21), ("S5", 39)] {
        let g = group::builtin(name).map_err(|e| e.to_string())?;
        let started = Instant::now();
        let m = group::pairing_matrix(&g).map_err(|e| e.to_string())?;
        ensure!(m.len() == expected, "|M({name})| = {}", m.len());
        ensure!(m.is_involutive(), "{name}: M^2 != I");
        ensure!(m.is_unitary(), "{name}: not unitary");
        if name == "S5" {
            ensure!(started.elapsed() < Duration::from_secs(60), "S5 took {:?}", started.elapsed());
        }
        sizes.push(format!("{name}:{}", m.len()));
    }
    let z2 = MData::new(&group::builtin("Z2").unwrap()).unwrap();
    let z2_coords = elementary_abelian_coordinates(&z2, 1);
    let z2_matrix = z2.pairing_matrix();
    let z2_index = |c: (bool, bool)| z2_coords.iter().position(|v| v[0] == c).unwrap();
    for n in 2..=3 {
        let data = MData::new(&group::builtin(&format!("F2^{n}")).unwrap()).unwrap();
        let coords = elementary_abelian_coordinates(&data, n);
        let m = data.pairing_matrix();
        for (a, ca) in coords.iter().enumerate() {
            for (b, cb) in coords.iter().enumerate() {
                let mut product = Cyclotomic::one();
                for i in 0..n {
                    product = &product * &z2_matrix.entries[z2_index(ca[i])][z2_index(cb[i])];
                }
                ensure!(m.entries[a][b] == product, "F2^{n} entry ({a}, {b}) is not the tensor product");
            }
        }
    }
    Ok(format!("{}; F2^2, F2^3 are tensor powers of Z2", sizes.join(" ")))
}

fn burnside_counts() -> Outcome {
    let mut checked = 0;
    let compare = |g: &Arc<FiniteGroup>, t: [usize; 3]| -> Result<(), String> {
        let fast = group::burnside_triple_count(g, t).map_err(|e| e.to_string())?;
        let slow = group::brute_force_triple_count(g, t).map_err(|e| e.to_string())?;
        ensure!(fast == slow.into(), "classes {t:?}: {fast} vs {slow}");
        Ok(())
    };
    for name in ["S3", "S4", "A4"] {
        let g = group::builtin(name).unwrap();
        let r = g.classes().len();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    compare(&g, [i, j, k])?;
                    checked += 1;
                }
            }
        }
    }
    let a5 = group::builtin("A5").unwrap();
    let with_order = |o: u64| (0..a5.classes().len()).filter(|&c| a5.element_order(a5.classes()[c].representative) == o).collect::<Vec<_>>();
    for &i in &with_order(2) {
        for &j in &with_order(3) {
            for &k in &with_order(5) {
                compare(&a5, [i, j, k])?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} class triples agree"))
}

fn flag_partition() -> Outcome {
    let cases = [
        (GroupType::Gl, 2, 2, 1),
        (GroupType::Gl, 2, 2, 2),
        (GroupType::Gl, 2, 3, 1),
        (GroupType::Gl, 2, 3, 2),
        (GroupType::Gl, 3, 2, 1),
        (GroupType::Gl, 3, 2, 2),
        (GroupType::Sp, 2, 2, 1),
        (GroupType::Sp, 2, 2, 2),
    ];
    for (ty, n, q, m) in cases {
        let r = flags::dl_piece_counts(ty, n, q, m).map_err(|e| e.to_string())?;
        let sum: u64 = r.counts.iter().map(|(_, c)| c).sum();
        ensure!(sum == r.total_flags, "{ty} n={n} q={q} m={m}: {sum} != {}", r.total_flags);
    }
    let r = flags::dl_piece_counts(GroupType::Gl, 2, 2, 2).unwrap();
    let counts: Vec<u64> = r.counts.iter().map(|(_, c)| *c).collect();
    ensure!(counts == [3, 2], "GL2 over GF(4): {counts:?}");
    Ok(format!("{} cases partition; GL2/GF(4) pieces {{3, 2}}", cases.len()))
}

fn coxeter_condition() -> Outcome {
    for n in [2, 3] {
        let c = flags::coxeter_condition_check(n, 2, 2).map_err(|e| e.to_string())?;
        ensure!(c.equal, "n={n}: chain {} vs relative position {}", c.chain_condition, c.coxeter_position);
    }
    Ok("n = 2, 3 agree".into())
}

fn drinfeld_curve() -> Outcome {
    for q in [2, 3, 4] {
        let r = flags::drinfeld_count(q, 1, 0).map_err(|e| e.to_string())?;
        ensure!(r.count == 0, "GF({q}) has {} points", r.count);
    }
    let r = flags::drinfeld_count(2, 2, 0).unwrap();
    ensure!(r.count == 6, "GF(4) for q = 2 has {} points", r.count);
    let mut divisible = 0;
    for (q, m) in [(2, 2), (2, 4), (3, 2), (3, 4), (4, 2), (5, 2), (7, 2), (2, 6)] {
        let r = flags::drinfeld_count(q, m, 11).map_err(|e| e.to_string())?;
        ensure!(r.sl2_preserves && r.sl2_sample.len() == 10, "q={q} m={m}: SL2 sample moves the curve");
        if r.torus_available {
            ensure!(r.count % (q + 1) == 0, "q={q} m={m}: {} not divisible by {}", r.count, q + 1);
            divisible += 1;
        }
    }
    Ok(format!("zero over prime fields, 6 over GF(4), {divisible} counts divisible by q+1"))
}

fn brauer_dimensions() -> Outcome {
    let mut dims = Vec::new();
    for (n, p) in [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)] {
        for mode in [flags::BrauerMode::Modular, flags::BrauerMode::Rational] {
            let s = flags::brauer_space_dim(n, p, mode).map_err(|e| e.to_string())?;
            ensure!(s.matches_expected(), "n={n} p={p} {mode}: dimension {} expected {}", s.dimension, s.expected);
            let stable = flags::kernel_stability_check(n, p, mode, 20, 5, 1).map_err(|e| e.to_string())?;
            ensure!(stable, "n={n} p={p} {mode}: kernel not stable");
            dims.push(s.dimension.to_string());
        }
    }
    Ok(format!("dimensions {}", dims.join(",")))
}

fn cuspidal_tables() -> Outcome {
    for n in 2..=12 {
        for family in ["B", "C", "D"] {
            if family == "D" && n < 4 {
                continue;
            }
            let s = spec(&format!("{family}{n}"));
            let k = (1..=n).find(|k| if family == "D" { k * k == n && k % 2 == 0 } else { k * k + k == n });
            let data = cuspidal::cuspidal_data(s).map_err(|e| e.to_string())?;
            ensure!(data.len() == usize::from(k.is_some()), "{s}: {} data", data.len());
        }
    }
    ensure!(cuspidal::cuspidal_data(spec("A5")).unwrap().is_empty(), "type A has cuspidal data");
    let mut informational = Vec::new();
    for (name, count) in [("E6", 2), ("E7", 2), ("E8", 13), ("F4", 7), ("G2", 4), ("B2", 1), ("C6", 1), ("D4", 1)] {
        let s = spec(name);
        let report = cuspidal::validate(s, DIAGNOSTIC_BOUND).map_err(|e| e.to_string())?;
        ensure!(report.data.len() == count, "{name}: {} data", report.data.len());
        ensure!(report.passed(), "{name}: required check failed");
        for c in report.check("exponent = min length / 2") {
            if ["G2", "F4", "E6"].contains(&name) {
                ensure!(c.status == CheckStatus::Pass, "{name}: {c}");
            } else if !c.required {
                informational.push(format!("{name} {}", c.status));
            }
        }
    }
    Ok(format!("cardinalities and invariants hold; length diagnostic for classical types: {}", informational.join(", ")))
}

fn weyl_core() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 1..=3 {
        for q in [2, 3] {
            let f = GaloisField::with_order(q).unwrap();
            let all = flags::enumerate_flags(n, &f, None).map_err(|e| e.to_string())?;
            for base in [0, rng.gen_range(0..all.len())] {
                let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
                for other in &all {
                    let w = flags::relative_position(&f, &all[base], other, None).map_err(|e| e.to_string())?;
                    *counts.entry(w.images().to_vec()).or_default() += 1;
                }
                let factorial: usize = (1..=n).product();
                ensure!(counts.len() == factorial, "n={n} q={q}: {} positions occur", counts.len());
                for (w, c) in counts {
                    let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
                    ensure!(c == q.pow(inversions as u32), "n={n} q={q} w={w:?}: {c} flags");
                }
            }
        }
    }
    let f = GaloisField::with_order(3).unwrap();
    let form = SymplecticForm::new(4).unwrap();
    let sp: Vec<Flag> = flags::enumerate_flags(4, &f, Some(&form)).map_err(|e| e.to_string())?;
    for _ in 0..1000 {
        let a = &sp[rng.gen_range(0..sp.len())];
        let b = &sp[rng.gen_range(0..sp.len())];
        let w = flags::relative_position(&f, a, b, Some(&form)).map_err(|e| e.to_string())?;
        ensure!(w.commutes_with_involution(), "relative position {w} does not commute with the involution");
    }
    let mut elements = 0;
    for name in ["A3", "B3", "G2"] {
        let g = WeylGroup::new(spec(name)).unwrap();
        let table = ElementTable::new(&g, DEFAULT_ENUMERATION_BOUND).unwrap();
        for w in table.elements() {
            let by_parabolics = w.is_elliptic_by_parabolics(DEFAULT_ENUMERATION_BOUND).map_err(|e| e.to_string())?;
            ensure!(w.is_elliptic() == by_parabolics, "{name}: {} disagrees", w.word_string());
            elements += 1;
        }
    }
    Ok(format!("Schubert counts q^l(w); 1000 symplectic pairs; {elements} elements elliptic criteria agree"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("1 KL worked example", 1, kl_worked_example),
        ("2 KL defining properties", 10, kl_defining_properties),
        ("3 palindromicity", 60, palindromicity),
        ("4 cells oracle", 60, cells_oracle),
        ("5 Fourier matrices", 120, fourier_matrices),
        ("6 Burnside counts", 10, burnside_counts),
        ("7 flag partition", 60, flag_partition),
        ("8 Coxeter condition", 60, coxeter_condition),
        ("9 Drinfeld curve", 60, drinfeld_curve),
        ("10 flag function dimensions", 60, brauer_dimensions),
        ("11 cuspidal tables", 300, cuspidal_tables),
        ("12 Weyl core", 120, weyl_core),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("took {elapsed:.2?}, limit {limit}s")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {name} ({elapsed:.2?}): {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name} ({elapsed:.2?}): {detail}");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
