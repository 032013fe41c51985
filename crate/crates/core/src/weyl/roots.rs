use std::collections::HashMap;

use super::{CoxeterSpec, Family};
use crate::error::{Error, Result};

/// Largest rank the packed root keys support.
const MAX_RANK: usize = 32;

/// `a[i][j] = <alpha_i^vee, alpha_j>`, Bourbaki numbering. Type C shares the
/// Weyl group of type B, so it is built from the B matrix.
pub(crate) fn cartan_matrix(spec: CoxeterSpec) -> Vec<Vec<i32>> {
    let n = spec.rank;
    let mut a = vec![vec![0i32; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i32, aji: i32| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match spec.family {
        Family::A => (1..n).for_each(|i| link(i - 1, i, -1, -1)),
        Family::B | Family::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -1, -2);
        }
        Family::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Family::G => link(0, 1, -3, -1),
    }
    a
}

/// All roots in simple-root coordinates, with simple-reflection tables.
///
/// Indices `0..rank` are the simple roots, `0..n_positive` the positive roots
/// ordered by height, and `n_positive + k` is the negative of root `k`.
#[derive(Debug)]
pub(crate) struct RootSystem {
    pub rank: usize,
    pub n_positive: usize,
    coords: Vec<i32>,
    lookup: HashMap<u128, u16>,
    /// `reflections[i][r]` is the index of `s_i(root r)`.
    pub reflections: Vec<Vec<u16>>,
}

fn pack(c: &[i32]) -> u128 {
    c.iter().enumerate().fold(0u128, |k, (i, &x)| {
        debug_assert!((-8..8).contains(&x));
        k | (((x + 8) as u128) << (4 * i))
    })
}

impl RootSystem {
    pub fn new(spec: CoxeterSpec) -> Result<Self> {
        let rank = spec.rank;
        if rank > MAX_RANK {
            return Err(Error::UnsupportedSpec(format!("{spec}: rank above {MAX_RANK}")));
        }
        let cartan = cartan_matrix(spec);
        let reflect = |c: &[i32], i: usize| -> Vec<i32> {
            let pairing: i32 = (0..rank).map(|j| c[j] * cartan[i][j]).sum();
            let mut out = c.to_vec();
            out[i] -= pairing;
            out
        };
        // closure of the simple roots under reflections
        let mut found: Vec<Vec<i32>> = (0..rank)
            .map(|i| (0..rank).map(|j| i32::from(i == j)).collect())
            .collect();
        let mut seen: std::collections::HashSet<Vec<i32>> = found.iter().cloned().collect();
        let mut k = 0;
        while k < found.len() {
            for i in 0..rank {
                let r = reflect(&found[k], i);
                if seen.insert(r.clone()) {
                    found.push(r);
                }
            }
            k += 1;
        }
        let mut positive: Vec<Vec<i32>> = found.into_iter().filter(|c| c.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_positive = positive.len();
        let mut coords = Vec::with_capacity(2 * n_positive * rank);
        for c in &positive {
            coords.extend_from_slice(c);
        }
        for c in &positive {
            coords.extend(c.iter().map(|x| -x));
        }
        let n_roots = 2 * n_positive;
        let lookup: HashMap<u128, u16> =
            (0..n_roots).map(|r| (pack(&coords[r * rank..(r + 1) * rank]), r as u16)).collect();
        let mut sys = RootSystem { rank, n_positive, coords, lookup, reflections: Vec::new() };
        let reflections = (0..rank)
            .map(|i| (0..n_roots).map(|r| sys.index_of(&reflect(sys.coords(r as u16), i))).collect())
            .collect();
        sys.reflections = reflections;
        Ok(sys)
    }

    pub fn n_roots(&self) -> usize {
        2 * self.n_positive
    }

    pub fn coords(&self, r: u16) -> &[i32] {
        let r = r as usize;
        &self.coords[r * self.rank..(r + 1) * self.rank]
    }

    pub fn is_positive(&self, r: u16) -> bool {
        (r as usize) < self.n_positive
    }

    pub fn negate(&self, r: u16) -> u16 {
        let n = self.n_positive as u16;
        if r < n {
            r + n
        } else {
            r - n
        }
    }

    pub fn index_of(&self, c: &[i32]) -> u16 {
        *self.lookup.get(&pack(c)).expect("vector is not a root")
    }

    /// Image of root `r` under the element whose simple-root images are `images`.
    pub fn apply(&self, images: &[u16], r: u16) -> u16 {
        if (r as usize) < self.rank {
            return images[r as usize];
        }
        let c = self.coords(r);
        let mut out = vec![0i32; self.rank];
        for (k, &ck) in c.iter().enumerate() {
            if ck != 0 {
                for (o, &x) in out.iter_mut().zip(self.coords(images[k])) {
                    *o += ck * x;
                }
            }
        }
        self.index_of(&out)
    }

    /// Matrix of the element in the simple-root basis; column `j` holds the
    /// coordinates of the image of `alpha_j`.
    pub fn matrix(&self, images: &[u16]) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut m = vec![vec![0i64; n]; n];
        for (j, &img) in images.iter().enumerate() {
            for (i, &x) in self.coords(img).iter().enumerate() {
                m[i][j] = x as i64;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (s, n) in [("A3", 12), ("B2", 8), ("C3", 18), ("D4", 24), ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240)] {
            assert_eq!(sys(s).n_roots(), n, "{s}");
        }
    }

    #[test]
    fn highest_root_of_e8() {
        let r = sys("E8");
        let top = r.coords((r.n_positive - 1) as u16);
        assert_eq!(top, &[2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn reflections_are_involutions_with_one_sign_flip() {
        for s in ["A4", "B3", "D5", "G2", "F4", "E6"] {
            let r = sys(s);
            for (i, refl) in r.reflections.iter().enumerate() {
                let mut flips = 0;
                for x in 0..r.n_roots() as u16 {
                    assert_eq!(refl[refl[x as usize] as usize], x);
                    if r.is_positive(x) && !r.is_positive(refl[x as usize]) {
                        flips += 1;
                        assert_eq!(x as usize, i);
                    }
                }
                assert_eq!(flips, 1);
            }
        }
    }
}
