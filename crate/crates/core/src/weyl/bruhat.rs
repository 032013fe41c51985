use std::collections::BTreeSet;

use super::{ElementTable, WeylElement};
use crate::error::Result;

impl WeylElement {
    /// Bruhat order `self <= w`.
    ///
    /// Walks a reduced word of `w` from the right: if `ws < w` then
    /// `y <= w` iff `min(y, ys) <= ws`. This is the subword property
    /// applied one letter at a time.
    pub fn bruhat_leq(&self, w: &WeylElement) -> Result<bool> {
        // same-group check
        self.multiply(w)?;
        let mut y = self.clone();
        let mut w = w.clone();
        let mut ly = y.length();
        let mut lw = w.length();
        loop {
            if ly > lw {
                return Ok(false);
            }
            if lw == 0 {
                return Ok(y.is_identity());
            }
            let i = (0..w.group().rank()).find(|&i| w.is_right_descent(i)).expect("w is not the identity");
            w = w.right_mul_generator(i);
            lw -= 1;
            if y.is_right_descent(i) {
                y = y.right_mul_generator(i);
                ly -= 1;
            }
        }
    }
}

/// All products of subwords of `word` (a brute-force oracle for the Bruhat
/// interval below the element the word represents).
pub fn subword_products(table: &ElementTable, word: &[usize]) -> BTreeSet<usize> {
    let mut reached = BTreeSet::from([0usize]);
    for &i in word {
        let extended: Vec<usize> = reached.iter().map(|&x| table.rmul(x, i)).collect();
        reached.extend(extended);
    }
    reached
}

/// Indices `y` with `y <= w` in Bruhat order, for an enumerated group.
pub fn bruhat_interval(table: &ElementTable, w: usize) -> Vec<usize> {
    let mut below = vec![false; table.len()];
    below[0] = true;
    // subword property: the interval is the set of subword products of any
    // one reduced word
    let mut reached = vec![0usize];
    for &i in table.word(w) {
        let mut fresh = Vec::new();
        for &x in &reached {
            let xs = table.rmul(x, i as usize);
            if !below[xs] {
                below[xs] = true;
                fresh.push(xs);
            }
        }
        reached.extend(fresh);
    }
    reached.sort_unstable();
    reached
}

#[cfg(test)]
mod tests {
    use super::super::WeylGroup;
    use super::*;

    #[test]
    fn examples() {
        let a3 = WeylGroup::new("A3".parse().unwrap()).unwrap();
        let w = a3.parse_element("s1 s3 s2 s3 s1").unwrap();
        let y = a3.parse_element("s1 s3").unwrap();
        assert!(y.bruhat_leq(&w).unwrap());
        assert!(w.bruhat_leq(&w).unwrap());
        let a2 = WeylGroup::new("A2".parse().unwrap()).unwrap();
        let s1 = a2.generator(0).unwrap();
        let s2 = a2.generator(1).unwrap();
        assert!(!s1.bruhat_leq(&s2).unwrap());
    }

    #[test]
    fn matches_subword_oracle() {
        for s in ["A3", "B3", "G2", "A2", "B2"] {
            let g = WeylGroup::new(s.parse().unwrap()).unwrap();
            let t = ElementTable::new(&g, 1000).unwrap();
            for w in 0..t.len() {
                let word: Vec<usize> = t.word(w).iter().map(|&i| i as usize).collect();
                let oracle = subword_products(&t, &word);
                let we = t.element(w);
                let leq: BTreeSet<usize> =
                    (0..t.len()).filter(|&y| t.element(y).bruhat_leq(&we).unwrap()).collect();
                assert_eq!(leq, oracle, "{s} w={}", t.word_string(w));
                assert_eq!(bruhat_interval(&t, w), oracle.iter().copied().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn partial_order_axioms() {
        let g = WeylGroup::new("B3".parse().unwrap()).unwrap();
        let t = ElementTable::new(&g, 1000).unwrap();
        let n = t.len();
        let leq: Vec<Vec<bool>> =
            (0..n).map(|y| (0..n).map(|w| t.element(y).bruhat_leq(&t.element(w)).unwrap()).collect()).collect();
        for a in 0..n {
            assert!(leq[a][a]);
            for b in 0..n {
                if leq[a][b] {
                    assert!(t.length(a) <= t.length(b));
                    if a != b {
                        assert!(!leq[b][a]);
                    }
                    for c in 0..n {
                        if leq[b][c] {
                            assert!(leq[a][c]);
                        }
                    }
                }
            }
        }
    }
}
