use std::collections::HashMap;
use std::sync::Arc;

use super::group::format_word;
use super::{WeylElement, WeylGroup};
use crate::error::{too_large, Error, Result};

/// A fully enumerated Weyl group with multiplication-by-generator tables.
///
/// Index 0 is the identity; indices are sorted by length, then by ShortLex
/// reduced word.
pub struct ElementTable {
    group: Arc<WeylGroup>,
    images: Vec<Box<[u16]>>,
    index: HashMap<Box<[u16]>, u32>,
    lengths: Vec<u32>,
    words: Vec<Vec<u8>>,
    lmul: Vec<u32>,
    rmul: Vec<u32>,
    inverse: Vec<u32>,
}

impl std::fmt::Debug for ElementTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ElementTable").field("spec", &self.group.spec()).field("size", &self.len()).finish()
    }
}

impl ElementTable {
    pub fn new(group: &Arc<WeylGroup>, bound: u64) -> Result<Self> {
        let order = group.order();
        if *order > bound.into() {
            return Err(too_large(format!("W({})", group.spec()), order, bound));
        }
        let rank = group.rank();
        // breadth-first search on left multiplication; BFS depth is the length
        let id: Box<[u16]> = (0..rank as u16).collect();
        let mut images = vec![id.clone()];
        let mut index: HashMap<Box<[u16]>, u32> = HashMap::from([(id, 0)]);
        let mut lengths = vec![0u32];
        let mut k = 0;
        while k < images.len() {
            for i in 0..rank {
                let next = group.lmul(&images[k], i);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), images.len() as u32);
                    images.push(next);
                    lengths.push(lengths[k] + 1);
                }
            }
            k += 1;
        }
        let n = images.len();
        let bfs_lmul: Vec<u32> =
            (0..n * rank).map(|xi| index[&group.lmul(&images[xi / rank], xi % rank)]).collect();
        // ShortLex word: smallest left descent, then the word of the shorter element
        let mut bfs_words: Vec<Vec<u8>> = vec![Vec::new(); n];
        for x in 1..n {
            let (i, y) = (0..rank)
                .map(|i| (i, bfs_lmul[x * rank + i] as usize))
                .find(|&(_, y)| lengths[y] < lengths[x])
                .expect("non-identity element has a left descent");
            let mut w = vec![i as u8];
            w.extend_from_slice(&bfs_words[y]);
            bfs_words[x] = w;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| lengths[a].cmp(&lengths[b]).then_with(|| bfs_words[a].cmp(&bfs_words[b])));
        let images: Vec<Box<[u16]>> = order.iter().map(|&o| images[o].clone()).collect();
        let lengths: Vec<u32> = order.iter().map(|&o| lengths[o]).collect();
        let words: Vec<Vec<u8>> = order.iter().map(|&o| std::mem::take(&mut bfs_words[o])).collect();
        let index: HashMap<Box<[u16]>, u32> =
            images.iter().enumerate().map(|(i, im)| (im.clone(), i as u32)).collect();
        let mut lmul = vec![0u32; n * rank];
        let mut rmul = vec![0u32; n * rank];
        for (x, im) in images.iter().enumerate() {
            for i in 0..rank {
                lmul[x * rank + i] = index[&group.lmul(im, i)];
                rmul[x * rank + i] = index[&group.rmul(im, i)];
            }
        }
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            let mut y = 0u32;
            // left-multiplying the letters in order reverses the word
            for &i in words[x].iter() {
                y = lmul[y as usize * rank + i as usize];
            }
            inverse[x] = y;
        }
        Ok(ElementTable { group: group.clone(), images, index, lengths, words, lmul, rmul, inverse })
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn length(&self, x: usize) -> usize {
        self.lengths[x] as usize
    }

    pub fn word(&self, x: usize) -> &[u8] {
        &self.words[x]
    }

    pub fn word_string(&self, x: usize) -> String {
        let w: Vec<usize> = self.words[x].iter().map(|&i| i as usize).collect();
        format_word(&w)
    }

    /// Index of `s_i * x`.
    pub fn lmul(&self, x: usize, i: usize) -> usize {
        self.lmul[x * self.rank() + i] as usize
    }

    /// Index of `x * s_i`.
    pub fn rmul(&self, x: usize, i: usize) -> usize {
        self.rmul[x * self.rank() + i] as usize
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    pub fn multiply(&self, x: usize, y: usize) -> usize {
        self.words[y].iter().fold(x, |acc, &i| self.rmul(acc, i as usize))
    }

    pub fn element(&self, x: usize) -> WeylElement {
        WeylElement::from_images(self.group.clone(), self.images[x].clone())
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        (0..self.len()).map(|x| self.element(x))
    }

    pub fn index_of(&self, w: &WeylElement) -> Result<usize> {
        if !Arc::ptr_eq(w.group(), &self.group) {
            return Err(Error::MixedGroups);
        }
        Ok(self.index[w.images()] as usize)
    }

    pub fn longest(&self) -> usize {
        self.len() - 1
    }

    pub fn is_left_descent(&self, x: usize, i: usize) -> bool {
        self.lengths[self.lmul(x, i)] < self.lengths[x]
    }

    pub fn is_right_descent(&self, x: usize, i: usize) -> bool {
        self.lengths[self.rmul(x, i)] < self.lengths[x]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_by_enumeration() {
        for (s, n) in [("A1", 2), ("A3", 24), ("B2", 8), ("B3", 48), ("G2", 12), ("D4", 192), ("F4", 1152)] {
            let g = WeylGroup::new(s.parse().unwrap()).unwrap();
            let t = ElementTable::new(&g, 1_000_000).unwrap();
            assert_eq!(t.len(), n, "{s}");
            assert_eq!(*g.order(), (n as u32).into());
        }
    }

    #[test]
    fn table_consistency() {
        let g = WeylGroup::new("B3".parse().unwrap()).unwrap();
        let t = ElementTable::new(&g, 1000).unwrap();
        for x in 0..t.len() {
            let e = t.element(x);
            assert_eq!(e.length(), t.length(x));
            assert_eq!(t.index_of(&e.inverse()).unwrap(), t.inverse(x));
            assert_eq!(t.multiply(x, t.inverse(x)), 0);
            // the length equals the number of inverted positive roots
            let inverted =
                (0..g.n_positive_roots() as u16).filter(|&r| !g.roots.is_positive(g.roots.apply(e.images(), r))).count();
            assert_eq!(inverted, t.length(x));
        }
        assert_eq!(t.length(t.longest()), 9);
    }

    #[test]
    fn trivial_group() {
        let g = WeylGroup::new("A0".parse().unwrap()).unwrap();
        let t = ElementTable::new(&g, 10).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.word_string(0), "1");
    }

    #[test]
    fn bound_is_enforced() {
        let g = WeylGroup::new("E8".parse().unwrap()).unwrap();
        assert!(matches!(ElementTable::new(&g, 10_000_000), Err(Error::TooLarge { .. })));
    }
}
