use std::collections::{BTreeMap, HashSet};

use super::{CharPoly, ElementTable, WeylElement, WeylGroup};
use crate::error::{too_large, Result};

/// A conjugacy class of a Weyl group.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    /// Minimal length, ShortLex-least word among those.
    pub representative: WeylElement,
    /// Elements in discovery order.
    pub elements: Vec<WeylElement>,
    lengths: Vec<usize>,
}

impl ConjugacyClass {
    fn from_elements(elements: Vec<WeylElement>, lengths: Vec<usize>) -> Self {
        let min = *lengths.iter().min().expect("class is nonempty");
        let representative = elements
            .iter()
            .zip(&lengths)
            .filter(|(_, &l)| l == min)
            .map(|(e, _)| e)
            .min_by(|a, b| a.reduced_word().cmp(b.reduced_word()))
            .expect("class is nonempty")
            .clone();
        ConjugacyClass { representative, elements, lengths }
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn min_length(&self) -> usize {
        self.representative.length()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn char_poly(&self) -> CharPoly {
        self.representative.char_poly()
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.elements.contains(w)
    }

    /// Cycle type in the permutation model, for classical families.
    pub fn cycle_type(&self) -> Option<Vec<u32>> {
        self.representative.to_big_permutation().ok().map(|p| p.cycle_type())
    }
}

impl WeylGroup {
    /// Number of positive roots made negative by the element with these
    /// simple-root images.
    pub(crate) fn length_of(&self, images: &[u16]) -> usize {
        let rank = self.rank();
        let basis: Vec<&[i32]> = images.iter().map(|&r| self.roots.coords(r)).collect();
        (0..self.roots.n_positive as u16)
            .filter(|&r| {
                let c = self.roots.coords(r);
                // the image is a root, so its first nonzero coordinate fixes the sign
                (0..rank)
                    .map(|i| c.iter().zip(&basis).map(|(&ck, b)| ck * b[i]).sum::<i32>())
                    .find(|&x| x != 0)
                    .is_some_and(|x| x < 0)
            })
            .count()
    }
}

impl WeylElement {
    /// The conjugacy class, by closure under conjugation by generators.
    pub fn conjugacy_class(&self, bound: u64) -> Result<ConjugacyClass> {
        let g = self.group().clone();
        let mut seen: HashSet<Box<[u16]>> = HashSet::from([self.images().into()]);
        let mut queue: Vec<Box<[u16]>> = vec![self.images().into()];
        let mut k = 0;
        while k < queue.len() {
            for i in 0..g.rank() {
                let c = g.rmul(&g.lmul(&queue[k], i), i);
                if !seen.contains(&c) {
                    if queue.len() as u64 >= bound {
                        return Err(too_large(format!("conjugacy class of {self:?}"), format!("> {bound}"), bound));
                    }
                    seen.insert(c.clone());
                    queue.push(c);
                }
            }
            k += 1;
        }
        let lengths: Vec<usize> = queue.iter().map(|im| g.length_of(im)).collect();
        let elements = queue.into_iter().map(|im| WeylElement::from_images(g.clone(), im)).collect();
        Ok(ConjugacyClass::from_elements(elements, lengths))
    }

    pub fn min_length_in_class(&self, bound: u64) -> Result<usize> {
        Ok(self.conjugacy_class(bound)?.min_length())
    }

    /// Ellipticity from the definition: no element of the class lies in a
    /// proper standard parabolic subgroup, i.e. every element of the class
    /// involves every generator.
    pub fn is_elliptic_by_parabolics(&self, bound: u64) -> Result<bool> {
        let rank = self.group().rank();
        Ok(self.conjugacy_class(bound)?.elements.iter().all(|e| e.support().len() == rank))
    }
}

impl ElementTable {
    /// Partition into conjugacy classes, as index lists. Classes are ordered by
    /// the smallest index they contain (so by minimal length first).
    pub fn class_partition(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut k = 0;
            while k < members.len() {
                for i in 0..self.rank() {
                    let c = self.rmul(self.lmul(members[k], i), i);
                    if class_of[c] == usize::MAX {
                        class_of[c] = id;
                        members.push(c);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        self.class_partition()
            .into_iter()
            .map(|idx| {
                let lengths = idx.iter().map(|&x| self.length(x)).collect();
                ConjugacyClass::from_elements(idx.into_iter().map(|x| self.element(x)).collect(), lengths)
            })
            .collect()
    }
}

/// Conjugacy classes of a classical group grouped by the cycle type of their
/// permutation model.
pub fn classes_by_cycle_type(table: &ElementTable) -> Result<BTreeMap<Vec<u32>, Vec<ConjugacyClass>>> {
    let mut out: BTreeMap<Vec<u32>, Vec<ConjugacyClass>> = BTreeMap::new();
    for class in table.conjugacy_classes() {
        let t = class.representative.to_big_permutation()?.cycle_type();
        out.entry(t).or_default().push(class);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> std::sync::Arc<WeylGroup> {
        WeylGroup::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn min_lengths() {
        let g2 = group("G2");
        assert_eq!(g2.identity().min_length_in_class(100).unwrap(), 0);
        let c = g2.coxeter_element();
        assert_eq!(c.char_poly().factor_string(), "Phi_6");
        assert_eq!(c.min_length_in_class(100).unwrap(), 2);
        let f4 = group("F4");
        assert_eq!(f4.coxeter_element().min_length_in_class(10_000).unwrap(), 4);
    }

    #[test]
    fn class_counts() {
        for (s, k) in [("A3", 5), ("B2", 5), ("B3", 10), ("G2", 6), ("D4", 13), ("F4", 25)] {
            let t = ElementTable::new(&group(s), 10_000).unwrap();
            let classes = t.conjugacy_classes();
            assert_eq!(classes.len(), k, "{s}");
            assert_eq!(classes.iter().map(|c| c.size()).sum::<usize>(), t.len());
        }
    }

    #[test]
    fn class_bfs_matches_partition_and_charpoly_is_class_function() {
        let t = ElementTable::new(&group("B3"), 1000).unwrap();
        for class in t.conjugacy_classes() {
            let bfs = class.representative.conjugacy_class(1000).unwrap();
            assert_eq!(bfs.size(), class.size());
            let cp = class.char_poly();
            for e in &class.elements {
                assert_eq!(e.char_poly(), cp);
                assert!(bfs.contains(e));
            }
            for (e, &l) in bfs.elements.iter().zip(bfs.lengths()) {
                assert_eq!(e.length(), l);
            }
        }
    }

    #[test]
    fn class_bound() {
        let e8 = group("E8");
        assert!(e8.coxeter_element().conjugacy_class(1000).is_err());
    }

    #[test]
    fn elliptic_criteria_agree() {
        for s in ["A3", "B3", "G2", "A2", "B2"] {
            let t = ElementTable::new(&group(s), 1000).unwrap();
            for e in t.elements() {
                assert_eq!(e.is_elliptic(), e.is_elliptic_by_parabolics(1000).unwrap(), "{s} {e}");
            }
        }
    }

    #[test]
    fn cycle_types_in_b2() {
        let t = ElementTable::new(&group("B2"), 100).unwrap();
        let by_type = classes_by_cycle_type(&t).unwrap();
        // both 4-cycles are conjugate
        assert_eq!(by_type[&vec![4]].len(), 1);
        // {2,2} covers the class of s1 and the class of -1
        assert_eq!(by_type[&vec![2, 2]].len(), 2);
    }

    /// Unsigned cycle types on `{1, ..., 2n}` that cover more than one class.
    fn ambiguous(name: &str) -> Vec<(Vec<u32>, usize)> {
        let g = WeylGroup::new(name.parse().unwrap()).unwrap();
        let t = ElementTable::new(&g, 1000).unwrap();
        let by_type = classes_by_cycle_type(&t).unwrap();
        by_type.into_iter().filter(|(_, v)| v.len() > 1).map(|(k, v)| (k, v.len())).collect()
    }

    #[test]
    fn cycle_type_ambiguity_in_small_ranks() {
        assert_eq!(ambiguous("B2"), vec![(vec![2, 2], 2)]);
        assert_eq!(ambiguous("B3"), vec![(vec![1, 1, 2, 2], 2), (vec![2, 2, 2], 2)]);
        assert_eq!(
            ambiguous("B4"),
            vec![(vec![1, 1, 1, 1, 2, 2], 2), (vec![1, 1, 2, 2, 2], 2), (vec![2, 2, 2, 2], 3), (vec![2, 2, 4], 2), (vec![4, 4], 2)]
        );
        assert_eq!(ambiguous("D4"), vec![(vec![1, 1, 1, 1, 2, 2], 2), (vec![2, 2, 2, 2], 4), (vec![4, 4], 3)]);
    }
}
