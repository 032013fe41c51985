use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Serialize, Serializer};

use super::HeckeAlgebra;
use crate::error::{Error, Result};
use crate::weyl::WeylElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for CellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellKind::Left => "left",
            CellKind::Right => "right",
            CellKind::TwoSided => "two-sided",
        })
    }
}

impl FromStr for CellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "left" => Ok(CellKind::Left),
            "right" => Ok(CellKind::Right),
            "two-sided" | "two_sided" | "twosided" | "both" => Ok(CellKind::TwoSided),
            other => Err(Error::InvalidInput(format!("unknown cell kind '{other}'"))),
        }
    }
}

/// A partition of the group into Kazhdan-Lusztig cells.
///
/// Blocks are sorted internally by table index and listed in order of their
/// first element, so the identity always lies in the first block.
#[derive(Debug, Clone)]
pub struct CellPartition {
    pub kind: CellKind,
    pub blocks: Vec<Vec<WeylElement>>,
}

impl CellPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn block_of(&self, w: &WeylElement) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(w))
    }
}

/// Serialized as an array of blocks, each an array of reduced words.
impl Serialize for CellPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.blocks.iter().map(|b| b.iter().map(WeylElement::word_string).collect::<Vec<_>>()))
    }
}

impl HeckeAlgebra {
    /// Indices `x` with nonzero coefficient on `C'_x` in `C'_s C'_w`
    /// (`left`) or `C'_w C'_s` (otherwise).
    pub(crate) fn cell_successors(&self, w: usize, s: usize, left: bool) -> Vec<usize> {
        let t = self.table();
        let sw = if left { t.lmul(w, s) } else { t.rmul(w, s) };
        if t.length(sw) < t.length(w) {
            return vec![w];
        }
        let mut out = vec![sw];
        for (z, _) in self.lower_mu_neighbours(w) {
            let descent = if left { t.is_left_descent(z, s) } else { t.is_right_descent(z, s) };
            if descent {
                out.push(z);
            }
        }
        out
    }

    /// The cell partition obtained as strongly connected components of the
    /// preorder generated by multiplication with `C'_s` on the given side(s).
    pub fn cells(self: &Arc<Self>, kind: CellKind) -> CellPartition {
        let t = self.table();
        let n = t.len();
        let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
        let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
        let sides: &[bool] = match kind {
            CellKind::Left => &[true],
            CellKind::Right => &[false],
            CellKind::TwoSided => &[true, false],
        };
        for w in 0..n {
            for &left in sides {
                for s in 0..t.rank() {
                    for x in self.cell_successors(w, s, left) {
                        if x != w {
                            graph.update_edge(nodes[w], nodes[x], ());
                        }
                    }
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = tarjan_scc(&graph)
            .into_iter()
            .map(|c| {
                let mut b: Vec<usize> = c.into_iter().map(|ix| ix.index()).collect();
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        CellPartition { kind, blocks: blocks.into_iter().map(|b| b.into_iter().map(|x| t.element(x)).collect()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;
    use crate::hecke::algebra::Coeffs;
    use crate::hecke::LaurentPoly;
    use crate::weyl::WeylGroup;

    fn algebra(spec: &str) -> Arc<HeckeAlgebra> {
        HeckeAlgebra::new(&WeylGroup::new(spec.parse().unwrap()).unwrap(), 100_000).unwrap()
    }

    /// Shape of the Robinson-Schensted insertion tableau of a one-line permutation.
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

    fn rsk_classes(h: &HeckeAlgebra) -> BTreeSet<Vec<usize>> {
        let t = h.table();
        let mut by_shape: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for x in 0..t.len() {
            let p = t.element(x).to_big_permutation().unwrap();
            by_shape.entry(rsk_shape(p.images())).or_default().push(x);
        }
        by_shape.into_values().collect()
    }

    fn index_blocks(h: &HeckeAlgebra, p: &CellPartition) -> BTreeSet<Vec<usize>> {
        p.blocks.iter().map(|b| b.iter().map(|w| h.table().index_of(w).unwrap()).collect()).collect()
    }

    #[test]
    fn two_sided_cells_match_rsk_shapes() {
        for (spec, count) in [("A1", 2), ("A2", 3), ("A3", 5), ("A4", 7)] {
            let h = algebra(spec);
            let cells = h.cells(CellKind::TwoSided);
            assert_eq!(cells.len(), count, "{spec}");
            assert_eq!(index_blocks(&h, &cells), rsk_classes(&h), "{spec}");
        }
        let h = algebra("A2");
        let mut sizes = h.cells(CellKind::TwoSided).block_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 4]);
    }

    #[test]
    fn trivial_group_has_one_cell() {
        let h = algebra("A0");
        for kind in [CellKind::Left, CellKind::Right, CellKind::TwoSided] {
            assert_eq!(h.cells(kind).len(), 1);
        }
    }

    #[test]
    fn one_sided_cells_refine_two_sided_cells() {
        for spec in ["A3", "B3", "G2"] {
            let h = algebra(spec);
            let two = h.cells(CellKind::TwoSided);
            for kind in [CellKind::Left, CellKind::Right] {
                let one = h.cells(kind);
                for block in &one.blocks {
                    let owner = two.block_of(&block[0]).unwrap();
                    assert!(block.iter().all(|w| two.block_of(w) == Some(owner)), "{spec} {kind}");
                }
            }
            // right cells are inverses of left cells
            let left = h.cells(CellKind::Left);
            let right = h.cells(CellKind::Right);
            let inverted: BTreeSet<BTreeSet<usize>> = left
                .blocks
                .iter()
                .map(|b| b.iter().map(|w| h.table().index_of(&w.inverse()).unwrap()).collect())
                .collect();
            let right: BTreeSet<BTreeSet<usize>> =
                right.blocks.iter().map(|b| b.iter().map(|w| h.table().index_of(w).unwrap()).collect()).collect();
            assert_eq!(inverted, right, "{spec}");
        }
    }

    #[test]
    fn left_cells_of_s4_number_standard_tableaux() {
        // 1 + 3 + 2 + 3 + 1 standard Young tableaux of size 4
        assert_eq!(algebra("A3").cells(CellKind::Left).len(), 10);
    }

    /// Expands an element of the algebra in the `C'` basis by peeling off the
    /// longest element of the support.
    fn cprime_expansion(h: &Arc<HeckeAlgebra>, mut rest: Coeffs) -> BTreeMap<usize, LaurentPoly> {
        let mut out = BTreeMap::new();
        while let Some((&y, _)) = rest.iter().max_by_key(|(&y, _)| (h.table().length(y), y)) {
            let c = rest[&y].shift(h.table().length(y) as i32);
            for (z, d) in h.cprime_column(y).iter() {
                crate::hecke::algebra::add_into(&mut rest, *z, &-&(d * &c));
            }
            out.insert(y, c);
        }
        out
    }

    #[test]
    fn successor_rule_matches_literal_products() {
        for spec in ["A3", "B3"] {
            let h = algebra(spec);
            let t = h.table();
            for w in 0..t.len() {
                let cw = h.cprime_column(w);
                for s in 0..t.rank() {
                    let cs = h.cprime_column(t.lmul(0, s));
                    for left in [true, false] {
                        let prod = if left { h.multiply_coeffs(&cs, &cw) } else { h.multiply_coeffs(&cw, &cs) };
                        let expansion = cprime_expansion(&h, prod);
                        for c in expansion.values() {
                            assert_eq!(c.bar(), *c, "C' coefficients must be bar-invariant");
                        }
                        let support: BTreeSet<usize> = expansion.keys().copied().collect();
                        let rule: BTreeSet<usize> = h.cell_successors(w, s, left).into_iter().collect();
                        assert_eq!(support, rule, "{spec} w={} s={s} left={left}", t.word_string(w));
                    }
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let h = algebra("A1");
        let json = serde_json::to_string(&h.cells(CellKind::TwoSided)).unwrap();
        assert_eq!(json, r#"[["1"],["s1"]]"#);
    }
}
