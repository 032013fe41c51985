use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{too_large, Error, Result};

/// Groups up to this order keep a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// Default bound on the size of a permutation-group closure.
pub const DEFAULT_CLOSURE_BOUND: u64 = 100_000;

enum Repr {
    Table(Vec<u32>),
    Perms { perms: Vec<Vec<u32>>, index: HashMap<Vec<u32>, u32> },
    Subset { parent: Arc<FiniteGroup>, elements: Vec<usize>, index: HashMap<usize, u32> },
}

/// A finite group on the element set `{0, ..., N-1}`.
///
/// Element 0 is the identity. Groups built from permutations remember the
/// permutation of every element; subgroups remember their embedding.
pub struct FiniteGroup {
    order: usize,
    repr: Repr,
    inverse: Vec<u32>,
    generators: Vec<usize>,
    labels: Option<Vec<Vec<u32>>>,
    classes: OnceLock<Classes>,
}

/// A conjugacy class, stored by its sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub elements: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

struct Classes {
    list: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).finish()
    }
}

impl FiniteGroup {
    /// The group generated by permutations given as 0-based image lists.
    /// Shorter permutations are extended by fixed points.
    pub fn from_permutations(generators: &[Vec<u32>], bound: u64) -> Result<Arc<Self>> {
        let degree = generators.iter().map(Vec::len).max().unwrap_or(0);
        let mut gens = Vec::new();
        for g in generators {
            check_permutation(g)?;
            let mut g = g.clone();
            g.extend(g.len() as u32..degree as u32);
            gens.push(g);
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut perms = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0u32)]);
        let mut k = 0;
        while k < perms.len() {
            for g in &gens {
                let next: Vec<u32> = perms[k].iter().map(|&x| g[x as usize]).collect();
                if !index.contains_key(&next) {
                    if perms.len() as u64 >= bound {
                        return Err(too_large("permutation group closure", format!("more than {bound}"), bound));
                    }
                    index.insert(next.clone(), perms.len() as u32);
                    perms.push(next);
                }
            }
            k += 1;
        }
        let n = perms.len();
        let gen_idx: Vec<usize> = gens.iter().map(|g| index[g] as usize).filter(|&g| g != 0).collect();
        let inverse: Vec<u32> = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0u32; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                index[&inv]
            })
            .collect();
        let labels = Some(perms.clone());
        let repr = if n <= TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for (a, pa) in perms.iter().enumerate() {
                for (b, pb) in perms.iter().enumerate() {
                    let c: Vec<u32> = pb.iter().map(|&x| pa[x as usize]).collect();
                    table[a * n + b] = index[&c];
                }
            }
            Repr::Table(table)
        } else {
            Repr::Perms { perms, index }
        };
        Ok(Arc::new(FiniteGroup { order: n, repr, inverse, generators: gen_idx, labels, classes: OnceLock::new() }))
    }

    /// A group given by its Cayley table, with `table[a][b] = a * b`.
    /// The group axioms are checked in full, so this is meant for small groups.
    pub fn from_cayley_table(table: &[Vec<u32>]) -> Result<Arc<Self>> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x as usize >= n)) {
            return Err(Error::InvalidInput("Cayley table must be square with entries below its size".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] as usize == a && table[a][e] as usize == a))
            .ok_or_else(|| Error::InvalidInput("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b] as usize][c] != table[a][table[b][c] as usize] {
                        return Err(Error::InvalidInput(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        // relabel so that the identity comes first
        let relabel = |x: usize| -> usize {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut flat = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel(a) * n + relabel(b)] = relabel(table[a][b] as usize) as u32;
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| flat[a * n + b] == 0)
                .ok_or_else(|| Error::InvalidInput(format!("element {a} has no inverse")))?;
            inverse[a] = inv as u32;
        }
        let mut g = FiniteGroup {
            order: n,
            repr: Repr::Table(flat),
            inverse,
            generators: Vec::new(),
            labels: None,
            classes: OnceLock::new(),
        };
        g.generators = g.find_generators();
        Ok(Arc::new(g))
    }

    /// The subgroup on the given parent elements, which must be closed
    /// under multiplication and contain the identity.
    fn subgroup(parent: &Arc<FiniteGroup>, mut elements: Vec<usize>) -> Arc<Self> {
        elements.sort_unstable();
        debug_assert_eq!(elements.first(), Some(&0));
        let n = elements.len();
        let index: HashMap<usize, u32> = elements.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let inverse = elements.iter().map(|&x| index[&parent.inverse(x)]).collect();
        let labels = parent.labels.as_ref().map(|l| elements.iter().map(|&x| l[x].clone()).collect());
        let repr = if n <= TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for (a, &x) in elements.iter().enumerate() {
                for (b, &y) in elements.iter().enumerate() {
                    table[a * n + b] = index[&parent.multiply(x, y)];
                }
            }
            Repr::Table(table)
        } else {
            Repr::Subset { parent: parent.clone(), elements, index }
        };
        let mut g = FiniteGroup { order: n, repr, inverse, generators: Vec::new(), labels, classes: OnceLock::new() };
        g.generators = g.find_generators();
        Arc::new(g)
    }

    /// A generating set picked greedily in index order.
    fn find_generators(&self) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut gens = Vec::new();
        for x in 1..self.order {
            if inside[x] {
                continue;
            }
            gens.push(x);
            // close up: right-multiply everything by all generators
            let mut queue: VecDeque<usize> = members.iter().copied().collect();
            while let Some(a) = queue.pop_front() {
                for &g in &gens {
                    let b = self.multiply(a, g);
                    if !inside[b] {
                        inside[b] = true;
                        members.push(b);
                        queue.push_back(b);
                    }
                }
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Table(t) => t[a * self.order + b] as usize,
            Repr::Perms { perms, index } => {
                let c: Vec<u32> = perms[b].iter().map(|&x| perms[a][x as usize]).collect();
                index[&c] as usize
            }
            Repr::Subset { parent, elements, index } => index[&parent.multiply(elements[a], elements[b])] as usize,
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g^-1 x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.multiply(self.inverse(g), self.multiply(x, g))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.multiply(a, b) == self.multiply(b, a)
    }

    pub fn power(&self, x: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.multiply(acc, x))
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.multiply(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.classes().iter().fold(1u64, |acc, c| num_integer::lcm(acc, self.element_order(c.representative)))
    }

    /// The permutation of an element, for groups built from permutations.
    pub fn permutation(&self, x: usize) -> Option<&[u32]> {
        self.labels.as_ref().map(|l| l[x].as_slice())
    }

    /// Cycle notation with 1-based points, `()` for the identity.
    pub fn label(&self, x: usize) -> String {
        match self.permutation(x) {
            Some(p) => format_cycles(p),
            None => format!("g{x}"),
        }
    }

    fn class_data(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let mut class_of = vec![u32::MAX; self.order];
            let mut list = Vec::new();
            for x in 0..self.order {
                if class_of[x] != u32::MAX {
                    continue;
                }
                let id = list.len() as u32;
                class_of[x] = id;
                let mut elements = vec![x];
                let mut k = 0;
                while k < elements.len() {
                    for &g in &self.generators {
                        let y = self.conjugate(elements[k], g);
                        if class_of[y] == u32::MAX {
                            class_of[y] = id;
                            elements.push(y);
                        }
                    }
                    k += 1;
                }
                elements.sort_unstable();
                list.push(ConjugacyClass { representative: x, elements });
            }
            // classes by size, then by representative
            let mut order: Vec<usize> = (0..list.len()).collect();
            order.sort_by_key(|&c| (list[c].size(), list[c].representative));
            let mut rank = vec![0u32; list.len()];
            for (new, &old) in order.iter().enumerate() {
                rank[old] = new as u32;
            }
            let class_of = class_of.into_iter().map(|c| rank[c as usize]).collect();
            let list = order.into_iter().map(|c| list[c].clone()).collect();
            Classes { list, class_of }
        })
    }

    /// Conjugacy classes ordered by size, then by smallest element.
    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.class_data().list
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_data().class_of[x] as usize
    }

    /// The centralizer of `x` together with its embedding.
    pub fn centralizer(self: &Arc<Self>, x: usize) -> Subgroup {
        let elements: Vec<usize> = (0..self.order).filter(|&g| self.commute(g, x)).collect();
        let group = FiniteGroup::subgroup(self, elements.clone());
        let local = elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        Subgroup { group, embedding: elements, local }
    }
}

/// A subgroup with its own element numbering and the map back to the parent.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub group: Arc<FiniteGroup>,
    /// Parent index of each subgroup element.
    pub embedding: Vec<usize>,
    local: HashMap<usize, usize>,
}

impl Subgroup {
    /// Subgroup index of a parent element, if it lies in the subgroup.
    pub fn local_index(&self, parent_element: usize) -> Option<usize> {
        self.local.get(&parent_element).copied()
    }
}

fn check_permutation(p: &[u32]) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        let x = x as usize;
        if x >= p.len() || std::mem::replace(&mut seen[x], true) {
            return Err(Error::NotPermutation(format!("{p:?}")));
        }
    }
    Ok(())
}

/// Parses cycle notation such as `(1,2)(3,4,5)` into 0-based images of
/// length `degree` (or the largest point mentioned, if larger).
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<u32>> {
    let bad = |why: &str| Error::Parse(format!("'{text}': {why}"));
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = open.find(')').ok_or_else(|| bad("missing ')'"))?;
        let body = open[..close].trim();
        let cycle: Vec<u32> = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|t| match t.trim().parse::<u32>() {
                    Ok(0) | Err(_) => Err(bad("points are positive integers")),
                    Ok(x) => Ok(x - 1),
                })
                .collect::<Result<_>>()?
        };
        cycles.push(cycle);
        rest = open[close + 1..].trim_start();
    }
    let max = cycles.iter().flatten().map(|&x| x as usize + 1).max().unwrap_or(0);
    let mut images: Vec<u32> = (0..degree.max(max) as u32).collect();
    let mut moved = vec![false; images.len()];
    for c in &cycles {
        for (i, &x) in c.iter().enumerate() {
            if std::mem::replace(&mut moved[x as usize], true) {
                return Err(Error::NotPermutation(format!("point {} appears twice in '{text}'", x + 1)));
            }
            images[x as usize] = c[(i + 1) % c.len()];
        }
    }
    Ok(images)
}

/// Cycle notation with 1-based points.
pub fn format_cycles(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Reads a generator file: one permutation per line in cycle notation;
/// blank lines and lines starting with `#` are skipped.
pub fn parse_generator_file(text: &str) -> Result<Vec<Vec<u32>>> {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    let gens: Vec<Vec<u32>> = lines.iter().map(|l| parse_cycles(l, 0)).collect::<Result<_>>()?;
    let degree = gens.iter().map(Vec::len).max().unwrap_or(0);
    Ok(gens
        .into_iter()
        .map(|mut g| {
            g.extend(g.len() as u32..degree as u32);
            g
        })
        .collect())
}
