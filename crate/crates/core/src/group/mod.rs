//! Finite groups given by permutations or Cayley tables, their exact
//! character tables, the set `M(G)` with its nonabelian Fourier matrix, and
//! triple counting through characters.

mod burnside;
mod character;
mod finite;
mod fourier;

use std::sync::Arc;

pub use burnside::{brute_force_triple_count, burnside_triple_count};
pub use character::{character_table, CharacterTable, ClassInfo, CHARACTER_TABLE_BOUND};
pub use finite::{
    format_cycles, parse_cycles, parse_generator_file, ConjugacyClass, FiniteGroup, Subgroup, DEFAULT_CLOSURE_BOUND,
};
pub use fourier::{m_set, pairing_matrix, FourierMatrix, MData, MPair};

use crate::error::{Error, Result};

/// Generators of a named group as 0-based permutations.
///
/// Accepted names (case-insensitive, optional `builtin:` prefix): `trivial`,
/// `S<n>`, `A<n>`, `Z<n>` (also `Z_<n>`, `C<n>`) and `F2^<n>`.
pub fn builtin_generators(name: &str) -> Result<Vec<Vec<u32>>> {
    let key = name.trim();
    let key = key.strip_prefix("builtin:").unwrap_or(key).to_ascii_uppercase().replace('_', "");
    let unknown = || Error::InvalidInput(format!("unknown group '{name}'"));
    let cycle = |points: &[u32], degree: u32| -> Vec<u32> {
        let mut p: Vec<u32> = (0..degree).collect();
        for (i, &x) in points.iter().enumerate() {
            p[x as usize] = points[(i + 1) % points.len()];
        }
        p
    };
    if key == "TRIVIAL" || key == "1" {
        return Ok(Vec::new());
    }
    if let Some(n) = key.strip_prefix("F2^") {
        let n: u32 = n.parse().map_err(|_| unknown())?;
        return Ok((0..n).map(|i| cycle(&[2 * i, 2 * i + 1], 2 * n)).collect());
    }
    let (family, n) = key.split_at(1);
    let n: u32 = n.parse().map_err(|_| unknown())?;
    let all: Vec<u32> = (0..n).collect();
    Ok(match family {
        "S" if n >= 2 => vec![cycle(&[0, 1], n), cycle(&all, n)],
        "S" => Vec::new(),
        "A" if n >= 3 => (2..n).map(|k| cycle(&[0, 1, k], n)).collect(),
        "A" => Vec::new(),
        "Z" | "C" if n >= 1 => vec![cycle(&all, n)],
        _ => return Err(unknown()),
    })
}

/// A named group, see [`builtin_generators`].
pub fn builtin(name: &str) -> Result<Arc<FiniteGroup>> {
    FiniteGroup::from_permutations(&builtin_generators(name)?, DEFAULT_CLOSURE_BOUND)
}
