//! Relative positions of flags over a finite field: the Schubert cell sizes
//! q^l(w) and the symplectic case.
//!
//! `cargo run --example relative_position`

use std::collections::BTreeMap;

use liecomb::field::GaloisField;
use liecomb::flags::{self, Flag, SymplecticForm};

fn main() -> liecomb::Result<()> {
    let f = GaloisField::with_order(3)?;
    let standard = Flag::from_basis(&f, &vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])?;
    let mut cells = BTreeMap::new();
    for other in flags::enumerate_flags(3, &f, None)? {
        let w = flags::relative_position(&f, &standard, &other, None)?;
        *cells.entry(w.to_string()).or_insert(0u64) += 1;
    }
    for (w, size) in &cells {
        println!("GL3(F_3) Schubert cell {w}: {size} flags");
    }

    let form = SymplecticForm::new(4)?;
    let sp = flags::enumerate_flags(4, &f, Some(&form))?;
    let mut positions = BTreeMap::new();
    for b in &sp {
        let w = flags::relative_position(&f, &sp[0], b, Some(&form))?;
        *positions.entry(w.to_string()).or_insert(0u64) += 1;
    }
    println!("Sp4(F_3): {} isotropic flags in {} relative positions", sp.len(), positions.len());
    Ok(())
}
