//! Left, right and two-sided Kazhdan-Lusztig cells.
//!
//! `cargo run --example cells -- B3`

use liecomb::hecke::{CellKind, HeckeAlgebra};
use liecomb::weyl::{WeylGroup, DEFAULT_ENUMERATION_BOUND};

fn main() -> liecomb::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "A3".into()).parse()?;
    let h = HeckeAlgebra::new(&WeylGroup::new(spec)?, DEFAULT_ENUMERATION_BOUND)?;
    for kind in [CellKind::Left, CellKind::Right, CellKind::TwoSided] {
        let cells = h.cells(kind);
        println!("{kind}: {} cells of sizes {:?}", cells.len(), cells.block_sizes());
    }
    for block in &h.cells(CellKind::TwoSided).blocks {
        let words: Vec<String> = block.iter().map(|w| w.word_string()).collect();
        println!("  {{{}}}", words.join(", "));
    }
    Ok(())
}
