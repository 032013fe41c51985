//! The set M(G) and the nonabelian Fourier matrix of a small group.
//!
//! `cargo run --example fourier_matrix -- S4`

use liecomb::group::{self, MData};

fn main() -> liecomb::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "S3".into());
    let g = group::builtin(&name)?;
    let data = MData::new(&g)?;
    println!("|{name}| = {}, |M| = {}", g.order(), data.pairs().len());
    for (i, p) in data.pairs().iter().enumerate() {
        println!("{i:>3}: x = {:<14} character {} of degree {}", p.representative, p.character, p.degree);
    }
    let m = data.pairing_matrix();
    if m.len() <= 8 {
        for row in &m.entries {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>8}")).collect();
            println!("{}", cells.join(" "));
        }
    }
    println!("unitary: {}, involutive: {}, hermitian: {}", m.is_unitary(), m.is_involutive(), m.is_hermitian());
    Ok(())
}
