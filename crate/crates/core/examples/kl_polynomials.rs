//! Kazhdan-Lusztig polynomials of a Weyl group, printing the nontrivial ones.
//!
//! `cargo run --example kl_polynomials -- A3`

use liecomb::hecke::HeckeAlgebra;
use liecomb::weyl::{WeylGroup, DEFAULT_ENUMERATION_BOUND};

fn main() -> liecomb::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "A3".into()).parse()?;
    let h = HeckeAlgebra::new(&WeylGroup::new(spec)?, DEFAULT_ENUMERATION_BOUND)?;
    let table = h.kl_table();
    let t = h.table();
    let mut trivial = 0;
    for ((y, w), p) in table.iter() {
        if p.degree() == Some(0) {
            trivial += 1;
        } else {
            println!("P({}, {}) = {p}", t.word_string(y), t.word_string(w));
        }
    }
    println!("{trivial} further pairs y <= w have P = 1");

    let w = h.group().parse_element("s1 s2 s1")?;
    println!("C'_{{s1 s2 s1}} = {}", h.cprime(&w)?);
    Ok(())
}
