//! Palindromicity of the Bruhat-interval Poincare polynomials weighted by
//! Kazhdan-Lusztig polynomials.
//!
//! `cargo run --example palindromes -- G2`

use liecomb::hecke::HeckeAlgebra;
use liecomb::weyl::{WeylGroup, DEFAULT_ENUMERATION_BOUND};

fn main() -> liecomb::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "G2".into()).parse()?;
    let h = HeckeAlgebra::new(&WeylGroup::new(spec)?, DEFAULT_ENUMERATION_BOUND)?;
    let mut bad = 0;
    for w in 0..h.table().len() {
        let r = h.palindrome_check_at(w);
        println!("{:>28}  {}", r.w, r.polynomial);
        bad += usize::from(!r.palindromic);
    }
    println!("{bad} elements fail palindromicity");
    Ok(())
}
