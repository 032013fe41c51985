//! Conjugacy classes of a Weyl group with their characteristic polynomials.
//!
//! `cargo run --example weyl_classes -- F4`

use liecomb::weyl::{CoxeterSpec, ElementTable, WeylGroup, DEFAULT_ENUMERATION_BOUND};

fn main() -> liecomb::Result<()> {
    let spec: CoxeterSpec = std::env::args().nth(1).as_deref().unwrap_or("B3").parse()?;
    let group = WeylGroup::new(spec)?;
    let table = ElementTable::new(&group, DEFAULT_ENUMERATION_BOUND)?;
    println!("W({spec}) has order {}", group.order());
    for class in table.conjugacy_classes() {
        let rep = &class.representative;
        let elliptic = if rep.is_elliptic() { "elliptic" } else { "" };
        println!("{:>24}  size {:>5}  min length {:>2}  {:<20} {elliptic}", rep.word_string(), class.size(), class.min_length(), class.char_poly().factor_string());
    }
    Ok(())
}
