//! Unipotent cuspidal data, their q = 1 specializations and diagnostics.
//!
//! `cargo run --example cuspidal_tables -- F4`

use liecomb::cuspidal::{self, DIAGNOSTIC_BOUND};
use liecomb::weyl::CoxeterSpec;

fn main() -> liecomb::Result<()> {
    let spec: CoxeterSpec = std::env::args().nth(1).as_deref().unwrap_or("G2").parse()?;
    let data = cuspidal::cuspidal_data(spec)?;
    println!("{spec}: {} data", data.len());
    for (d, s) in data.iter().zip(cuspidal::specialize_q1(&data)) {
        println!("  {:<22} {:<14} at q = 1: {}", d.class.to_string(), d.eigenvalue.to_string(), s.root);
    }
    for check in cuspidal::validate(spec, DIAGNOSTIC_BOUND)?.checks {
        println!("{check}");
    }
    Ok(())
}
