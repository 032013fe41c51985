//! Points of the curve x^q y - x y^q = 1 over extensions of F_q.
//!
//! `cargo run --example drinfeld_curve`

use liecomb::flags;

fn main() -> liecomb::Result<()> {
    for q in [2u64, 3, 4, 5] {
        for m in 1..=4 {
            if q.pow(m) > 1 << 12 {
                continue;
            }
            let r = flags::drinfeld_count(q, m, 0)?;
            let torus = match r.torus_orbits {
                Some(orbits) => format!("{orbits} free orbits of mu_{}", q + 1),
                None => "torus not defined over this field".into(),
            };
            println!("q = {q}, m = {m}: {:>6} points, SL2 sample preserves: {}, {torus}", r.count, r.sl2_preserves);
        }
    }
    Ok(())
}
