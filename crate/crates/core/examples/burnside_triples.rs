//! Numbers of solutions of abc = 1 with a, b, c in prescribed classes, from the
//! character table and by brute force.
//!
//! `cargo run --example burnside_triples`

use liecomb::group;

fn main() -> liecomb::Result<()> {
    let g = group::builtin("A5")?;
    let classes = g.classes();
    for (i, c) in classes.iter().enumerate() {
        println!("class {i}: {} elements of order {}, e.g. {}", c.size(), g.element_order(c.representative), g.label(c.representative));
    }
    let of_order = |k| (0..classes.len()).filter(|&c| g.element_order(classes[c].representative) == k).collect::<Vec<_>>();
    for &a in &of_order(2) {
        for &b in &of_order(3) {
            for &c in &of_order(5) {
                let fast = group::burnside_triple_count(&g, [a, b, c])?;
                let slow = group::brute_force_triple_count(&g, [a, b, c])?;
                println!("classes ({a}, {b}, {c}): {fast} (brute force {slow})");
            }
        }
    }
    Ok(())
}
