//! Dimensions of flag-function spaces with vanishing completion sums, and a
//! Brauer character value.
//!
//! `cargo run --example flag_functions`

use liecomb::field::GaloisField;
use liecomb::flags::{self, BrauerMode};

fn main() -> liecomb::Result<()> {
    for (n, p) in [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)] {
        let modular = flags::brauer_space_dim(n, p, BrauerMode::Modular)?;
        let rational = flags::brauer_space_dim(n, p, BrauerMode::Rational)?;
        let stable = flags::kernel_stability_check(n, p, BrauerMode::Modular, 20, 5, 0)?;
        println!(
            "GL_{n}(F_{p}): {} flags, modular dimension {}, rational dimension {}, stable: {stable}",
            modular.flags, modular.dimension, rational.dimension
        );
    }

    let f = GaloisField::with_order(3)?;
    let rotation = vec![vec![0, 2], vec![1, 0]];
    let value = flags::brauer_character(&f, &rotation)?;
    println!("Brauer character of [[0,-1],[1,0]] over GF(3): {} (eigenvalues in GF({}))", value.value, value.splitting_field);
    Ok(())
}
