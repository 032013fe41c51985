//! Exact arithmetic in cyclotomic fields and finite fields.
//!
//! `cargo run --example cyclotomic_field`

use liecomb::cyclotomic::Cyclotomic;
use liecomb::field::GaloisField;

fn main() -> liecomb::Result<()> {
    let z3 = Cyclotomic::root_of_unity(3, 1);
    let z4 = Cyclotomic::root_of_unity(4, 1);
    let sum = &z3 + &z4;
    println!("z3 + z4 = {sum} in Q(z{})", sum.conductor());
    println!("(z3 + z4)(z3 + z4)* = {}", &sum * &sum.conj());
    let one_plus_z3 = &Cyclotomic::one() + &z3;
    println!("1 + z3 + z3^2 = {}", &one_plus_z3 + &(&z3 * &z3));

    let f = GaloisField::new(3, 2)?;
    println!("GF(9) modulus {:?}, generator {}", f.modulus(), f.format(f.generator()));
    for k in 0..8 {
        let x = f.exp(k);
        println!("  a^{k} = {:<8} Frobenius -> {}", f.format(x), f.format(f.frobenius(x, 1)));
    }
    Ok(())
}
