//! Point counts of the pieces X_w of the flag variety, and the chain
//! description of the Coxeter piece.
//!
//! `cargo run --example dl_counts -- 3 2 2`

use liecomb::flags::{self, GroupType};

fn main() -> liecomb::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, q, m) = match args[..] {
        [n, q, m] => (n as usize, q, m as u32),
        _ => (2, 2, 2),
    };
    for ty in [GroupType::Gl, GroupType::Sp] {
        let report = flags::dl_piece_counts(ty, n, q, m)?;
        println!("{ty}: {} flags over GF({q}^{m})", report.total_flags);
        for (w, c) in report.counts.iter().filter(|(_, c)| *c > 0) {
            println!("  X_{w}: {c}");
        }
    }
    let check = flags::coxeter_condition_check(n, q, m)?;
    println!(
        "Coxeter piece {}: {} flags by the chain condition, {} by relative position",
        flags::coxeter_element(n),
        check.chain_condition,
        check.coxeter_position
    );
    Ok(())
}
