//! Canonical forms in the three groups, and the z-exponent of a null word.
//!
//!     cargo run --example normal_forms -- "S a s" "h b H B"

use snowflake_core::{canonicalize, parse_word, z_exponent, GroupParams};

fn main() -> snowflake_core::Result<()> {
    let mut inputs: Vec<String> = std::env::args().skip(1).collect();
    if inputs.is_empty() {
        inputs = vec!["S a s".into(), "s a b S".into(), "a T a^2 t".into(), "h b H B".into()];
    }
    let groups = [
        GroupParams::bpq(2, 1)?,
        GroupParams::bpq_plus(2, 1)?,
        GroupParams::tilde(2, 1)?,
    ];
    for text in &inputs {
        let w = parse_word(text)?;
        println!("{text}");
        for g in &groups {
            match canonicalize(g, &w) {
                Ok(e) if e.is_identity() => println!("  {:>6}: 1", g.kind.name()),
                Ok(e) => println!("  {:>6}: {e}  ({} stable letters)", g.kind.name(), e.stable_len()),
                Err(err) => println!("  {:>6}: {err}", g.kind.name()),
            }
        }
        if let Ok(n) = z_exponent(&groups[2], &w) {
            println!("  trivial in bpq+, equals z^{n} in tbpq+");
        }
    }
    Ok(())
}
