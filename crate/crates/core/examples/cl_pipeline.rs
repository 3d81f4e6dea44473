//! Conjugators in the central extension for (b, b z^M), and the family whose
//! conjugators grow like the cube of the input length.

use ibig::IBig;
use snowflake_core::snowflake::short_z_word;
use snowflake_core::zeta::cl_tilde;
use snowflake_core::{parse_word, GroupParams, Word};

fn main() -> snowflake_core::Result<()> {
    let g = GroupParams::tilde(2, 1)?;
    for (u, v) in [("b", "b z^8"), ("b h", "h b"), ("a h", "a h z"), ("b^2", "b^2 z^6")] {
        let cert = cl_tilde(&g, &parse_word(u)?, &parse_word(v)?)?;
        match &cert.conjugator {
            Some(x) => println!("{u:>6} ~ {v:<8} by {x:.40} ({} letters, N = {})", x.len(), cert.n),
            None => println!("{u:>6} ≁ {v:<8} {}", cert.reason.map_or("", |r| r.tag())),
        }
    }
    let b = parse_word("b")?;
    println!("{:>4} {:>8} {:>8}", "n", "|input|", "|conj|");
    for n in [2u64, 4, 8, 16, 32] {
        let m = IBig::from(n).pow(3);
        let v = b.concat(&short_z_word(&g, &m));
        let cert = cl_tilde(&g, &b, &v)?;
        let len = cert.conjugator.as_ref().map_or(0, Word::len);
        println!("{n:>4} {:>8} {len:>8}", b.len() + v.len());
    }
    Ok(())
}
