//! Conjugacy decisions with verified certificates, checked against brute force.

use snowflake_core::conjugacy::{conjugacy, conjugacy_with, ConjugacyOptions};
use snowflake_core::oracle::brute_conjugator;
use snowflake_core::{parse_word, GroupParams};

fn main() -> snowflake_core::Result<()> {
    let g = GroupParams::bpq_plus(2, 1)?;
    let pairs = [
        ("a a b", "S a s"),
        ("a", "b"),
        ("s a t b", "t b s a"),
        ("h a", "a h"),
        ("s a", "S a s s"),
        ("b h", "h b b"),
    ];
    for (u, v) in pairs {
        let (wu, wv) = (parse_word(u)?, parse_word(v)?);
        let cert = conjugacy(&g, &wu, &wv)?;
        let brute = brute_conjugator(&g, &wu, &wv, 6)?;
        match (&cert.conjugator, cert.reason) {
            (Some(x), _) => {
                let shown = if x.is_empty() { "1".to_string() } else { x.to_string() };
                println!("{u:>10} ~ {v:<10} via {shown} (brute force: {:?})", brute.map(|b| b.len()));
            }
            (None, r) => println!("{u:>10} ≁ {v:<10} {} (brute force: {:?})", r.map_or("", |r| r.tag()), brute.map(|b| b.len())),
        }
    }
    let opts = ConjugacyOptions { eta_search: true };
    let c = conjugacy_with(&g, &parse_word("s a t b")?, &parse_word("A s a t b a")?, opts)?;
    println!("with a bounded edge search: {:?}", c.conjugator.map(|x| x.to_string()));
    Ok(())
}
