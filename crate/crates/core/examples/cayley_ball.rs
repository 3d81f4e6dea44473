//! Breadth-first balls in the Cayley graph: growth, geodesics and a dump file.

use snowflake_core::oracle::{ball, read_dump};
use snowflake_core::{canonicalize, parse_word, GroupParams};

fn main() -> snowflake_core::Result<()> {
    let g = GroupParams::bpq(2, 1)?;
    let b = ball(&g, 5, 2_000_000)?;
    println!("sphere sizes: {:?}", b.sphere_sizes());
    for text in ["a^4", "a^8", "b^2", "a^16"] {
        let e = canonicalize(&g, &parse_word(text)?)?;
        let d = b.geodesic_length(&e)?;
        println!("d(1, {text}) = {d:?}, witness {:?}", b.witness(&e).map(|w| w.to_string()));
    }
    let mut bytes = Vec::new();
    b.write_dump(&mut bytes).expect("in-memory write");
    let dump = read_dump(bytes.as_slice())?;
    println!("dump: {} bytes, {} entries, radius {}", bytes.len(), dump.pairs.len(), dump.radius);
    Ok(())
}
