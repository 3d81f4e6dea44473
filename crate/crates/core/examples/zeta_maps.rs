//! Preferred representatives, centralizer data and the ζ-map they induce.

use ibig::IBig;
use snowflake_core::conjugacy::{preferred_rep, Preferred};
use snowflake_core::zeta::{bezout_bounded, central_offset_conjugator, centralizer_data};
use snowflake_core::{parse_word, z_exponent, GroupParams, Word};

fn main() -> snowflake_core::Result<()> {
    let plus = GroupParams::bpq_plus(2, 1)?;
    let tilde = GroupParams::tilde(2, 1)?;
    for text in ["b^3", "b h^2", "S b^2 h a s", "a h a H", "s a"] {
        let pref = preferred_rep(&plus, &parse_word(text)?)?;
        let zd = centralizer_data(&pref)?;
        let rep = match &pref {
            Preferred::Rep(r) => format!("b^{} · {}", r.l, r.omega),
            Preferred::MissesCentralizer => "misses C(b)".to_string(),
        };
        println!("{text:>12}: {rep}, case {}, im ζ = {}ℤ", zd.case.tag(), zd.ideal_gcd);
        for (x, z) in &zd.generators {
            println!("{:>16} ζ({x}) = {z}", "");
        }
        let n = &zd.ideal_gcd * IBig::from(3);
        if let (Some(g), Some(r)) = (central_offset_conjugator(&zd, &n)?, zd.gamma.as_ref()) {
            let gw = r.word();
            let c = Word::product([&g.inverse(), &gw, &g, &gw.inverse()]);
            println!("{:>16} offset {n} by a word of length {}, check {}", "", g.len(), z_exponent(&tilde, &c)?);
        }
    }
    let m: Vec<IBig> = [12, 18, -30].into_iter().map(IBig::from).collect();
    println!("bezout(12, 18, -30; 42) = {:?}", bezout_bounded(&m, &IBig::from(42))?);
    Ok(())
}
