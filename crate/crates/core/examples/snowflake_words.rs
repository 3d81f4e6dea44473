//! Snowflake words against the length law, and short words for points of <a, b>.

use ibig::IBig;
use snowflake_core::snowflake::{distortion_bound, length_law_bound, short_t_word, snowflake_word};
use snowflake_core::{canonicalize, GroupParams, TPoint};

fn main() -> snowflake_core::Result<()> {
    for (p, q) in [(2, 1), (3, 2)] {
        let g = GroupParams::bpq(p, q)?;
        println!("B({p},{q}), alpha = {:.4}", g.alpha());
        println!("{:>10} {:>6} {:>6} {:>10} {:>10}", "N", "|w_N|", "depth", "law", "(4p+6)N^a");
        for k in [1u32, 2, 4, 8, 12, 16, 20] {
            let n = IBig::from(2u8).pow(k as usize);
            let s = snowflake_word(&g, &n);
            let back = canonicalize(&g, &s.word)?.t_eval();
            assert_eq!(back, Some(TPoint::new(n.clone(), 0)));
            println!(
                "{:>10} {:>6} {:>6} {:>10} {:>10.1}",
                n,
                s.length,
                s.depth,
                length_law_bound(&g, s.depth),
                distortion_bound(&g, 2f64.powi(k as i32))
            );
        }
    }
    let g = GroupParams::bpq(2, 1)?;
    println!("w_4 = {}", snowflake_word(&g, &IBig::from(4)).word);
    for (x, y) in [(2, 1), (0, 16), (-7, 300)] {
        let w = short_t_word(&g, &TPoint::new(x, y));
        println!("a^{x} b^{y}: {} letters, {w}", w.len());
    }
    Ok(())
}
