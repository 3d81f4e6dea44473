use ibig::IBig;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use snowflake_core::conjugacy::{class_representative, conjugacy, elliptic_root};
use snowflake_core::harness::fit::{fit_loglog, FitPoint, Window};
use snowflake_core::oracle::{ball, insert_relators, neighbor_letters, random_null_word, random_word};
use snowflake_core::snowflake::{
    distortion_bound, short_t_constant, short_t_word, short_z_constant, short_z_word, snowflake_word,
};
use snowflake_core::words::parse_word;
use snowflake_core::zeta::{bezout_bounded, bezout_bounds_hold, zeta_value};
use snowflake_core::{
    canonicalize, max_root, z_exponent, CanonicalElement, Generator, GroupParams, Letter, TPoint, Word,
};

fn b21() -> GroupParams {
    GroupParams::bpq(2, 1).unwrap()
}

fn plus21() -> GroupParams {
    GroupParams::bpq_plus(2, 1).unwrap()
}

fn tilde21() -> GroupParams {
    GroupParams::tilde(2, 1).unwrap()
}

fn groups() -> Vec<GroupParams> {
    [(2, 1), (3, 2)]
        .into_iter()
        .flat_map(|(p, q)| {
            [
                GroupParams::bpq(p, q).unwrap(),
                GroupParams::bpq_plus(p, q).unwrap(),
                GroupParams::tilde(p, q).unwrap(),
            ]
        })
        .collect()
}

/// Words over the enabled letters of `g`.
fn word_in(g: GroupParams, max_len: usize) -> impl Strategy<Value = Word> {
    let letters = neighbor_letters(&g);
    prop::collection::vec(0..letters.len(), 0..=max_len)
        .prop_map(move |ix| Word::from_letters(ix.into_iter().map(|i| letters[i]).collect()))
}

/// Words over `a, b, θ`, all of which commute with `b`.
fn centralizer_word(max_len: usize) -> impl Strategy<Value = Word> {
    let letters: Vec<Letter> = [Generator::A, Generator::B, Generator::Theta]
        .into_iter()
        .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
        .collect();
    prop::collection::vec(0..letters.len(), 0..=max_len)
        .prop_map(move |ix| Word::from_letters(ix.into_iter().map(|i| letters[i]).collect()))
}

fn any_group() -> impl Strategy<Value = GroupParams> {
    prop::sample::select(groups())
}

fn canon(g: &GroupParams, w: &Word) -> CanonicalElement {
    canonicalize(g, w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn free_reduce_is_idempotent(w in word_in(tilde21(), 30)) {
        let r = w.free_reduce();
        prop_assert_eq!(r.free_reduce(), r);
    }

    #[test]
    fn parse_print_round_trip(w in word_in(tilde21(), 30)) {
        prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn exponent_sum_is_additive(u in word_in(tilde21(), 20), v in word_in(tilde21(), 20)) {
        for g in [Generator::A, Generator::S, Generator::Theta, Generator::Z] {
            prop_assert_eq!(u.concat(&v).exponent_sum(g), u.exponent_sum(g) + v.exponent_sum(g));
            prop_assert_eq!(u.inverse().exponent_sum(g), -u.exponent_sum(g));
        }
    }

    #[test]
    fn max_root_powers_back(w in word_in(GroupParams::bpq_plus(2, 1).unwrap(), 12)
        .prop_map(|w| w.delete(Generator::B).delete(Generator::S).delete(Generator::T).free_reduce())
        .prop_filter("nontrivial", |w| !w.is_empty()))
    {
        let r = max_root(&w).unwrap();
        prop_assert_eq!(r.root.pow(r.multiplicity as i64).free_reduce(), w.clone());
        let sq = max_root(&w.concat(&w)).unwrap();
        prop_assert_eq!(sq.multiplicity, 2 * r.multiplicity);
        prop_assert_eq!(sq.root, r.root);
    }

    #[test]
    fn multiply_matches_concatenation(
        (g, u, v) in any_group().prop_flat_map(|g| (Just(g), word_in(g, 25), word_in(g, 25)))
    ) {
        let (cu, cv) = (canon(&g, &u), canon(&g, &v));
        prop_assert_eq!(cu.multiply(&cv).unwrap(), canon(&g, &u.concat(&v)));
        prop_assert!(cu.multiply(&cu.invert()).unwrap().is_identity());
        prop_assert_eq!(canon(&g, &cu.to_word()), cu);
    }

    #[test]
    fn relator_insertion_is_invisible(
        (g, w) in any_group().prop_flat_map(|g| (Just(g), word_in(g, 20))),
        count in 1usize..=20,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w2 = insert_relators(&g, &w, count, &mut rng);
        prop_assert_eq!(canon(&g, &w2), canon(&g, &w));
    }

    #[test]
    fn killing_theta_is_a_retraction(w in word_in(plus21(), 25)) {
        let direct = canon(&b21(), &w.delete(Generator::Theta));
        let via_normal_form = canon(&b21(), &canon(&plus21(), &w).to_word().delete(Generator::Theta));
        prop_assert_eq!(direct, via_normal_form);
    }

    #[test]
    fn theta_sum_survives_relators(w in word_in(tilde21(), 20), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w2 = insert_relators(&tilde21(), &w, 10, &mut rng);
        prop_assert_eq!(w2.exponent_sum(Generator::Theta), w.exponent_sum(Generator::Theta));
    }

    #[test]
    fn z_exponent_is_additive(s1 in 1usize..=10, s2 in 1usize..=10, seed in any::<u64>()) {
        let g = GroupParams::bpq_plus(3, 2).unwrap();
        let t = g.with_kind(snowflake_core::GroupKind::TildeBpqPlus);
        let u = random_null_word(&g, s1, seed);
        let v = random_null_word(&g, s2, seed.wrapping_add(1));
        let (zu, zv) = (z_exponent(&t, &u).unwrap(), z_exponent(&t, &v).unwrap());
        prop_assert_eq!(z_exponent(&t, &u.concat(&v)).unwrap(), zu + zv);
    }

    #[test]
    fn snowflake_words_are_exact_and_short(n in 1u64..5_000_000, which in 0usize..2) {
        let g = [b21(), GroupParams::bpq(3, 2).unwrap()][which];
        let s = snowflake_word(&g, &IBig::from(n));
        prop_assert_eq!(canon(&g, &s.word).t_eval(), Some(TPoint::new(n, 0)));
        prop_assert!(s.length as f64 <= distortion_bound(&g, n as f64));
        let neg = snowflake_word(&g, &IBig::from(-(n as i64)));
        prop_assert_eq!(neg.word, s.word.inverse());
    }

    #[test]
    fn short_t_words_are_exact_and_short(x in -100_000i64..100_000, y in -100_000i64..100_000, which in 0usize..2) {
        let g = [b21(), GroupParams::bpq(3, 2).unwrap()][which];
        let w = short_t_word(&g, &TPoint::new(x, y));
        prop_assert_eq!(canon(&g, &w).t_eval(), Some(TPoint::new(x, y)));
        let k = short_t_constant(&g);
        let l1 = (x.abs() + y.abs()) as f64;
        prop_assert!(w.len() as f64 <= k * l1.powf(1.0 / g.alpha()) + k);
    }

    #[test]
    fn short_z_words_are_exact_and_short(m in -2_000_000i64..2_000_000, which in 0usize..2) {
        let g = [tilde21(), GroupParams::tilde(3, 2).unwrap()][which];
        let w = short_z_word(&g, &IBig::from(m));
        prop_assert_eq!(z_exponent(&g, &w).unwrap(), IBig::from(m));
        let k = short_z_constant(&g);
        prop_assert!(w.len() as f64 <= k * (m.abs() as f64).powf(1.0 / (g.alpha() + 1.0)) + k);
    }

    #[test]
    fn elliptic_roots_are_conjugation_invariant(
        x in -200i64..200, y in -200i64..200, c in word_in(b21(), 6)
    ) {
        let g = b21();
        let pt = TPoint::new(x, y);
        let root = elliptic_root(&g, &pt).root;
        let conj = CanonicalElement::vertex(g, pt).conjugate_by(&canon(&g, &c)).unwrap();
        let (rep, _) = class_representative(&conj).unwrap();
        prop_assert_eq!(rep, CanonicalElement::vertex(g, root));
    }

    #[test]
    fn positive_verdicts_share_a_representative(
        (g, u, x) in prop::sample::select(vec![b21(), plus21(), GroupParams::bpq(3, 2).unwrap()])
            .prop_flat_map(|g| (Just(g), word_in(g, 10), word_in(g, 6)))
    ) {
        let v = Word::product([&x.inverse(), &u, &x]);
        let cu = conjugacy(&g, &u, &v).unwrap();
        prop_assert!(cu.is_conjugate());
        let cv = conjugacy(&g, &v, &u).unwrap();
        prop_assert_eq!(&cu.canonical_rep, &cv.canonical_rep);
        let y = cu.conjugator.unwrap();
        prop_assert_eq!(canon(&g, &Word::product([&y.inverse(), &u, &y])), canon(&g, &v));
    }

    #[test]
    fn zeta_is_a_homomorphism(l in -4i64..=4, x in centralizer_word(8), y in centralizer_word(8)) {
        let g = tilde21();
        let gamma = Word::power_of(Generator::B, l);
        let zx = zeta_value(&g, &gamma, &x).unwrap();
        let zy = zeta_value(&g, &gamma, &y).unwrap();
        prop_assert_eq!(zeta_value(&g, &gamma, &x.concat(&y)).unwrap(), zx + zy);
        prop_assert_eq!(zeta_value(&g, &gamma, &gamma).unwrap(), IBig::from(0u8));
    }

    #[test]
    fn zeta_is_antisymmetric_and_conjugation_invariant(
        l in -4i64..=4, h in centralizer_word(8), c in word_in(plus21(), 5)
    ) {
        let g = tilde21();
        let gamma = Word::power_of(Generator::B, l);
        let z = zeta_value(&g, &gamma, &h).unwrap();
        prop_assert_eq!(zeta_value(&g, &h, &gamma).unwrap(), -z.clone());
        let conj = |w: &Word| Word::product([&c.inverse(), w, &c]);
        prop_assert_eq!(zeta_value(&g, &conj(&gamma), &conj(&h)).unwrap(), z);
    }

    #[test]
    fn bezout_outputs_meet_the_bounds(
        m in prop::collection::vec((-500i64..=500).prop_filter("nonzero", |v| *v != 0), 2..=5),
        k in -10_000i64..=10_000,
    ) {
        let m: Vec<IBig> = m.into_iter().map(IBig::from).collect();
        let gcd = m.iter().fold(IBig::from(0u8), |a, x| a.gcd(x));
        let n = IBig::from(k) * gcd;
        let (lambda, mus) = bezout_bounded(&m, &n).unwrap().unwrap();
        prop_assert!(bezout_bounds_hold(&m, &n, &lambda, &mus));
    }

    #[test]
    fn exact_power_laws_fit_exactly(e in 0.2f64..4.0, c in 0.1f64..10.0) {
        let pts: Vec<FitPoint> = (1..=12).map(|k| {
            let x = (1u64 << k) as f64;
            FitPoint::new(x, c * x.powf(e))
        }).collect();
        let f = fit_loglog(&pts, Window::All).unwrap();
        prop_assert!((f.slope - e).abs() < 1e-6);
    }
}

#[test]
fn ball_is_symmetric_and_self_consistent() {
    for g in [b21(), plus21(), tilde21()] {
        let b = ball(&g, 4, 1_000_000).unwrap();
        for (x, d) in b.iter() {
            assert_eq!(b.distance(&x.invert()), Some(d), "{x}");
            let w = b.witness(x).unwrap();
            assert_eq!(w.len() as u32, d);
            assert_eq!(&canon(&g, &w), x);
        }
        for n in 1..64u64 {
            let e = CanonicalElement::vertex(g, TPoint::new(n, 0));
            if let Some(d) = b.distance(&e) {
                assert!(d as usize <= snowflake_word(&g, &IBig::from(n)).length);
            }
        }
    }
}

#[test]
fn brute_conjugators_are_shortest() {
    let g = plus21();
    let b = ball(&g, 3, 1_000_000).unwrap();
    let pairs = [("a", "S a s"), ("b", "h b H"), ("s a t", "a t s"), ("a b", "T a b t")];
    for (u, v) in pairs {
        let (u, v) = (parse_word(u).unwrap(), parse_word(v).unwrap());
        let (cu, cv) = (canon(&g, &u), canon(&g, &v));
        let x = b.brute_conjugator(&cu, &cv).unwrap().unwrap();
        // No element of the ball shorter than x conjugates u to v.
        for (y, d) in b.iter() {
            if (d as usize) < x.len() {
                assert_ne!(cu.conjugate_by(y).unwrap(), cv);
            }
        }
        let alg = conjugacy(&g, &u, &v).unwrap().conjugator.unwrap();
        assert!(x.len() <= alg.len());
    }
}

/// Reports the least-squares line of conjugator length against total input
/// length over fuzzed conjugate pairs with total length at most 40.
#[test]
fn conjugator_lengths_grow_linearly() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for g in [b21(), plus21()] {
        let mut pts = Vec::new();
        while pts.len() < 400 {
            let u = random_word(&g, rng.gen_range(1..=12), &mut rng);
            let x = random_word(&g, rng.gen_range(0..=6), &mut rng);
            let v = Word::product([&x.inverse(), &u, &x]).free_reduce();
            let n = u.len() + v.len();
            if n > 40 {
                continue;
            }
            let c = conjugacy(&g, &u, &v).unwrap().conjugator.unwrap();
            pts.push((n as f64, c.len() as f64));
        }
        let k = pts.len() as f64;
        let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / k, pts.iter().map(|p| p.1).sum::<f64>() / k);
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let a = sxy / sxx;
        let b0 = my - a * mx;
        let excess = pts.iter().map(|p| p.1 - (a * p.0 + b0)).fold(f64::NEG_INFINITY, f64::max);
        println!("{}: |conjugator| ≈ {a:.3}·n + {:.3} (max excess {excess:.2})", g.kind.name(), b0);
        assert!(a.is_finite());
    }
}
