use num_bigint::BigInt;
use proptest::prelude::*;
use tensq::abelian::FinGenAbelian;
use tensq::fp::{coset_enumerate, realize, realize_with, reduce, EnumOptions, FpPresentation, Strategy as Engine, Word};

fn dihedral(n: u32) -> FpPresentation {
    format!("< r, s | r^{n}, s^2, (s r)^2 >").parse().unwrap()
}

fn word_strategy(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens as i64, any::<bool>()), 0..max_len).prop_map(|v| {
        let signed: Vec<i64> = v.into_iter().map(|(g, neg)| if neg { -(g + 1) } else { g + 1 }).collect();
        Word::from_signed(&signed)
    })
}

#[test]
fn dihedral_indices_agree_across_strategies() {
    for n in 2..=12 {
        let p = dihedral(n);
        let r = p.parse_word("r").unwrap();
        for s in [Engine::Hlt, Engine::Felsch] {
            let opts = EnumOptions::with_strategy(s);
            assert_eq!(coset_enumerate(&p, &[], &opts).unwrap().index(), 2 * n as usize, "D_{n} {s}");
            assert_eq!(coset_enumerate(&p, &[r.clone()], &opts).unwrap().index(), 2, "D_{n} {s}");
        }
    }
}

#[test]
fn budget_is_reported_not_guessed() {
    let p: FpPresentation = "< a, b | a^2, b^3, (a b)^5 >".parse().unwrap();
    let err = coset_enumerate(&p, &[], &EnumOptions::default().budget(20)).unwrap_err();
    assert!(err.to_string().contains("budget"));
}

proptest! {
    #[test]
    fn reduction_is_idempotent_and_inverse_cancels(w in word_strategy(3, 30)) {
        let r = reduce(&w);
        prop_assert_eq!(reduce(&r), r.clone());
        prop_assert!(reduce(&w.mul(&w.inverse())).is_empty());
        prop_assert!(r.letters().windows(2).all(|p| p[0] != p[1].inv()));
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in word_strategy(2, 15), v in word_strategy(2, 15), n in 3u32..8) {
        let g = realize(&dihedral(n), &EnumOptions::default()).unwrap();
        prop_assert_eq!(g.evaluate(&u.mul(&v)), g.mul(g.evaluate(&u), g.evaluate(&v)));
        prop_assert_eq!(g.evaluate(&u.inverse()), g.inv(g.evaluate(&u)));
    }

    #[test]
    fn abelian_presentations_have_the_expected_order(m in 1u32..9, n in 1u32..9) {
        let p: FpPresentation = format!("< a, b | a^{m}, b^{n}, [a, b] >").parse().unwrap();
        let g = realize(&p, &EnumOptions::default()).unwrap();
        prop_assert_eq!(g.order(), (m * n) as usize);
        prop_assert!(g.is_abelian());
        let expected = FinGenAbelian::from_cyclic_orders(0, [BigInt::from(m), BigInt::from(n)]);
        prop_assert_eq!(g.abelianization(), expected.clone());
        prop_assert_eq!(p.abelianization(), expected);
    }

    #[test]
    fn tietze_preserves_the_group(n in 2u32..9, extra in 0usize..3) {
        // redundant generators c_i = r, killed by length-2 relators
        let mut gens = vec!["r".to_string(), "s".to_string()];
        let mut rels = vec![format!("r^{n}"), "s^2".into(), "(s r)^2".into()];
        for i in 0..extra {
            gens.push(format!("c{i}"));
            rels.push(format!("c{i} r^-1"));
        }
        let p: FpPresentation = format!("< {} | {} >", gens.join(", "), rels.join(", ")).parse().unwrap();
        let (plain, _) = realize_with(&p, &EnumOptions::default(), false).unwrap();
        let (simplified, _) = realize_with(&p, &EnumOptions::default(), true).unwrap();
        prop_assert_eq!(plain.order(), 2 * n as usize);
        prop_assert_eq!(simplified.order(), plain.order());
        for i in 0..extra {
            prop_assert_eq!(simplified.generator_map()[2 + i], simplified.generator_map()[0]);
        }
    }
}
