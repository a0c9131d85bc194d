use std::sync::Arc;

use proptest::prelude::*;
use tensq::abelian::gamma;
use tensq::fp::{catalog, realize, EnumOptions, FiniteGroupRealization, FpPresentation};
use tensq::tensor::{exterior_square, tensor_square, TensorOptions};

fn euclid(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn realize_text(text: &str) -> Arc<FiniteGroupRealization> {
    let p: FpPresentation = text.parse().unwrap();
    Arc::new(realize(&p, &EnumOptions::default()).unwrap())
}

fn catalog_group(name: &str) -> Arc<FiniteGroupRealization> {
    Arc::new(realize(&catalog::lookup(name).unwrap(), &EnumOptions::default()).unwrap())
}

#[test]
fn cyclic_squares() {
    for n in 1..=12 {
        let g = realize_text(&format!("< a | a^{n} >"));
        let t = tensor_square(Arc::clone(&g), &TensorOptions::default()).unwrap();
        let w = exterior_square(g, &TensorOptions::default()).unwrap();
        assert_eq!(t.order(), n, "Z_{n}");
        assert_eq!(w.order(), 1, "Z_{n}");
    }
}

/// Schur multipliers from the standard tables: `M(S3) = 1`, `M(D4) = Z_2`,
/// `M(Q8) = 1`, `M(A4) = Z_2`, `M(Z2 x Z2) = Z_2`.
#[test]
fn exterior_kernel_is_the_schur_multiplier() {
    for (name, multiplier) in [("S3", 1), ("D4", 2), ("Q8", 1), ("A4", 2), ("Z2xZ2", 2)] {
        let g = catalog_group(name);
        let w = exterior_square(Arc::clone(&g), &TensorOptions::default()).unwrap();
        assert_eq!(w.kappa_kernel().len(), multiplier, "{name}");
        assert_eq!(w.order(), multiplier * g.derived_subgroup().len(), "{name}");
    }
}

#[test]
fn diagonal_subgroup_is_bounded_by_gamma() {
    for name in ["S3", "D4", "Q8", "A4", "Z2xZ2", "Z6"] {
        let g = catalog_group(name);
        let t = tensor_square(Arc::clone(&g), &TensorOptions::default()).unwrap();
        let diag = t.psi_image().unwrap();
        let bound = gamma(&g.abelianization()).order_u64().unwrap() as usize;
        assert_eq!(bound % diag.len(), 0, "{name}: |diag| = {} vs |Gamma| = {bound}", diag.len());
        assert!(t.realization().is_central(&diag), "{name}");
    }
}

#[test]
fn tietze_and_plain_enumeration_agree() {
    for name in ["S3", "Q8", "A4"] {
        let g = catalog_group(name);
        let plain = tensor_square(Arc::clone(&g), &TensorOptions::default()).unwrap();
        let simplified = tensor_square(Arc::clone(&g), &TensorOptions::default().tietze(true)).unwrap();
        assert_eq!(plain.order(), simplified.order(), "{name}");
        assert_eq!(
            plain.realization().abelianization(),
            simplified.realization().abelianization(),
            "{name}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// For abelian `G` the actions are trivial, so `G (x) G` is the abelian
    /// tensor square: `Z_m x Z_n` gives `Z_m (x) Z_m x Z_n (x) Z_n x 2 (Z_m (x) Z_n)`.
    #[test]
    fn abelian_squares_match_the_gcd_formula(m in 1usize..6, n in 1usize..6) {
        let g = realize_text(&format!("< a, b | a^{m}, b^{n}, [a, b] >"));
        let t = tensor_square(Arc::clone(&g), &TensorOptions::default()).unwrap();
        let d = euclid(m, n);
        prop_assert_eq!(t.order(), m * n * d * d);
        prop_assert!(t.realization().is_abelian());
        prop_assert_eq!(t.kappa_image().len(), 1);
    }
}
