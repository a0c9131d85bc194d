use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use tensq::abelian::{gamma, smith_normal_form, tensor_z, FinGenAbelian, IntegerMatrix};

fn euclid(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn cyclic_sum(orders: &[u64]) -> FinGenAbelian {
    FinGenAbelian::from_cyclic_orders(0, orders.iter().map(|&o| BigInt::from(o)))
}

fn small_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..10, r * c).prop_map(move |v| {
            IntegerMatrix::new(r, c, v.into_iter().map(BigInt::from).collect())
        })
    })
}

proptest! {
    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in small_matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            prop_assert!(divides);
        }
        if m.is_square() {
            let prod = diag.iter().fold(BigInt::from(1), |acc, d| acc * d);
            prop_assert_eq!(prod, m.determinant().abs());
        }
    }

    #[test]
    fn cyclic_tensor_is_the_gcd(a in 1u64..60, b in 1u64..60) {
        prop_assert_eq!(tensor_z(&cyclic_sum(&[a]), &cyclic_sum(&[b])), cyclic_sum(&[euclid(a, b)]));
    }

    #[test]
    fn tensor_order_is_a_product_of_gcds(xs in prop::collection::vec(1u64..13, 0..4), ys in prop::collection::vec(1u64..13, 0..4)) {
        let expected: u64 = xs.iter().flat_map(|&x| ys.iter().map(move |&y| euclid(x, y))).product();
        let t = tensor_z(&cyclic_sum(&xs), &cyclic_sum(&ys));
        prop_assert_eq!(t.order_u64(), Some(expected));
        prop_assert_eq!(t.clone(), tensor_z(&cyclic_sum(&ys), &cyclic_sum(&xs)));
    }

    #[test]
    fn gamma_order_matches_the_product_rule(xs in prop::collection::vec(1u64..13, 0..4), free in 0usize..3) {
        let gamma_cyclic = |n: u64| if n % 2 == 0 { 2 * n } else { n };
        let mut expected: u64 = xs.iter().map(|&n| gamma_cyclic(n)).product();
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                expected *= euclid(xs[i], xs[j]);
            }
        }
        let a = FinGenAbelian::from_cyclic_orders(free, xs.iter().map(|&o| BigInt::from(o)));
        let g = gamma(&a);
        // Z^r contributes r(r+1)/2 free summands and Z (x) Z_n = Z_n per torsion summand
        prop_assert_eq!(g.free_rank(), free * (free + 1) / 2);
        let torsion: u64 = g.invariant_factors().iter().map(|d| u64::try_from(d).unwrap()).product();
        let from_mixed: u64 = xs.iter().map(|&n| n.pow(free as u32)).product();
        prop_assert_eq!(torsion, expected * from_mixed);
    }

    #[test]
    fn text_round_trip(xs in prop::collection::vec(1u64..40, 0..5), free in 0usize..4) {
        let a = FinGenAbelian::from_cyclic_orders(free, xs.iter().map(|&o| BigInt::from(o)));
        prop_assert_eq!(a.to_string().parse::<FinGenAbelian>().unwrap(), a);
    }
}

#[test]
fn decomposition_does_not_matter() {
    let a: FinGenAbelian = "Z_6 x Z_10".parse().unwrap();
    let b: FinGenAbelian = "Z_2 x Z_3 x Z_2 x Z_5".parse().unwrap();
    assert_eq!(a, b);
    assert_eq!(a.invariant_factors(), &[BigInt::from(2), BigInt::from(30)]);
}
