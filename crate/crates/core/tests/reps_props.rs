use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use tensq::reps::{
    free_tensor_square_rep, rep_z_m_times_f_k, tensor_square_rep_nilpotent, Coefficients, MultiPoly, PolyMatrix, Ring,
};

fn ring() -> Arc<Ring> {
    Ring::new(vec![("t".into(), true), ("x".into(), false)], Coefficients::Integer)
}

/// Sums of up to four terms `c * t^i * x^j` with `i` in `-2..3`, `j` in `0..3`.
fn poly(r: Arc<Ring>) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-5i64..6, -2i32..3, 0i32..3), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(MultiPoly::zero(&r), |acc, (c, i, j)| {
            &acc + &MultiPoly::monomial(&r, BigRational::from_integer(BigInt::from(c)), vec![i, j])
        })
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(ring()), b in poly(ring()), c in poly(ring())) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(&a.ring().clone()), a.clone());
    }

    #[test]
    fn unitriangular_inverse_multiplies_back(entries in prop::collection::vec(poly(ring()), 6)) {
        let r = ring();
        let mut m = PolyMatrix::identity(&r, 4);
        let mut it = entries.into_iter();
        for i in 0..4 {
            for j in i + 1..4 {
                m.set(i, j, it.next().unwrap());
            }
        }
        let inv = m.inv_special().unwrap();
        prop_assert!(inv.mul(&m).is_identity());
        prop_assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn laurent_monomials_are_units(c in prop::sample::select(vec![-1i64, 1]), i in -4i32..5) {
        let r = ring();
        let u = MultiPoly::monomial(&r, BigRational::from_integer(BigInt::from(c)), vec![i, 0]);
        let inv = u.unit_inverse().unwrap();
        prop_assert!((&u * &inv).is_one());
    }
}

#[test]
fn polynomial_variables_are_not_units() {
    let r = ring();
    assert!(MultiPoly::var(&r, 1).unit_inverse().is_none());
    assert!(MultiPoly::integer(&r, 2).unit_inverse().is_none());
}

#[test]
fn scalar_blocks_are_central_in_every_combined_package() {
    let packages = [
        rep_z_m_times_f_k(2, 3),
        free_tensor_square_rep(3, 2),
        tensor_square_rep_nilpotent(2, 2).unwrap(),
        tensor_square_rep_nilpotent(3, 1).unwrap(),
    ];
    for pkg in &packages {
        let scalars: Vec<&PolyMatrix> = pkg.matrices().into_iter().filter(|m| m.is_scalar()).collect();
        assert!(!scalars.is_empty(), "{}", pkg.construction);
        for s in &scalars {
            for g in pkg.matrices() {
                assert_eq!(s.mul(g), g.mul(s), "{}", pkg.construction);
            }
        }
        for (m, inv) in pkg.matrices().into_iter().zip(pkg.inverses().unwrap()) {
            assert!(m.mul(&inv).is_identity());
        }
    }
}

#[test]
fn free_tensor_square_counts_laurent_variables() {
    for n in 1..=5 {
        let pkg = free_tensor_square_rep(n, 2);
        assert_eq!(pkg.ring.num_vars(), n * (n + 1) / 2);
        assert!((0..pkg.ring.num_vars()).all(|i| pkg.ring.is_laurent(i)));
    }
}
