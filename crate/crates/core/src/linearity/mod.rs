//! Malcev's linearity criteria for abelian groups and the Button matrix
//! families, whose abelianizations fail them.

mod button;
mod descriptor;

use num_bigint::BigUint;
use num_traits::Pow;

pub use button::{button_family, ButtonFamily, ButtonVariant, VerifiedIdentity};
pub use descriptor::{
    bryukhanov_ab, button_g2_ab, button_g3_ab, button_product_ab, is_prime, k2_q_type, Exponent, PrimeComponent,
    Rank, TorsionDescriptor,
};

/// Whether an abelian group with these invariants has a faithful degree-`n`
/// representation over a field of characteristic zero: the torsion
/// subgroup must have rank at most `n`, meaning every primary component is a
/// product of at most `n` cyclic and Prufer groups. The torsion-free rank
/// plays no role.
pub fn malcev_char0(d: &TorsionDescriptor, n: u64) -> bool {
    assert!(n >= 1, "degree must be positive");
    torsion_rank(d).is_some_and(|r| r <= n)
}

/// Data the characteristic-`p` criterion is evaluated on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharpTrace {
    /// Rank of the `p'`-torsion; `None` when infinite.
    pub r: Option<u64>,
    /// Exponent of the `p`-torsion; `None` when unbounded.
    pub e: Option<u32>,
    /// `p^(e-1) + max(1, r)`, or `max(1, r)` when `e = 0`; `None` when
    /// either input is infinite.
    pub lhs: Option<BigUint>,
    /// `n + 1`.
    pub rhs: u64,
    pub linear: bool,
}

/// Whether an abelian group with these invariants has a faithful degree-`n`
/// representation over a field of characteristic `p`: the `p'`-torsion must
/// have finite rank `r`, the `p`-torsion finite exponent `p^e`, and
/// `p^(e-1) + max(1, r) < n + 1`. With trivial `p`-torsion (`e = 0`) the
/// first summand is absent and the condition reads `max(1, r) <= n`.
pub fn malcev_charp(d: &TorsionDescriptor, p: u64, n: u64) -> bool {
    malcev_charp_trace(d, p, n).linear
}

pub fn malcev_charp_trace(d: &TorsionDescriptor, p: u64, n: u64) -> CharpTrace {
    assert!(n >= 1, "degree must be positive");
    let r = d
        .primes()
        .iter()
        .filter(|c| c.prime != p)
        .try_fold(0u64, |acc, c| match c.rank {
            Rank::Finite(k) => Some(acc.max(k)),
            Rank::Infinite => None,
        });
    let e = match d.component(p).map(|c| c.exponent) {
        None => Some(0),
        Some(Exponent::Finite(e)) => Some(e),
        Some(Exponent::Unbounded) => None,
    };
    let lhs = match (r, e) {
        (Some(r), Some(0)) => Some(BigUint::from(r.max(1))),
        (Some(r), Some(e)) => Some(BigUint::from(p).pow(e - 1) + BigUint::from(r.max(1))),
        _ => None,
    };
    let rhs = n + 1;
    let linear = lhs.as_ref().is_some_and(|l| *l < BigUint::from(rhs));
    CharpTrace { r, e, lhs, rhs, linear }
}

/// Largest rank of a primary torsion component; `None` when infinite.
pub fn torsion_rank(d: &TorsionDescriptor) -> Option<u64> {
    d.primes().iter().try_fold(0u64, |acc, c| match c.rank {
        Rank::Finite(k) => Some(acc.max(k)),
        Rank::Infinite => None,
    })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    use super::*;

    fn single(prime: u64, rank: Rank, exponent: Exponent) -> TorsionDescriptor {
        TorsionDescriptor::new(Rank::Finite(0), vec![PrimeComponent { prime, rank, exponent }]).unwrap()
    }

    #[test]
    fn characteristic_zero_examples() {
        for n in 1..6 {
            assert!(malcev_char0(&TorsionDescriptor::torsion_free(Rank::Infinite), n));
            assert!(!malcev_char0(&single(2, Rank::Infinite, Exponent::Unbounded), n));
            assert!(!malcev_char0(&k2_q_type(), n));
        }
        let d = single(5, Rank::Finite(3), Exponent::Finite(1));
        assert!(!malcev_char0(&d, 2));
        assert!(malcev_char0(&d, 3));
    }

    #[test]
    fn characteristic_p_examples() {
        let d = single(3, Rank::Finite(1), Exponent::Finite(1));
        assert!(!malcev_charp(&d, 3, 1));
        assert!(malcev_charp(&d, 3, 2));
        let g2 = button_g2_ab();
        assert!(!malcev_charp(&g2, 2, 1));
        assert!(malcev_charp(&g2, 2, 2));
        for p in [3, 5, 7, 11] {
            for n in 1..10 {
                assert!(!malcev_charp(&g2, p, n));
            }
        }
        for p in [2, 3, 5, 7, 11, 13] {
            for n in 1..10 {
                assert!(!malcev_charp(&k2_q_type(), p, n));
                assert!(!malcev_charp(&button_product_ab(), p, n));
            }
        }
    }

    fn descriptor_strategy() -> impl Strategy<Value = TorsionDescriptor> {
        let comp = (prop::sample::select(vec![2u64, 3, 5, 7]), 1u64..5, 1u32..5);
        prop::collection::vec(comp, 0..4).prop_map(|comps| {
            let mut seen = std::collections::BTreeMap::new();
            for (prime, rank, e) in comps {
                seen.insert(prime, (rank, e));
            }
            let primes = seen
                .into_iter()
                .map(|(prime, (rank, e))| PrimeComponent {
                    prime,
                    rank: Rank::Finite(rank),
                    exponent: Exponent::Finite(e),
                })
                .collect();
            TorsionDescriptor::new(Rank::Finite(1), primes).unwrap()
        })
    }

    /// The inequality evaluated over the rationals, with `p^(e-1)` computed
    /// as `p^e / p`.
    fn inequality_oracle(d: &TorsionDescriptor, p: u64, n: u64) -> bool {
        let r = d.primes().iter().filter(|c| c.prime != p).map(|c| match c.rank {
            Rank::Finite(k) => k,
            Rank::Infinite => unreachable!(),
        });
        let r = r.max().unwrap_or(0).max(1);
        let e = d.component(p).map_or(0, |c| match c.exponent {
            Exponent::Finite(e) => e,
            Exponent::Unbounded => unreachable!(),
        });
        let pe = BigRational::from_integer(BigInt::from(p).pow(e)) / BigRational::from_integer(BigInt::from(p));
        let lhs = if e == 0 { BigRational::from_integer(r.into()) } else { pe + BigRational::from_integer(r.into()) };
        lhs < BigRational::from_integer(BigInt::from(n) + 1)
    }

    proptest! {
        #[test]
        fn charp_matches_the_inequality(d in descriptor_strategy(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), n in 1u64..40) {
            prop_assert_eq!(malcev_charp(&d, p, n), inequality_oracle(&d, p, n));
        }

        #[test]
        fn verdicts_are_monotone_in_degree(d in descriptor_strategy(), p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 1u64..40) {
            prop_assert!(!malcev_char0(&d, n) || malcev_char0(&d, n + 1));
            prop_assert!(!malcev_charp(&d, p, n) || malcev_charp(&d, p, n + 1));
        }

        #[test]
        fn text_format_round_trips(d in descriptor_strategy()) {
            prop_assert_eq!(d.to_string().parse::<TorsionDescriptor>().unwrap(), d);
        }
    }
}
