use std::sync::Arc;

use crate::reps::{Coefficients, MultiPoly, PolyMatrix, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ButtonVariant {
    /// `A_i = [[1, x^i], [0, 1]]`, `B = diag(3, 1)`, `B A_i B^-1 = A_i^3`.
    Two,
    /// `C_i = [[1, y^i], [0, 1]]`, `D = diag(4, 1)`, `D C_i D^-1 = C_i^4`.
    Three,
}

impl ButtonVariant {
    /// The prime whose elementary abelian groups fill the abelianization.
    pub fn prime(self) -> u64 {
        match self {
            ButtonVariant::Two => 2,
            ButtonVariant::Three => 3,
        }
    }

    /// Power that conjugation by the diagonal generator raises `A_i` to.
    pub fn power(self) -> u32 {
        self.prime() as u32 + 1
    }

    fn names(self) -> (&'static str, &'static str, &'static str) {
        match self {
            ButtonVariant::Two => ("x", "A", "B"),
            ButtonVariant::Three => ("y", "C", "D"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifiedIdentity {
    pub statement: String,
    pub holds: bool,
}

/// First `m` unipotent generators of a Button group together with the
/// diagonal generator, and the relations checked on them.
#[derive(Clone, Debug)]
pub struct ButtonFamily {
    pub variant: ButtonVariant,
    pub ring: Arc<Ring>,
    pub unipotent: Vec<PolyMatrix>,
    pub diagonal: PolyMatrix,
    pub identities: Vec<VerifiedIdentity>,
}

impl ButtonFamily {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|v| v.holds)
    }

    /// Generators named as in the group presentation, e.g. `A1..Am, B`.
    pub fn named_generators(&self) -> Vec<(String, PolyMatrix)> {
        let (_, a, b) = self.variant.names();
        self.unipotent
            .iter()
            .enumerate()
            .map(|(i, m)| (format!("{a}{}", i + 1), m.clone()))
            .chain(std::iter::once((b.to_string(), self.diagonal.clone())))
            .collect()
    }
}

/// Builds the matrices over `Q[x]` (or `Q[y]`) and checks `[A_i, A_j] = 1`
/// for all `i, j <= m` and `B A_i B^-1 = A_i^3` (resp. `^4`) for all `i`.
/// The diagonal generator has a non-integral inverse, so the coefficients
/// are rational.
pub fn button_family(variant: ButtonVariant, m: usize) -> ButtonFamily {
    assert!(m >= 1, "at least one unipotent generator");
    let (var, a, b) = variant.names();
    let ring = Ring::new(vec![(var.to_string(), false)], Coefficients::Rational);
    let v = MultiPoly::var(&ring, 0);
    let unipotent: Vec<PolyMatrix> = (1..=m)
        .map(|i| {
            let mut mat = PolyMatrix::identity(&ring, 2);
            mat.set(0, 1, v.pow(i as u32));
            mat
        })
        .collect();
    let diagonal = PolyMatrix::diagonal(
        &ring,
        vec![MultiPoly::integer(&ring, variant.power() as i64), MultiPoly::one(&ring)],
    );
    let diagonal_inv = diagonal.inv_special().expect("diagonal generator is invertible over Q");

    let mut identities = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let c = PolyMatrix::commutator(&unipotent[i], &unipotent[j]).expect("unitriangular");
            identities.push(VerifiedIdentity {
                statement: format!("[{a}{}, {a}{}] = 1", i + 1, j + 1),
                holds: c.is_identity(),
            });
        }
    }
    for (i, ai) in unipotent.iter().enumerate() {
        let lhs = diagonal.mul(ai).mul(&diagonal_inv);
        let rhs = (1..variant.power()).fold(ai.clone(), |acc, _| acc.mul(ai));
        identities.push(VerifiedIdentity {
            statement: format!("{b} {a}{n} {b}^-1 = {a}{n}^{}", variant.power(), n = i + 1),
            holds: lhs == rhs,
        });
    }
    let family = ButtonFamily {
        variant,
        ring,
        unipotent,
        diagonal,
        identities,
    };
    assert!(family.all_hold(), "Button relation failed to verify");
    family
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    use super::*;

    #[test]
    fn conjugation_scales_the_corner() {
        let f = button_family(ButtonVariant::Two, 1);
        let inv = f.diagonal.inv_special().unwrap();
        assert_eq!(
            inv.get(0, 0).constant_value(),
            Some(BigRational::new(BigInt::from(1), BigInt::from(3)))
        );
        let conj = f.diagonal.mul(&f.unipotent[0]).mul(&inv);
        assert_eq!(conj.get(0, 1).to_string(), "3*x");

        let g = button_family(ButtonVariant::Three, 2);
        let inv = g.diagonal.inv_special().unwrap();
        let conj = g.diagonal.mul(&g.unipotent[1]).mul(&inv);
        assert_eq!(conj.get(0, 1).to_string(), "4*y^2");
    }

    #[test]
    fn report_lists_every_identity() {
        let f = button_family(ButtonVariant::Three, 5);
        assert_eq!(f.identities.len(), 25 + 5);
        assert!(f.all_hold());
        assert!(f.identities.iter().any(|v| v.statement == "D C2 D^-1 = C2^4"));
        assert_eq!(f.named_generators().last().unwrap().0, "D");
    }
}
