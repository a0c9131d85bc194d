use crate::abelian::FinGenAbelian;
use crate::fp::{realize_with, CompatiblePair, EnumStats, FiniteGroupRealization, FpPresentation, Letter, Word};

use super::{TensorError, TensorOptions};

/// `G * H` modulo the Peiffer relations `h^-1 g^-1 h g^h` and
/// `g^-1 h^-1 g h^g`. Generators `x_g` for every element of `G` come first,
/// then `y_h` for every element of `H`; each factor contributes its full
/// multiplication table as relators.
pub fn peiffer_presentation(pair: &CompatiblePair) -> FpPresentation {
    let (g, h) = (pair.g(), pair.h());
    let (n, m) = (g.order(), h.order());
    let x = |a: usize| Letter::pos(a);
    let y = |b: usize| Letter::pos(n + b);
    let mut relators = Vec::new();
    for a in 0..n {
        for b in 0..n {
            relators.push(Word::new([x(a), x(b), x(g.mul(a, b)).inv()]));
        }
    }
    for a in 0..m {
        for b in 0..m {
            relators.push(Word::new([y(a), y(b), y(h.mul(a, b)).inv()]));
        }
    }
    for a in 0..n {
        for b in 0..m {
            relators.push(Word::new([y(b).inv(), x(a).inv(), y(b), x(pair.act_h_on_g().apply(a, b))]));
            relators.push(Word::new([x(a).inv(), y(b).inv(), x(a), y(pair.act_g_on_h().apply(b, a))]));
        }
    }
    let names = (0..n).map(|a| format!("x{a}")).chain((0..m).map(|b| format!("y{b}"))).collect();
    FpPresentation::new(names, relators)
}

/// The Peiffer product realized as a finite group.
#[derive(Clone, Debug)]
pub struct PeifferGroup {
    pair: CompatiblePair,
    realization: FiniteGroupRealization,
    g_images: Vec<usize>,
    h_images: Vec<usize>,
    stats: EnumStats,
}

pub fn peiffer_product(pair: CompatiblePair, opts: &TensorOptions) -> Result<PeifferGroup, TensorError> {
    let p = peiffer_presentation(&pair);
    let (realization, table) = realize_with(&p, &opts.enumeration, opts.tietze)?;
    for r in p.relators() {
        if realization.evaluate(r) != realization.identity() {
            return Err(TensorError::Invariant(format!(
                "Peiffer relator {} does not vanish",
                r.display_with(p.generator_names())
            )));
        }
    }
    let n = pair.g().order();
    let (g_images, h_images) = {
        let map = realization.generator_map();
        (map[..n].to_vec(), map[n..].to_vec())
    };
    Ok(PeifferGroup {
        pair,
        realization,
        g_images,
        h_images,
        stats: table.stats().clone(),
    })
}

impl PeifferGroup {
    pub fn pair(&self) -> &CompatiblePair {
        &self.pair
    }

    pub fn realization(&self) -> &FiniteGroupRealization {
        &self.realization
    }

    pub fn order(&self) -> usize {
        self.realization.order()
    }

    /// Image of each element of `G`.
    pub fn g_images(&self) -> &[usize] {
        &self.g_images
    }

    /// Image of each element of `H`.
    pub fn h_images(&self) -> &[usize] {
        &self.h_images
    }

    pub fn stats(&self) -> &EnumStats {
        &self.stats
    }

    /// True when all images of `G` and `H` commute pairwise.
    pub fn is_abelian(&self) -> bool {
        let r = &self.realization;
        let all: Vec<usize> = self.g_images.iter().chain(&self.h_images).copied().collect();
        all.iter().all(|&a| all.iter().all(|&b| r.mul(a, b) == r.mul(b, a)))
    }

    pub fn abelianization(&self) -> FinGenAbelian {
        self.realization.abelianization()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fp::{realize, EnumOptions};

    fn group(text: &str) -> Arc<FiniteGroupRealization> {
        Arc::new(realize(&text.parse().unwrap(), &EnumOptions::default()).unwrap())
    }

    #[test]
    fn trivial_actions_give_direct_product() {
        let s3 = group("< a, b | a^2, b^2, (a b)^3 >");
        let z4 = group("< a | a^4 >");
        let p = peiffer_product(CompatiblePair::trivial(Arc::clone(&s3), Arc::clone(&z4)), &TensorOptions::default())
            .unwrap();
        assert_eq!(p.order(), 24);
        assert_eq!(p.abelianization(), s3.abelianization().direct_product(&z4.abelianization()));
    }

    #[test]
    fn conjugation_on_abelian_group() {
        let z3 = group("< a | a^3 >");
        let p = peiffer_product(CompatiblePair::conjugation(z3), &TensorOptions::default()).unwrap();
        assert_eq!(p.order(), 9);
        assert!(p.is_abelian());
    }
}
