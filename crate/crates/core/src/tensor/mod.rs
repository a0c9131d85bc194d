//! Non-abelian tensor products, tensor and exterior squares, the derived map
//! `kappa` with kernel `J2`, the diagonal map `psi`, and Peiffer products, all
//! for finite groups given by multiplication tables.
//!
//! Conventions: actions are on the right, `g^h = h^-1 g h` for conjugation,
//! and `[x, y] = x^-1 y^-1 x y`. The tensor product `G (x) H` is generated by
//! symbols `t[g,h]` subject to
//!
//! ```text
//! t[g g1, h] = t[g^g1, h^g1] t[g1, h]
//! t[g, h h1] = t[g, h1] t[g^h1, h^h1]
//! ```
//!
//! for all `g, g1` in `G` and `h, h1` in `H`. With these conventions the
//! derived map `t[g,h] -> g^-1 g^h` is a homomorphism onto `D_H(G)`.

mod peiffer;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fp::{
    derived_subgroup_dh, realize_with, CompatiblePair, EnumOptions, EnumStats, FiniteGroupRealization, FpPresentation,
    GroupError, Word,
};

pub use peiffer::{peiffer_presentation, peiffer_product, PeifferGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("{0} requires a tensor square")]
    NotSquare(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorKind {
    Product,
    Square,
    Exterior,
}

impl TensorKind {
    pub fn name(self) -> &'static str {
        match self {
            TensorKind::Product => "tensor product",
            TensorKind::Square => "tensor square",
            TensorKind::Exterior => "exterior square",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct TensorOptions {
    pub enumeration: EnumOptions,
    /// Run the Tietze pre-simplification before enumeration. Off by default.
    pub tietze: bool,
}

impl TensorOptions {
    pub fn new(enumeration: EnumOptions) -> Self {
        Self {
            enumeration,
            tietze: false,
        }
    }

    pub fn tietze(mut self, on: bool) -> Self {
        self.tietze = on;
        self
    }
}

/// Index of the generator `t[g,h]`.
#[inline]
fn gen_index(h_order: usize, g: usize, h: usize) -> usize {
    g * h_order + h
}

fn t(h_order: usize, g: usize, h: usize) -> crate::fp::Letter {
    crate::fp::Letter::pos(gen_index(h_order, g, h))
}

/// Presentation of `G (x) H` on `|G| |H|` generators `t_g_h`, with both
/// relation families instantiated over all triples in row-major order:
/// first `(g, g1, h)`, then `(g, h, h1)`. Relators are freely reduced but
/// not deduplicated, and no generator is assumed trivial.
pub fn tensor_presentation(pair: &CompatiblePair) -> FpPresentation {
    let (g, h) = (pair.g(), pair.h());
    let (n, m) = (g.order(), h.order());
    let mut relators = Vec::with_capacity(n * n * m + n * m * m);
    for x in 0..n {
        for x1 in 0..n {
            let xx1 = g.mul(x, x1);
            for y in 0..m {
                relators.push(Word::new([
                    t(m, g.conj(x, x1), pair.act_g_on_h().apply(y, x1)),
                    t(m, x1, y),
                    t(m, xx1, y).inv(),
                ]));
            }
        }
    }
    for x in 0..n {
        for y in 0..m {
            for y1 in 0..m {
                relators.push(Word::new([
                    t(m, x, y1),
                    t(m, pair.act_h_on_g().apply(x, y1), h.conj(y, y1)),
                    t(m, x, h.mul(y, y1)).inv(),
                ]));
            }
        }
    }
    let names = (0..n).flat_map(|x| (0..m).map(move |y| format!("t_{x}_{y}"))).collect();
    FpPresentation::new(names, relators)
}

/// [`tensor_presentation`] of the conjugation pair plus `t[g,g]` for every `g`.
pub fn exterior_presentation(pair: &CompatiblePair) -> FpPresentation {
    let base = tensor_presentation(pair);
    let m = pair.h().order();
    let mut relators = base.relators().to_vec();
    relators.extend((0..pair.g().order()).map(|x| Word::gen(gen_index(m, x, x))));
    FpPresentation::new(base.generator_names().to_vec(), relators)
}

/// A tensor product, square or exterior square realized as a finite group.
#[derive(Clone, Debug)]
pub struct TensorGroup {
    kind: TensorKind,
    pair: CompatiblePair,
    realization: FiniteGroupRealization,
    /// Realization element of `t[g,h]`, indexed by `g |H| + h`.
    gen_elements: Vec<usize>,
    /// `kappa(t[g,h]) = g^-1 g^h`, same indexing.
    kappa_images: Vec<usize>,
    /// `kappa` on every element of the realization.
    kappa: Vec<usize>,
    num_relators: usize,
    stats: EnumStats,
}

pub fn tensor_product(pair: CompatiblePair, opts: &TensorOptions) -> Result<TensorGroup, TensorError> {
    TensorGroup::build(TensorKind::Product, pair, opts)
}

/// `G (x) G` for the conjugation action.
pub fn tensor_square(g: Arc<FiniteGroupRealization>, opts: &TensorOptions) -> Result<TensorGroup, TensorError> {
    TensorGroup::build(TensorKind::Square, CompatiblePair::conjugation(g), opts)
}

/// `G ^ G`: the tensor square modulo all `t[g,g]`.
pub fn exterior_square(g: Arc<FiniteGroupRealization>, opts: &TensorOptions) -> Result<TensorGroup, TensorError> {
    TensorGroup::build(TensorKind::Exterior, CompatiblePair::conjugation(g), opts)
}

pub fn kappa(t: &TensorGroup, x: usize) -> usize {
    t.kappa(x)
}

pub fn j2_subgroup(t: &TensorGroup) -> Result<Vec<usize>, TensorError> {
    t.j2_subgroup()
}

pub fn psi_map(t: &TensorGroup, g: usize) -> Result<usize, TensorError> {
    t.psi(g)
}

pub fn act_on_tensor(t: &TensorGroup, x: usize, y: usize) -> usize {
    t.action_permutation(x)[y]
}

impl TensorGroup {
    fn build(kind: TensorKind, pair: CompatiblePair, opts: &TensorOptions) -> Result<Self, TensorError> {
        let p = match kind {
            TensorKind::Product => tensor_presentation(&pair),
            TensorKind::Square | TensorKind::Exterior => {
                debug_assert!(pair.is_conjugation());
                if kind == TensorKind::Square {
                    tensor_presentation(&pair)
                } else {
                    exterior_presentation(&pair)
                }
            }
        };
        let (realization, table) = realize_with(&p, &opts.enumeration, opts.tietze)?;
        let gen_elements = realization.generator_map().to_vec();
        let m = pair.h().order();
        let kappa_images: Vec<usize> = (0..pair.g().order())
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .map(|(x, y)| pair.g().mul(pair.g().inv(x), pair.act_h_on_g().apply(x, y)))
            .collect();
        let words = realization
            .element_words()
            .ok_or_else(|| TensorError::Invariant("realization lacks element words".into()))?;
        let g = pair.g();
        let eval_kappa = |w: &Word| {
            w.letters().iter().fold(g.identity(), |acc, l| {
                let k = kappa_images[l.gen];
                g.mul(acc, if l.inverse { g.inv(k) } else { k })
            })
        };
        for r in p.relators() {
            if eval_kappa(r) != g.identity() {
                return Err(TensorError::Invariant(format!(
                    "kappa does not kill relator {}",
                    r.display_with(p.generator_names())
                )));
            }
        }
        let kappa: Vec<usize> = words.iter().map(eval_kappa).collect();
        let group = Self {
            kind,
            num_relators: p.relators().len(),
            pair,
            realization,
            gen_elements,
            kappa_images,
            kappa,
            stats: table.stats().clone(),
        };
        group.verify()?;
        Ok(group)
    }

    /// Checks both relation families over all triples and that `kappa` is a
    /// homomorphism (exhaustive up to 10^6 pairs, sampled above).
    fn verify(&self) -> Result<(), TensorError> {
        let (g, h, r) = (self.pair.g(), self.pair.h(), &self.realization);
        let m = h.order();
        let te = |x: usize, y: usize| self.gen_elements[gen_index(m, x, y)];
        for x in g.elements() {
            for x1 in g.elements() {
                for y in h.elements() {
                    let lhs = te(g.mul(x, x1), y);
                    let rhs = r.mul(te(g.conj(x, x1), self.pair.act_g_on_h().apply(y, x1)), te(x1, y));
                    if lhs != rhs {
                        return Err(TensorError::Invariant(format!("first relation fails at ({x}, {x1}, {y})")));
                    }
                }
            }
        }
        for x in g.elements() {
            for y in h.elements() {
                for y1 in h.elements() {
                    let lhs = te(x, h.mul(y, y1));
                    let rhs = r.mul(te(x, y1), te(self.pair.act_h_on_g().apply(x, y1), h.conj(y, y1)));
                    if lhs != rhs {
                        return Err(TensorError::Invariant(format!("second relation fails at ({x}, {y}, {y1})")));
                    }
                }
            }
        }
        if self.kind == TensorKind::Exterior && g.elements().any(|x| te(x, x) != r.identity()) {
            return Err(TensorError::Invariant("diagonal generator survives in exterior square".into()));
        }
        let n = r.order();
        let hom = |a: usize, b: usize| self.kappa[r.mul(a, b)] == g.mul(self.kappa[a], self.kappa[b]);
        if n * n <= 1_000_000 {
            for a in 0..n {
                for b in 0..n {
                    if !hom(a, b) {
                        return Err(TensorError::Invariant(format!("kappa is not multiplicative at ({a}, {b})")));
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            for _ in 0..100_000 {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if !hom(a, b) {
                    return Err(TensorError::Invariant(format!("kappa is not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    pub fn pair(&self) -> &CompatiblePair {
        &self.pair
    }

    pub fn realization(&self) -> &FiniteGroupRealization {
        &self.realization
    }

    pub fn order(&self) -> usize {
        self.realization.order()
    }

    pub fn num_generators(&self) -> usize {
        self.gen_elements.len()
    }

    pub fn num_relators(&self) -> usize {
        self.num_relators
    }

    pub fn stats(&self) -> &EnumStats {
        &self.stats
    }

    /// Realization element of the generator `t[g,h]`.
    pub fn generator(&self, g: usize, h: usize) -> usize {
        self.gen_elements[gen_index(self.pair.h().order(), g, h)]
    }

    pub fn gen_label(&self, g: usize, h: usize) -> String {
        format!("t[{g},{h}]")
    }

    /// `kappa(t[g,h])`, indexed by `g |H| + h`.
    pub fn kappa_images(&self) -> &[usize] {
        &self.kappa_images
    }

    /// `kappa` on every element of the realization.
    pub fn kappa_table(&self) -> &[usize] {
        &self.kappa
    }

    pub fn kappa(&self, x: usize) -> usize {
        self.kappa[x]
    }

    /// Sorted image of `kappa` in `G`.
    pub fn kappa_image(&self) -> Vec<usize> {
        let mut v = self.kappa.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Sorted kernel of `kappa`.
    pub fn kappa_kernel(&self) -> Vec<usize> {
        let e = self.pair.g().identity();
        (0..self.order()).filter(|&x| self.kappa[x] == e).collect()
    }

    /// `J2(G)`, the kernel of `kappa` on the tensor square.
    pub fn j2_subgroup(&self) -> Result<Vec<usize>, TensorError> {
        if self.kind != TensorKind::Square {
            return Err(TensorError::NotSquare("J2"));
        }
        Ok(self.kappa_kernel())
    }

    /// `psi(g) = t[g,g]` in the tensor square.
    pub fn psi(&self, g: usize) -> Result<usize, TensorError> {
        if self.kind != TensorKind::Square {
            return Err(TensorError::NotSquare("psi"));
        }
        Ok(self.generator(g, g))
    }

    /// Subgroup generated by all `t[g,g]`.
    pub fn psi_image(&self) -> Result<Vec<usize>, TensorError> {
        let diag = (0..self.pair.g().order()).map(|g| self.psi(g)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.realization.generate(diag))
    }

    /// The automorphism of the tensor group induced by `x` in `G`:
    /// `t[g,h] -> t[g^x, h^x]`, extended along element words.
    pub fn action_permutation(&self, x: usize) -> Vec<usize> {
        let (g, h, r) = (self.pair.g(), self.pair.h(), &self.realization);
        let m = h.order();
        let images: Vec<usize> = (0..g.order())
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| self.generator(g.conj(a, x), self.pair.act_g_on_h().apply(b, x)))
            .collect();
        let words = r.element_words().expect("tensor realizations carry element words");
        words
            .iter()
            .map(|w| {
                w.letters().iter().fold(r.identity(), |acc, l| {
                    let e = images[l.gen];
                    r.mul(acc, if l.inverse { r.inv(e) } else { e })
                })
            })
            .collect()
    }

    /// `D_H(G)` computed directly from the pair.
    pub fn derivative_subgroup(&self) -> Vec<usize> {
        derived_subgroup_dh(&self.pair)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{tensor_z, FinGenAbelian};
    use crate::fp::{realize, Strategy};

    fn group(text: &str) -> Arc<FiniteGroupRealization> {
        Arc::new(realize(&text.parse().unwrap(), &EnumOptions::default()).unwrap())
    }

    #[test]
    fn presentation_counts() {
        let z2 = group("< a | a^2 >");
        let p = tensor_presentation(&CompatiblePair::trivial(Arc::clone(&z2), Arc::clone(&z2)));
        assert_eq!(p.num_gens(), 4);
        assert_eq!(p.relators().len(), 16);
    }

    #[test]
    fn small_abelian_cases() {
        let z2 = group("< a | a^2 >");
        let opts = TensorOptions::default();
        let t = tensor_product(CompatiblePair::trivial(Arc::clone(&z2), Arc::clone(&z2)), &opts).unwrap();
        assert_eq!(t.order(), 2);
        assert!(t.kappa_table().iter().all(|&k| k == z2.identity()));
        let z3 = group("< a | a^3 >");
        let t3 = tensor_square(Arc::clone(&z3), &opts).unwrap();
        assert_eq!(t3.realization().abelianization(), tensor_z(&FinGenAbelian::cyclic(3), &FinGenAbelian::cyclic(3)));
        assert_eq!(exterior_square(z2, &opts).unwrap().order(), 1);
        let v = group("< a, b | a^2, b^2, [a, b] >");
        assert_eq!(tensor_square(Arc::clone(&v), &opts).unwrap().order(), 16);
        assert_eq!(exterior_square(v, &opts).unwrap().order(), 2);
    }

    #[test]
    fn s3_square_bookkeeping() {
        let s3 = group("< a, b | a^2, b^2, (a b)^3 >");
        let t = tensor_square(Arc::clone(&s3), &TensorOptions::default()).unwrap();
        let j2 = t.j2_subgroup().unwrap();
        assert_eq!(t.kappa_image(), s3.derived_subgroup());
        assert_eq!(j2.len() * 3, t.order());
        assert!(t.realization().is_central(&j2));
        // generator images follow the derived map
        for x in s3.elements() {
            for y in s3.elements() {
                assert_eq!(t.kappa(t.generator(x, y)), s3.commutator(x, y));
            }
        }
    }

    #[test]
    fn strategies_and_tietze_agree_on_d4() {
        let d4 = group("< r, s | r^4, s^2, (s r)^2 >");
        let base = tensor_square(Arc::clone(&d4), &TensorOptions::default()).unwrap();
        let felsch =
            tensor_square(Arc::clone(&d4), &TensorOptions::new(EnumOptions::with_strategy(Strategy::Felsch))).unwrap();
        assert_eq!(base.realization(), felsch.realization());
        let simplified = tensor_square(d4, &TensorOptions::default().tietze(true)).unwrap();
        assert_eq!(simplified.order(), base.order());
        assert_eq!(simplified.kappa_image(), base.kappa_image());
    }

    #[test]
    fn action_on_tensor_square() {
        let q8 = group("< i, j | i^4, i^2 j^-2, j^-1 i j i >");
        let t = tensor_square(Arc::clone(&q8), &TensorOptions::default()).unwrap();
        let r = t.realization();
        for x in q8.elements() {
            let p = t.action_permutation(x);
            let pinv = t.action_permutation(q8.inv(x));
            for y in r.elements() {
                assert_eq!(pinv[p[y]], y);
                for z in r.elements() {
                    assert_eq!(p[r.mul(y, z)], r.mul(p[y], p[z]));
                }
            }
            for g in q8.elements() {
                let d = t.psi(g).unwrap();
                assert_eq!(p[d], d);
            }
        }
        assert_eq!(t.action_permutation(q8.identity()), (0..t.order()).collect::<Vec<_>>());
        let psi = t.psi_image().unwrap();
        assert!(r.is_central(&psi));
        let gamma = q8.abelianization().gamma().order_u64().unwrap() as usize;
        assert_eq!(gamma % psi.len(), 0);
    }
}
