//! Cheap Tietze simplification: eliminate generators that a relator of length
//! one kills or a relator of length two identifies with another generator.

use std::collections::HashSet;

use super::presentation::FpPresentation;
use super::word::{Letter, Word};

/// Result of [`simplify`].
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: FpPresentation,
    /// Image of each original generator as a word in the new generators.
    pub images: Vec<Word>,
    /// Original index of each surviving generator.
    pub kept: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Img {
    /// `x = root^{-1}` when the flag is set.
    Gen(usize, bool),
    One,
}

struct Classes {
    parent: Vec<Img>,
}

impl Classes {
    fn find(&mut self, x: usize) -> Img {
        match self.parent[x] {
            Img::Gen(p, _) if p == x => Img::Gen(x, false),
            Img::One => Img::One,
            Img::Gen(p, s) => {
                let r = match self.find(p) {
                    Img::Gen(r, t) => Img::Gen(r, s ^ t),
                    Img::One => Img::One,
                };
                self.parent[x] = r;
                r
            }
        }
    }

    fn letter(&mut self, l: Letter) -> Img {
        match self.find(l.gen) {
            Img::Gen(r, s) => Img::Gen(r, s ^ l.inverse),
            Img::One => Img::One,
        }
    }

    /// Records `x = 1` for the root of `l`. Returns true if anything changed.
    fn kill(&mut self, l: Letter) -> bool {
        match self.letter(l) {
            Img::Gen(r, _) => {
                self.parent[r] = Img::One;
                true
            }
            Img::One => false,
        }
    }

    /// Records `l1 l2 = 1`.
    fn identify(&mut self, l1: Letter, l2: Letter) -> bool {
        match (self.letter(l1), self.letter(l2)) {
            (Img::One, Img::One) => false,
            (Img::One, Img::Gen(r, _)) | (Img::Gen(r, _), Img::One) => {
                self.parent[r] = Img::One;
                true
            }
            (Img::Gen(r1, s1), Img::Gen(r2, s2)) => {
                if r1 == r2 {
                    // r r^-1 is vacuous; r^2 = 1 stays as a relator
                    return false;
                }
                // r1^{s1} r2^{s2} = 1, so the larger root is the inverse-sign
                // image of the smaller one
                let (keep, drop, sk, sd) = if r1 < r2 { (r1, r2, s1, s2) } else { (r2, r1, s2, s1) };
                self.parent[drop] = Img::Gen(keep, !(sk ^ sd));
                true
            }
        }
    }
}

pub fn simplify(p: &FpPresentation) -> Simplified {
    let n = p.num_gens();
    let mut classes = Classes {
        parent: (0..n).map(|i| Img::Gen(i, false)).collect(),
    };
    let mut relators: Vec<Word> = p.deduplicated().relators().to_vec();
    loop {
        let mut changed = false;
        for r in &relators {
            match r.letters() {
                [l] => changed |= classes.kill(*l),
                [l1, l2] => changed |= classes.identify(*l1, *l2),
                _ => {}
            }
        }
        if !changed {
            break;
        }
        let images = identity_images(&mut classes, n);
        let mut seen = HashSet::new();
        relators = relators
            .iter()
            .map(|r| r.substitute(&images).cyclically_reduced())
            .filter(|r| !r.is_empty() && seen.insert(r.clone()))
            .collect();
    }
    let mut new_index = vec![usize::MAX; n];
    let mut kept = Vec::new();
    for g in 0..n {
        if classes.find(g) == Img::Gen(g, false) {
            new_index[g] = kept.len();
            kept.push(g);
        }
    }
    let images: Vec<Word> = (0..n)
        .map(|g| match classes.find(g) {
            Img::One => Word::identity(),
            Img::Gen(r, s) => Word::new([Letter::new(new_index[r], s)]),
        })
        .collect();
    let renumber: Vec<Word> = (0..n)
        .map(|g| {
            if new_index[g] == usize::MAX {
                Word::identity()
            } else {
                Word::gen(new_index[g])
            }
        })
        .collect();
    let relators = relators.iter().map(|r| r.substitute(&renumber)).collect();
    let names = kept.iter().map(|&g| p.generator_names()[g].clone()).collect();
    Simplified {
        presentation: FpPresentation::new(names, relators),
        images,
        kept,
    }
}

/// Substitution map over the original generator indices.
fn identity_images(classes: &mut Classes, n: usize) -> Vec<Word> {
    (0..n)
        .map(|g| match classes.find(g) {
            Img::One => Word::identity(),
            Img::Gen(r, s) => Word::new([Letter::new(r, s)]),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eliminates_trivial_and_identified_generators() {
        let p: FpPresentation = "< a, b, c, d | c, b a, d^2, a^3, d b >".parse().unwrap();
        let s = simplify(&p);
        // c = 1, b = a^-1, d = b^-1 = a; a^2 and a^3 stay as relators
        assert_eq!(s.kept, vec![0]);
        assert!(s.images[2].is_empty());
        assert_eq!(s.images[1], Word::from_signed(&[-1]));
        assert_eq!(s.images[3], Word::gen(0));
        assert_eq!(s.presentation.relators().len(), 2);
        assert!(s.presentation.abelianization().is_trivial());
    }

    #[test]
    fn keeps_group_and_reports_images() {
        let p: FpPresentation = "< a, b, c | a^2, b^3, c b^-1, (a c)^3 >".parse().unwrap();
        let s = simplify(&p);
        assert_eq!(s.kept, vec![0, 1]);
        assert_eq!(s.images[2], Word::gen(1));
        assert_eq!(s.presentation.abelianization(), p.abelianization());
        // c b^-1 becomes b b^-1 and disappears
        assert_eq!(s.presentation.relators().len(), 3);
    }

    #[test]
    fn square_relators_survive() {
        let p: FpPresentation = "< a, b | a a, a b^-1 >".parse().unwrap();
        let s = simplify(&p);
        assert_eq!(s.presentation.num_gens(), 1);
        assert_eq!(s.images[1], Word::gen(0));
        assert_eq!(s.presentation.relators(), &[Word::from_signed(&[1, 1])]);
    }
}
