use std::collections::HashMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::coset::{coset_enumerate, CosetTable, EnumError, EnumOptions};
use super::presentation::FpPresentation;
use super::tietze;
use super::word::{Letter, Word};
use crate::abelian::FinGenAbelian;

/// Largest order for which a full multiplication table is built.
pub const MAX_TABLE_ORDER: usize = 8192;

/// Orders up to this size get an exhaustive associativity check.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 128;
const SAMPLED_TRIPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error("group of order {order} exceeds the multiplication-table limit of {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("invalid group table: {0}")]
    InvalidTable(String),
}

/// A finite group given by its full multiplication table, together with the
/// images of the generators of some presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupRealization {
    order: usize,
    mul: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    generator_map: Vec<usize>,
    element_words: Option<Vec<Word>>,
}

/// Right-multiplication data of a group: `act[col][x]` is `x * letter(col)`
/// where columns follow [`Letter::column`]. Elements are numbered so that
/// element 0 is the identity.
struct Cayley {
    order: usize,
    act: Vec<Vec<u32>>,
}

impl FiniteGroupRealization {
    /// Right regular representation read off a complete coset table over the
    /// trivial subgroup.
    pub fn from_coset_table(table: &CosetTable) -> Result<Self, GroupError> {
        let order = table.index();
        let ncols = 2 * table.num_gens();
        let act = (0..ncols)
            .map(|col| (0..order).map(|c| table.image_col(c, col) as u32).collect())
            .collect();
        Self::from_cayley(Cayley { order, act })
    }

    /// Closure of a set of permutations of `0..degree`, with products read
    /// left to right (`x * y` applies `x` first). Brute force; meant for small
    /// groups and as an independent check on enumeration.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        let degree = gens.first().map_or(0, Vec::len);
        if gens.iter().any(|g| g.len() != degree) {
            return Err(GroupError::InvalidTable("permutations of different degrees".into()));
        }
        let mut letters: Vec<Vec<usize>> = Vec::new();
        for g in gens {
            let mut inv = vec![0; degree];
            for (i, &x) in g.iter().enumerate() {
                inv[x] = i;
            }
            letters.push(g.clone());
            letters.push(inv);
        }
        let compose = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().map(|&i| y[i]).collect() };
        let mut index: HashMap<Vec<usize>, u32> = HashMap::new();
        let mut elements = vec![(0..degree).collect::<Vec<_>>()];
        index.insert(elements[0].clone(), 0);
        let mut act = vec![Vec::new(); letters.len()];
        let mut k = 0;
        while k < elements.len() {
            for (col, l) in letters.iter().enumerate() {
                let p = compose(&elements[k], l);
                let next = elements.len() as u32;
                let id = *index.entry(p.clone()).or_insert_with(|| {
                    elements.push(p);
                    next
                });
                act[col].push(id);
            }
            k += 1;
            if elements.len() > MAX_TABLE_ORDER {
                return Err(GroupError::TooLarge {
                    order: elements.len(),
                    limit: MAX_TABLE_ORDER,
                });
            }
        }
        Self::from_cayley(Cayley {
            order: elements.len(),
            act,
        })
    }

    fn from_cayley(c: Cayley) -> Result<Self, GroupError> {
        let order = c.order;
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::TooLarge {
                order,
                limit: MAX_TABLE_ORDER,
            });
        }
        // Breadth-first spanning tree from the identity in column order.
        let mut parent: Vec<Option<(u32, u32)>> = vec![None; order];
        let mut seen = vec![false; order];
        seen[0] = true;
        let mut bfs = vec![0u32];
        let mut k = 0;
        while k < bfs.len() {
            let x = bfs[k];
            for (col, a) in c.act.iter().enumerate() {
                let y = a[x as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = Some((x, col as u32));
                    bfs.push(y);
                }
            }
            k += 1;
        }
        if bfs.len() != order {
            return Err(GroupError::InvalidTable("generators do not reach every element".into()));
        }
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            mul[a * order] = a as u32;
            for &b in &bfs[1..] {
                let (p, col) = parent[b as usize].expect("non-root has a parent");
                let ap = mul[a * order + p as usize];
                mul[a * order + b as usize] = c.act[col as usize][ap as usize];
            }
        }
        let mut words: Vec<Word> = vec![Word::identity(); order];
        for &b in &bfs[1..] {
            let (p, col) = parent[b as usize].expect("non-root has a parent");
            let mut w = words[p as usize].clone();
            w.push(Letter::from_column(col as usize));
            words[b as usize] = w;
        }
        let generator_map = (0..c.act.len() / 2).map(|g| c.act[2 * g][0] as usize).collect();
        Self::assemble(order, mul, 0, generator_map, Some(words))
    }

    /// Builds a realization from an explicit multiplication table
    /// (`mul[a * order + b] = a * b`), checking the group axioms.
    pub fn from_table(order: usize, mul: Vec<u32>, generator_map: Vec<usize>) -> Result<Self, GroupError> {
        if mul.len() != order * order || order == 0 {
            return Err(GroupError::InvalidTable("table size does not match order".into()));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(GroupError::InvalidTable("entry out of range".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] as usize == x && mul[x * order + e] as usize == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity".into()))?;
        let g = Self::assemble(order, mul, identity, generator_map, None)?;
        g.check_axioms().map_err(GroupError::InvalidTable)?;
        Ok(g)
    }

    fn assemble(
        order: usize,
        mul: Vec<u32>,
        identity: usize,
        generator_map: Vec<usize>,
        element_words: Option<Vec<Word>>,
    ) -> Result<Self, GroupError> {
        let mut inverse = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] as usize == identity {
                    inverse[a] = b as u32;
                    break;
                }
            }
            if inverse[a] == u32::MAX {
                return Err(GroupError::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        Ok(Self {
            order,
            mul,
            identity,
            inverse,
            generator_map,
            element_words,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `x^y = y^-1 x y`
    #[inline]
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// `[x, y] = x^-1 y^-1 x y`
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.inv(x), self.conj(x, y))
    }

    pub fn pow(&self, x: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(x) } else { x };
        (0..e.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != self.identity {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    /// Images of the presentation generators.
    pub fn generator_map(&self) -> &[usize] {
        &self.generator_map
    }

    /// A word in the presentation generators for each element, when known.
    pub fn element_words(&self) -> Option<&[Word]> {
        self.element_words.as_deref()
    }

    pub(crate) fn set_generator_map(&mut self, generator_map: Vec<usize>, element_words: Option<Vec<Word>>) {
        self.generator_map = generator_map;
        self.element_words = element_words;
    }

    /// Evaluates a word in the presentation generators.
    pub fn evaluate(&self, w: &Word) -> usize {
        w.letters().iter().fold(self.identity, |acc, l| {
            let g = self.generator_map[l.gen];
            self.mul(acc, if l.inverse { self.inv(g) } else { g })
        })
    }

    /// Subgroup generated by `gens`, as a sorted list of elements.
    pub fn generate(&self, gens: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut list = vec![self.identity];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
            k += 1;
        }
        list.sort_unstable();
        list
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generator_map;
        if self.generate(gens.iter().copied()).len() == self.order {
            gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
        } else {
            (0..self.order).all(|a| self.commutes_with_all(a))
        }
    }

    pub fn commutes_with_all(&self, x: usize) -> bool {
        (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&x| self.commutes_with_all(x)).collect()
    }

    /// True when every listed element is central.
    pub fn is_central(&self, elems: &[usize]) -> bool {
        elems.iter().all(|&x| self.commutes_with_all(x))
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.order];
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.commutator(a, b);
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.generate(comms)
    }

    /// Checks identity, inverse and associativity laws. Associativity is
    /// exhaustive up to order 128 and sampled on 10^5 seeded triples above.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.order;
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(format!("identity law fails at {x}"));
            }
            if self.mul(x, self.inv(x)) != self.identity || self.mul(self.inv(x), x) != self.identity {
                return Err(format!("inverse law fails at {x}"));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(format!("associativity fails at ({a}, {b}, {c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
        Ok(())
    }

    /// Presentation on one generator `e<i>` per element with relators
    /// `e_a e_s = e_{as}` for every element `a` and every generator image `s`.
    pub fn regular_presentation(&self) -> FpPresentation {
        let mut gens: Vec<usize> = self.generator_map.clone();
        gens.sort_unstable();
        gens.dedup();
        let mut relators = Vec::new();
        for a in 0..self.order {
            for &s in &gens {
                let w = Word::new([Letter::pos(a), Letter::pos(s), Letter::neg(self.mul(a, s))]);
                relators.push(w);
            }
        }
        relators.push(Word::gen(self.identity));
        FpPresentation::new((0..self.order).map(|i| format!("e{i}")).collect(), relators)
    }

    pub fn abelianization(&self) -> FinGenAbelian {
        let mut gens: Vec<usize> = self.generator_map.clone();
        gens.sort_unstable();
        gens.dedup();
        let one = BigInt::from(1);
        let rows = (0..self.order)
            .flat_map(|a| gens.iter().map(move |&s| (a, s)))
            .map(|(a, s)| {
                vec![(a, one.clone()), (s, one.clone()), (self.mul(a, s), -one.clone())]
            })
            .chain(std::iter::once(vec![(self.identity, one.clone())]));
        FinGenAbelian::from_sparse_relations(self.order, rows)
    }

    /// Direct product, elements numbered `a * |other| + b`. Generators are
    /// those of `self` followed by those of `other`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let (n, m) = (self.order, other.order);
        let mut mul = vec![0u32; n * m * n * m];
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        mul[(a * m + b) * n * m + c * m + d] = (self.mul(a, c) * m + other.mul(b, d)) as u32;
                    }
                }
            }
        }
        let generator_map = self
            .generator_map
            .iter()
            .map(|&g| g * m + other.identity)
            .chain(other.generator_map.iter().map(|&h| self.identity * m + h))
            .collect();
        Self::assemble(n * m, mul, self.identity * m + other.identity, generator_map, None)
            .expect("product of groups is a group")
    }
}

/// Enumerates the cosets of the trivial subgroup and reads off the regular
/// representation.
pub fn realize(p: &FpPresentation, opts: &EnumOptions) -> Result<FiniteGroupRealization, GroupError> {
    let table = coset_enumerate(p, &[], opts)?;
    FiniteGroupRealization::from_coset_table(&table)
}

/// Like [`realize`], optionally running a Tietze pre-simplification first.
/// The returned generator map and element words always refer to the
/// generators of `p`.
pub fn realize_with(
    p: &FpPresentation,
    opts: &EnumOptions,
    simplify: bool,
) -> Result<(FiniteGroupRealization, CosetTable), GroupError> {
    if !simplify {
        let table = coset_enumerate(p, &[], opts)?;
        let g = FiniteGroupRealization::from_coset_table(&table)?;
        return Ok((g, table));
    }
    let s = tietze::simplify(p);
    let table = coset_enumerate(&s.presentation, &[], opts)?;
    let mut g = FiniteGroupRealization::from_coset_table(&table)?;
    let generator_map = s.images.iter().map(|w| g.evaluate(w)).collect();
    let words = g.element_words().map(|ws| {
        let back: Vec<Word> = s.kept.iter().map(|&orig| Word::gen(orig)).collect();
        ws.iter().map(|w| w.substitute(&back)).collect()
    });
    g.set_generator_map(generator_map, words);
    Ok((g, table))
}
