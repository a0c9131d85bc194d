use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::snf::{echelon_basis, smith_normal_form};
use super::IntegerMatrix;
use crate::error::ParseError;

/// Finitely generated abelian group in invariant-factor form:
/// `Z^free_rank x Z_{d1} x ... x Z_{dk}` with `2 <= d1 | d2 | ... | dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinGenAbelian {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

/// One cyclic summand of a decomposition, before canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cyclic {
    Infinite,
    Finite(BigInt),
}

impl FinGenAbelian {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            Self::free(1)
        } else {
            Self::from_cyclic_orders(0, [BigInt::from(n)])
        }
    }

    /// Canonicalizes `Z^free_rank x Z_{o1} x Z_{o2} x ...` for arbitrary
    /// orders. Orders equal to 1 vanish; orders equal to 0 count as `Z`.
    pub fn from_cyclic_orders<I>(free_rank: usize, orders: I) -> Self
    where
        I: IntoIterator<Item = BigInt>,
    {
        let mut rank = free_rank;
        let mut finite = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                rank += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        let n = finite.len();
        let d = IntegerMatrix::diagonal(n, n, finite);
        let mut g = Self::from_diagonal(&smith_normal_form(&d).diagonal(), 0);
        g.free_rank += rank;
        g
    }

    /// Reads a Smith diagonal of a relation matrix on `num_gens` generators.
    fn from_diagonal(diag: &[BigInt], num_gens: usize) -> Self {
        let mut free_rank = num_gens.saturating_sub(diag.len());
        let mut invariant_factors = Vec::new();
        for d in diag {
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                invariant_factors.push(d.abs());
            }
        }
        Self {
            free_rank,
            invariant_factors,
        }
    }

    /// `Z^num_gens` modulo the row space of `relations`.
    pub fn from_relations(num_gens: usize, relations: &IntegerMatrix) -> Self {
        assert_eq!(
            relations.cols(),
            num_gens,
            "relation matrix must have one column per generator"
        );
        let sparse = (0..relations.rows()).map(|i| {
            relations
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect::<Vec<_>>()
        });
        Self::from_sparse_relations(num_gens, sparse)
    }

    /// Sparse variant of [`FinGenAbelian::from_relations`]: each relation is a
    /// list of `(generator, coefficient)` pairs. Repeated generators add up.
    pub fn from_sparse_relations<I>(num_gens: usize, relations: I) -> Self
    where
        I: IntoIterator<Item = Vec<(usize, BigInt)>>,
    {
        let rows = relations.into_iter().map(|r| {
            let mut merged: std::collections::BTreeMap<usize, BigInt> = Default::default();
            for (j, x) in r {
                assert!(j < num_gens, "relation references generator {j} of {num_gens}");
                *merged.entry(j).or_insert_with(BigInt::zero) += x;
            }
            merged.into_iter().collect::<Vec<_>>()
        });
        let reduced = echelon_basis(num_gens, rows);
        Self::from_diagonal(&smith_normal_form(&reduced).diagonal(), num_gens)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().and_then(|o| o.to_u64())
    }

    /// Cyclic summands in canonical order: free summands first.
    pub fn summands(&self) -> Vec<Cyclic> {
        std::iter::repeat(Cyclic::Infinite)
            .take(self.free_rank)
            .chain(self.invariant_factors.iter().cloned().map(Cyclic::Finite))
            .collect()
    }

    pub fn direct_product(&self, other: &Self) -> Self {
        Self::from_cyclic_orders(
            self.free_rank + other.free_rank,
            self.invariant_factors
                .iter()
                .chain(&other.invariant_factors)
                .cloned(),
        )
    }

    /// Abelian tensor product `A (x)_Z B`, expanded bilinearly over the cyclic
    /// summands: `Z (x) Z = Z`, `Z (x) Z_d = Z_d`, `Z_d (x) Z_e = Z_gcd(d,e)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut rank = 0;
        let mut orders = Vec::new();
        for a in self.summands() {
            for b in other.summands() {
                match (&a, &b) {
                    (Cyclic::Infinite, Cyclic::Infinite) => rank += 1,
                    (Cyclic::Infinite, Cyclic::Finite(d)) | (Cyclic::Finite(d), Cyclic::Infinite) => {
                        orders.push(d.clone())
                    }
                    (Cyclic::Finite(d), Cyclic::Finite(e)) => orders.push(d.gcd(e)),
                }
            }
        }
        Self::from_cyclic_orders(rank, orders)
    }

    /// Whitehead's quadratic functor.
    ///
    /// Base cases: `Γ(Z) = Z`, `Γ(Z_n) = Z_n` for odd `n` and `Z_{2n}` for even
    /// `n`. Products are folded left to right with
    /// `Γ(A x B) = Γ(A) x Γ(B) x (A (x) B)`; only these three rules are used,
    /// the fold order is erased by the final canonicalization.
    pub fn gamma(&self) -> Self {
        let mut acc = Self::trivial();
        let mut gamma_acc = Self::trivial();
        for s in self.summands() {
            let (part, gamma_part) = match s {
                Cyclic::Infinite => (Self::free(1), Self::free(1)),
                Cyclic::Finite(n) => {
                    let g = if n.is_even() { &n * 2 } else { n.clone() };
                    (
                        Self::from_cyclic_orders(0, [n]),
                        Self::from_cyclic_orders(0, [g]),
                    )
                }
            };
            gamma_acc = gamma_acc
                .direct_product(&gamma_part)
                .direct_product(&acc.tensor(&part));
            acc = acc.direct_product(&part);
        }
        gamma_acc
    }

    /// Structural equality of canonical forms.
    pub fn iso_eq(&self, other: &Self) -> bool {
        self == other
    }
}

/// Smith normal form wrapper returning `(d, u, v)` with `d = u * m * v`.
pub fn smith_normal_form_triple(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let s = smith_normal_form(m);
    (s.d, s.u, s.v)
}

pub fn abelian_from_relations(num_gens: usize, relations: &IntegerMatrix) -> FinGenAbelian {
    FinGenAbelian::from_relations(num_gens, relations)
}

pub fn tensor_z(a: &FinGenAbelian, b: &FinGenAbelian) -> FinGenAbelian {
    a.tensor(b)
}

pub fn gamma(a: &FinGenAbelian) -> FinGenAbelian {
    a.gamma()
}

pub fn iso_eq(a: &FinGenAbelian, b: &FinGenAbelian) -> bool {
    a.iso_eq(b)
}

impl fmt::Display for FinGenAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z_{d}")));
        f.write_str(&parts.join(" x "))
    }
}

impl FromStr for FinGenAbelian {
    type Err = ParseError;

    /// Accepts `Z^r x Z_{d1} x Z_d2 ...` in any order and any decomposition,
    /// ignoring whitespace. `1`, `0` and `trivial` denote the trivial group.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(ParseError::new(0, "empty group expression"));
        }
        let compact: String = chars.iter().map(|(_, c)| c).collect();
        if matches!(compact.as_str(), "1" | "0" | "trivial") {
            return Ok(Self::trivial());
        }
        let mut p = Cursor { chars: &chars, i: 0, end: s.len() };
        let mut rank = 0usize;
        let mut orders = Vec::new();
        loop {
            p.expect('Z')?;
            match p.peek() {
                Some('^') => {
                    p.bump();
                    let n = p.number()?;
                    rank += n
                        .to_usize()
                        .ok_or_else(|| ParseError::new(p.pos(), "free rank too large"))?;
                }
                Some('_') => {
                    p.bump();
                    let n = if p.peek() == Some('{') {
                        p.bump();
                        let n = p.number()?;
                        p.expect('}')?;
                        n
                    } else {
                        p.number()?
                    };
                    if n.is_zero() {
                        return Err(ParseError::new(p.pos(), "cyclic order must be positive"));
                    }
                    orders.push(n);
                }
                _ => rank += 1,
            }
            match p.peek() {
                None => break,
                Some('x') | Some('*') => p.bump(),
                Some(c) => {
                    return Err(ParseError::new(p.pos(), format!("expected 'x' between factors, found {c:?}")))
                }
            }
        }
        Ok(Self::from_cyclic_orders(rank, orders))
    }
}

struct Cursor<'a> {
    chars: &'a [(usize, char)],
    i: usize,
    end: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.end, |&(p, _)| p)
    }

    fn bump(&mut self) {
        self.i += 1;
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.bump();
                Ok(())
            }
            Some(x) => Err(ParseError::new(self.pos(), format!("expected {c:?}, found {x:?}"))),
            None => Err(ParseError::new(self.pos(), format!("expected {c:?}, found end of input"))),
        }
    }

    fn number(&mut self) -> Result<BigInt, ParseError> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.i {
            return Err(ParseError::new(self.pos(), "expected a number"));
        }
        let digits: String = self.chars[start..self.i].iter().map(|(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }
}
