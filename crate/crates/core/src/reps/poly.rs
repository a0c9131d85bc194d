use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient ring of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integer,
    Rational,
}

/// `Z` or `Q` adjoined with named indeterminates, each either polynomial or
/// Laurent (negative exponents allowed).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    laurent: Vec<bool>,
    coefficients: Coefficients,
}

impl Ring {
    pub fn new(vars: Vec<(String, bool)>, coefficients: Coefficients) -> Arc<Self> {
        let (names, laurent): (Vec<String>, Vec<bool>) = vars.into_iter().unzip();
        for (i, n) in names.iter().enumerate() {
            assert!(!names[..i].contains(n), "duplicate variable {n}");
        }
        Arc::new(Self {
            names,
            laurent,
            coefficients,
        })
    }

    /// Coefficient ring with no indeterminates.
    pub fn constants(coefficients: Coefficients) -> Arc<Self> {
        Self::new(Vec::new(), coefficients)
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_laurent(&self, var: usize) -> bool {
        self.laurent[var]
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Whether `c` is invertible in the coefficient ring.
    pub fn is_unit_coefficient(&self, c: &BigRational) -> bool {
        match self.coefficients {
            Coefficients::Integer => c.is_integer() && c.numer().abs().is_one(),
            Coefficients::Rational => !c.is_zero(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.coefficients {
            Coefficients::Integer => "Z",
            Coefficients::Rational => "Q",
        })?;
        if self.names.is_empty() {
            return Ok(());
        }
        f.write_str("[")?;
        for (i, (n, l)) in self.names.iter().zip(&self.laurent).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if *l {
                write!(f, "{n}^(+-1)")?;
            } else {
                f.write_str(n)?;
            }
        }
        f.write_str("]")
    }
}

/// Exponent vector, ordered graded-lexicographically: total degree first,
/// then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| i64::from(e)).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with rational coefficients over a [`Ring`]. Zero coefficients
/// are never stored, so equality is structural.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: BigRational) -> Self {
        Self::monomial(ring, c, vec![0; ring.num_vars()])
    }

    pub fn integer(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, BigRational::from_integer(BigInt::from(c)))
    }

    /// The indeterminate `var`.
    pub fn var(ring: &Arc<Ring>, var: usize) -> Self {
        let mut e = vec![0; ring.num_vars()];
        e[var] = 1;
        Self::monomial(ring, BigRational::one(), e)
    }

    /// `c * prod x_i^{e_i}`. Panics on a negative exponent of a polynomial
    /// variable.
    pub fn monomial(ring: &Arc<Ring>, c: BigRational, exponents: Vec<i32>) -> Self {
        assert_eq!(exponents.len(), ring.num_vars(), "exponent vector length");
        for (i, &e) in exponents.iter().enumerate() {
            assert!(e >= 0 || ring.is_laurent(i), "negative exponent of polynomial variable {}", ring.names[i]);
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exponents), c);
        }
        Self {
            ring: Arc::clone(ring),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value if the polynomial is constant (including zero).
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.0.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Inverse of a single term `c x^e` whose coefficient is a unit and whose
    /// nonzero exponents are all on Laurent variables.
    pub fn unit_inverse(&self) -> Option<MultiPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        if !self.ring.is_unit_coefficient(c) {
            return None;
        }
        if m.0.iter().enumerate().any(|(i, &e)| e != 0 && !self.ring.is_laurent(i)) {
            return None;
        }
        let inv: Vec<i32> = m.0.iter().map(|e| -e).collect();
        Some(Self::monomial(&self.ring, c.recip(), inv))
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials over different rings"
        );
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.ring), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Self {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(BigRational::is_integer)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        MultiPoly {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = Monomial(m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect());
                let entry = terms.entry(m).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Highest graded-lex term first, e.g. `t1_1*t2_2 - t1_2*t2_1` or
    /// `3*x^2 - 1/2*t^-1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.ring.names[v].clone()
                    } else {
                        format!("{}^{e}", self.ring.names[v])
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
