use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{Coefficients, MultiPoly, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    /// Only unitriangular, diagonal unit-monomial and constant matrices
    /// with unit determinant are inverted.
    #[error("matrix is not invertible by the supported methods over {ring}")]
    NotInvertibleInRing { ring: String },
}

/// Square matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    n: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn new(ring: &Arc<Ring>, n: usize, entries: Vec<MultiPoly>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        Self {
            ring: Arc::clone(ring),
            n,
            entries,
        }
    }

    pub fn zero(ring: &Arc<Ring>, n: usize) -> Self {
        Self::new(ring, n, vec![MultiPoly::zero(ring); n * n])
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        Self::scalar(ring, n, MultiPoly::one(ring))
    }

    /// `p` times the identity.
    pub fn scalar(ring: &Arc<Ring>, n: usize, p: MultiPoly) -> Self {
        let mut m = Self::zero(ring, n);
        for i in 0..n {
            m.entries[i * n + i] = p.clone();
        }
        m
    }

    pub fn diagonal(ring: &Arc<Ring>, diag: Vec<MultiPoly>) -> Self {
        let n = diag.len();
        let mut m = Self::zero(ring, n);
        for (i, p) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = p;
        }
        m
    }

    /// Integer matrix given row by row.
    pub fn from_integers(ring: &Arc<Ring>, rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n, "matrix must be square");
                r.iter().map(|&x| MultiPoly::integer(ring, x))
            })
            .collect();
        Self::new(ring, n, entries)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zero(&self.ring, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] = &out.entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Self::new(&self.ring, self.n, entries)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring, self.n)
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_one() && (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_one() && (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// True for `p * identity`.
    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && (1..self.n).all(|i| self.get(i, i) == self.get(0, 0))
    }

    /// Entries as rationals when the matrix is constant.
    pub fn constant_entries(&self) -> Option<Vec<BigRational>> {
        self.entries.iter().map(MultiPoly::constant_value).collect()
    }

    /// Inverse for the matrix classes that occur in the representations:
    /// unitriangular (upper or lower), diagonal with unit-monomial entries,
    /// and constant matrices whose determinant is a unit of the coefficient
    /// ring. The result is checked by multiplying back.
    pub fn inv_special(&self) -> Result<Self, MatrixError> {
        let inv = if self.is_upper_unitriangular() || self.is_lower_unitriangular() {
            // M = I + N with N nilpotent: M^-1 = sum_k (-N)^k
            let id = Self::identity(&self.ring, self.n);
            let neg_n = id.sub(self);
            let mut term = id.clone();
            let mut sum = id;
            for _ in 1..self.n {
                term = term.mul(&neg_n);
                sum = Self::new(
                    &self.ring,
                    self.n,
                    sum.entries.iter().zip(&term.entries).map(|(a, b)| a + b).collect(),
                );
            }
            sum
        } else if self.is_diagonal() {
            let diag = (0..self.n)
                .map(|i| self.get(i, i).unit_inverse().ok_or_else(|| self.not_invertible()))
                .collect::<Result<Vec<_>, _>>()?;
            Self::diagonal(&self.ring, diag)
        } else if let Some(values) = self.constant_entries() {
            let inv = invert_rational(self.n, values).ok_or_else(|| self.not_invertible())?;
            if self.ring.coefficients() == Coefficients::Integer && !inv.iter().all(BigRational::is_integer) {
                return Err(self.not_invertible());
            }
            Self::new(
                &self.ring,
                self.n,
                inv.into_iter().map(|c| MultiPoly::constant(&self.ring, c)).collect(),
            )
        } else {
            return Err(self.not_invertible());
        };
        assert!(self.mul(&inv).is_identity(), "computed inverse does not multiply back to the identity");
        Ok(inv)
    }

    fn not_invertible(&self) -> MatrixError {
        MatrixError::NotInvertibleInRing {
            ring: self.ring.to_string(),
        }
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(a: &Self, b: &Self) -> Result<Self, MatrixError> {
        Ok(a.inv_special()?.mul(&b.inv_special()?).mul(a).mul(b))
    }

    /// Left-normed commutator `[[x1, x2], x3], ...`.
    pub fn left_normed_commutator(xs: &[&Self]) -> Result<Self, MatrixError> {
        let (first, rest) = xs.split_first().expect("at least one matrix");
        rest.iter().try_fold((*first).clone(), |acc, x| Self::commutator(&acc, x))
    }
}

/// Gauss-Jordan over `Q`; `None` when singular.
fn invert_rational(n: usize, mut a: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let mut inv: Vec<BigRational> = (0..n * n)
        .map(|k| if k / n == k % n { BigRational::one() } else { BigRational::zero() })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
        }
        let p = a[col * n + col].clone();
        for j in 0..n {
            a[col * n + j] /= &p;
            inv[col * n + j] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r * n + col].is_zero() {
                let f = a[r * n + col].clone();
                for j in 0..n {
                    let (x, y) = (a[col * n + j].clone(), inv[col * n + j].clone());
                    a[r * n + j] -= &f * x;
                    inv[r * n + j] -= &f * y;
                }
            }
        }
    }
    Some(inv)
}

impl fmt::Display for PolyMatrix {
    /// One bracketed row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str("[")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let r = Ring::new(vec![("t".into(), true)], Coefficients::Integer);
        let t = MultiPoly::var(&r, 0);
        let mut m = PolyMatrix::identity(&r, 2);
        m.set(0, 1, t.clone());
        m.set(1, 0, t.pow(2));
        assert_eq!(PolyMatrix::identity(&r, 2).mul(&m), m);
        assert_eq!(m.mul(&PolyMatrix::identity(&r, 2)), m);
    }

    #[test]
    fn unitriangular_inverse() {
        let r = Ring::new(vec![("t1".into(), false), ("t2".into(), false)], Coefficients::Integer);
        let (t1, t2) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1));
        let mut m = PolyMatrix::identity(&r, 3);
        m.set(0, 1, t1.clone());
        m.set(1, 2, t2.clone());
        let inv = m.inv_special().unwrap();
        assert_eq!(*inv.get(0, 1), -&t1);
        assert_eq!(*inv.get(1, 2), -&t2);
        assert_eq!(*inv.get(0, 2), &t1 * &t2);
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn laurent_scalar_inverse() {
        let r = Ring::new(vec![("t".into(), true)], Coefficients::Integer);
        let s = PolyMatrix::scalar(&r, 2, MultiPoly::var(&r, 0));
        let inv = s.inv_special().unwrap();
        assert!(s.mul(&inv).is_identity());
        assert!(inv.is_scalar());
        // t is not a unit once it is an ordinary polynomial variable
        let p = Ring::new(vec![("t".into(), false)], Coefficients::Integer);
        let sp = PolyMatrix::scalar(&p, 2, MultiPoly::var(&p, 0));
        assert!(matches!(sp.inv_special(), Err(MatrixError::NotInvertibleInRing { .. })));
    }

    #[test]
    fn constant_inverses_respect_the_coefficient_ring() {
        let z = Ring::constants(Coefficients::Integer);
        let m = PolyMatrix::from_integers(&z, &[&[2, 1], &[1, 1]]);
        assert_eq!(m.inv_special().unwrap(), PolyMatrix::from_integers(&z, &[&[1, -1], &[-1, 2]]));
        assert!(PolyMatrix::from_integers(&z, &[&[3, 0], &[0, 1]]).inv_special().is_err());
        let q = Ring::constants(Coefficients::Rational);
        let b = PolyMatrix::from_integers(&q, &[&[3, 0], &[1, 1]]);
        assert!(b.inv_special().unwrap().mul(&b).is_identity());
        assert!(PolyMatrix::from_integers(&q, &[&[1, 2], &[2, 4]]).inv_special().is_err());
    }
}
