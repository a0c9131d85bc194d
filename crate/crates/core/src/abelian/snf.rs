//! Smith normal form over the integers, with unimodular transforms, plus a
//! sparse row-echelon reduction used to shrink tall relation matrices before
//! the dense pass.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// `d = u * m * v` with `u`, `v` unimodular and `d` diagonal, non-negative,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Diagonal of `d`, including trailing zeros, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal_entries()
    }
}

/// Smallest-magnitude nonzero entry of the lower-right block starting at
/// `(t, t)`, first in row-major order among ties.
fn find_pivot(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.as_ref().map_or(true, |(_, _, b)| &a < b) {
                let unit = a.is_one();
                best = Some((i, j, a));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = d.get(t, t).clone();
            let mut residue = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(&pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                residue |= !d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(&pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                residue |= !d.get(t, j).is_zero();
            }
            if residue {
                // A remainder smaller than the pivot survived; re-pivot.
                let (pi, pj) = find_pivot(&d, t).expect("nonzero remainder exists");
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the remaining block.
            let bad_row = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d, u, v }
}

/// Sparse integer row, sorted by column, no zero entries.
type SparseRow = Vec<(usize, BigInt)>;

fn combine(a: &SparseRow, ca: &BigInt, b: &SparseRow, cb: &BigInt) -> SparseRow {
    let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
    if !ca.is_zero() {
        for (j, x) in a {
            *out.entry(*j).or_insert_with(BigInt::zero) += x * ca;
        }
    }
    if !cb.is_zero() {
        for (j, x) in b {
            *out.entry(*j).or_insert_with(BigInt::zero) += x * cb;
        }
    }
    out.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Row-reduces sparse integer rows to an echelon basis of the same row
/// lattice using only unimodular row operations. Returns a dense matrix with
/// at most `cols` rows.
pub(crate) fn echelon_basis<I>(cols: usize, rows: I) -> IntegerMatrix
where
    I: IntoIterator<Item = SparseRow>,
{
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        row.retain(|(_, x)| !x.is_zero());
        row.sort_by_key(|(j, _)| *j);
        while let Some((lead, b)) = row.first().cloned() {
            let Some(p) = pivots.get(&lead) else {
                pivots.insert(lead, row);
                break;
            };
            let a = p[0].1.clone();
            if b.is_multiple_of(&a) {
                let q = -(&b / &a);
                row = combine(&row, &BigInt::one(), p, &q);
            } else {
                let ext = a.extended_gcd(&b);
                let g = ext.gcd;
                let new_pivot = combine(p, &ext.x, &row, &ext.y);
                let new_row = combine(p, &(&b / &g), &row, &(-(&a / &g)));
                pivots.insert(lead, new_pivot);
                row = new_row;
            }
        }
    }
    let mut dense = IntegerMatrix::zeros(pivots.len(), cols);
    for (i, row) in pivots.values().enumerate() {
        for (j, x) in row {
            dense.set(i, *j, x.clone());
        }
    }
    dense
}
