//! Exact rank, kernel and span membership over the rationals.
//!
//! Rank and membership use fraction-free elimination on integer rows: each
//! row is scaled to a primitive integer vector, and a row is reduced against
//! a pivot by `r ← (p_c/g)·r − (r_c/g)·p` followed by division by the row
//! content, so no fractions are ever formed. Rows are stored sparsely since
//! the coboundary matrices have a handful of nonzeros per row. Kernel bases
//! come from a dense rational reduced row echelon form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{CohomError, Result};
use crate::rational::Rational;

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(CohomError::ArityMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix {
            rows: n_rows,
            cols,
            entries,
        })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
            .collect();
        RationalMatrix::from_rows(data, cols).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Rational) {
        for j in 0..self.cols {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }

    /// Rows restricted to the given indices, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            entries.extend_from_slice(self.row(i));
        }
        RationalMatrix {
            rows: indices.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn sparse_rows(&self) -> impl Iterator<Item = Vec<(usize, Rational)>> + '_ {
        (0..self.rows).map(move |i| {
            self.row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect()
        })
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        kernel_basis(self)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip().expect("nonzero pivot");
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A sparse primitive integer row, sorted by column.
type IntRow = Vec<(usize, BigInt)>;

fn to_int_row(row: &[(usize, Rational)]) -> IntRow {
    let denom = Rational::common_denominator(row.iter().map(|(_, v)| v));
    let mut out: IntRow = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (*j, v.numer() * (&denom / v.denom())))
        .collect();
    out.sort_by_key(|(j, _)| *j);
    make_primitive(&mut out);
    out
}

/// Divides by the content and makes the leading entry positive.
fn make_primitive(row: &mut IntRow) {
    let Some((_, lead)) = row.first() else { return };
    let mut g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if lead.is_negative() {
        g = -g;
    }
    if g != BigInt::from(1) {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `(p_c/g)·row − (r_c/g)·pivot` where both rows lead at the same column.
fn eliminate(row: &IntRow, pivot: &IntRow) -> IntRow {
    let rc = &row[0].1;
    let pc = &pivot[0].1;
    let g = rc.gcd(pc);
    let row_scale = pc / &g;
    let pivot_scale = rc / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, &row[i].1 * &row_scale));
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(&pivot[j].1 * &pivot_scale)));
            j += 1;
        } else {
            let v = &row[i].1 * &row_scale - &pivot[j].1 * &pivot_scale;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// An incrementally built row echelon form, used for rank and for deciding
/// whether a vector lies in the span of the rows inserted so far.
#[derive(Default, Clone)]
pub struct Echelon {
    pivots: Vec<Option<IntRow>>,
    rank: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn reduce(&self, mut row: IntRow) -> IntRow {
        while let Some(&(lead, _)) = row.first() {
            match self.pivots.get(lead).and_then(Option::as_ref) {
                Some(pivot) => row = eliminate(&row, pivot),
                None => break,
            }
        }
        row
    }

    /// Adds a sparse row `(column, value)`; returns whether it increased the rank.
    pub fn insert(&mut self, row: &[(usize, Rational)]) -> bool {
        let reduced = self.reduce(to_int_row(row));
        let Some(&(lead, _)) = reduced.first() else {
            return false;
        };
        if self.pivots.len() <= lead {
            self.pivots.resize(lead + 1, None);
        }
        self.pivots[lead] = Some(reduced);
        self.rank += 1;
        true
    }

    /// Whether the sparse row lies in the span of the inserted rows.
    pub fn contains(&self, row: &[(usize, Rational)]) -> bool {
        self.reduce(to_int_row(row)).is_empty()
    }
}

/// Rank of a list of sparse rational rows.
pub fn sparse_rank<I>(rows: I) -> usize
where
    I: IntoIterator<Item = Vec<(usize, Rational)>>,
{
    let mut echelon = Echelon::new();
    for row in rows {
        echelon.insert(&row);
    }
    echelon.rank()
}

pub fn rank(m: &RationalMatrix) -> usize {
    sparse_rank(m.sparse_rows())
}

/// `cols − rank` independent vectors spanning `{v : M v = 0}`, one per free
/// column of the reduced row echelon form.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![Rational::zero(); m.cols()];
            v[free] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -reduced.get(i, free);
            }
            v
        })
        .collect()
}

/// Some `x` with `M x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows());
    let mut augmented = RationalMatrix::zeros(m.rows(), m.cols() + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..m.cols() {
            augmented.set(i, j, m.get(i, j).clone());
        }
        augmented.set(i, m.cols(), bi.clone());
    }
    let (reduced, pivots) = augmented.rref();
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = reduced.get(i, m.cols()).clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        assert_eq!(RationalMatrix::from_integers(&[&[0, 0]]).rank(), 0);
        let m = RationalMatrix::from_integers(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(RationalMatrix::from_integers(&[&[0, 0]]).kernel_basis().len(), 2);
        let m = RationalMatrix::from_integers(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Rational::is_zero));
    }

    #[test]
    fn fractional_entries() {
        let half = Rational::frac(1, 2);
        let third = Rational::frac(1, 3);
        let m = RationalMatrix::from_rows(
            vec![
                vec![half.clone(), third.clone()],
                vec![Rational::from(3), Rational::from(2)],
            ],
            2,
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn span_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&[(0, Rational::from(2)), (2, Rational::from(4))]));
        assert!(e.insert(&[(1, Rational::frac(1, 3))]));
        assert!(!e.insert(&[(0, Rational::from(1)), (1, Rational::from(5)), (2, Rational::from(2))]));
        assert!(e.contains(&[(0, Rational::from(-1)), (2, Rational::from(-2))]));
        assert!(!e.contains(&[(2, Rational::from(1))]));
        assert!(e.contains(&[]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = RationalMatrix::from_integers(&[&[1, 1], &[1, -1]]);
        let x = solve(&m, &[Rational::from(3), Rational::from(1)]).unwrap();
        assert_eq!(x, vec![Rational::from(2), Rational::from(1)]);
        let singular = RationalMatrix::from_integers(&[&[1, 1], &[2, 2]]);
        assert!(solve(&singular, &[Rational::from(1), Rational::from(3)]).is_none());
    }
}
