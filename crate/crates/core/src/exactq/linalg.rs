//! Dense matrices and Gauss-Jordan elimination over a [`Field`].

use crate::error::{Error, Result};
use crate::exactq::field::Field;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Matrix-vector product.
    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        (0..self.rows).map(|r| field.dot(self.row(r), v)).collect()
    }
}

/// Result of [`rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<E> {
    /// Nonzero rows of the reduced coefficient matrix.
    pub r: Matrix<E>,
    /// Right-hand side matching the rows of `r`.
    pub c: Vec<E>,
    pub rank: usize,
    pub consistent: bool,
    /// Pivot column of each row of `r`.
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form of the augmented system `[m | rhs]`, pivoting
/// only in the coefficient columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>, rhs: &[F::Elem]) -> Result<Rref<F::Elem>> {
    if rhs.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: rhs.len(),
        });
    }
    let cols = m.cols();
    let mut rows: Vec<Vec<F::Elem>> = (0..m.rows())
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let pivots = eliminate(field, &mut rows, cols);
    let rank = pivots.len();
    let consistent = rows[rank..].iter().all(|row| field.is_zero(&row[cols]));
    rows.truncate(rank);
    let c = rows.iter_mut().map(|row| row.pop().unwrap()).collect();
    Ok(Rref {
        r: Matrix::from_rows(cols, rows)?,
        c,
        rank,
        consistent,
        pivots,
    })
}

/// In-place Gauss-Jordan elimination on the first `pivot_cols` columns of
/// `rows`. Returns the pivot columns; rows are reordered so pivot rows come
/// first.
pub(crate) fn eliminate<F: Field>(
    field: &F,
    rows: &mut [Vec<F::Elem>],
    pivot_cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..pivot_cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(next, found);
        let inv = field.inv(&rows[next][col]);
        for x in rows[next].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

/// Rank of a list of vectors of equal length.
pub fn rank_of<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut rows = vectors.to_vec();
    let cols = rows[0].len();
    eliminate(field, &mut rows, cols).len()
}

/// Basis of the null space `{x : m x = 0}`, one vector per free column of
/// the RREF (free columns in increasing order).
pub fn null_space<F: Field>(field: &F, vectors: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut rows = vectors.to_vec();
    let pivots = eliminate(field, &mut rows, cols);
    free_basis(field, &rows, &pivots, cols)
}

pub(crate) fn free_basis<F: Field>(
    field: &F,
    rows: &[Vec<F::Elem>],
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<F::Elem>> {
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    for free in 0..cols {
        if pivot_iter.peek() == Some(&&free) {
            pivot_iter.next();
            continue;
        }
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(&rows[i][free]);
        }
        basis.push(v);
    }
    basis
}
