//! Exact linear algebra over the rationals.
//!
//! Matrices are stored as sparse rows. Row reduction always produces the
//! unique reduced row-echelon form, pivoting on the first nonzero entry in
//! column order, so bases derived from it are reproducible across runs.
//! Small matrices go through a dense Gauss-Jordan path instead.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Sparse vector: strictly increasing column indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Column count below which [`rref`] uses the dense path.
pub const DEFAULT_DENSE_THRESHOLD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index ({row}, {col}) out of bounds for {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        MatrixQ {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn from_dense(rows: usize, cols: usize, entries: &[Rational]) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        let data = entries
            .chunks(cols.max(1))
            .take(rows)
            .map(dense_to_sparse)
            .collect::<Vec<_>>();
        let mut m = MatrixQ { rows, cols, data };
        m.data.resize(rows, Vec::new());
        Ok(m)
    }

    /// Builds a matrix from integer rows; convenient in tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(j, v)| (j, int(*v)))
                    .collect()
            })
            .collect();
        MatrixQ {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix from sparse rows; entries may be unsorted and may
    /// contain zeros or repeated columns (which are summed).
    pub fn from_sparse_rows(cols: usize, rows: Vec<Vec<(usize, Rational)>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows);
        for (i, row) in rows.into_iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (j, v) in row {
                if j >= cols {
                    return Err(LinalgError::OutOfBounds {
                        row: i,
                        col: j,
                        rows: nrows,
                        cols,
                    });
                }
                *acc.entry(j).or_insert_with(Rational::zero) += v;
            }
            data.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(MatrixQ {
            rows: nrows,
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

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.data[row]
            .binary_search_by_key(&col, |(j, _)| *j)
            .map(|k| self.data[row][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) -> Result<(), LinalgError> {
        if row >= self.rows || col >= self.cols {
            return Err(LinalgError::OutOfBounds {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let r = &mut self.data[row];
        match r.binary_search_by_key(&col, |(j, _)| *j) {
            Ok(k) if value.is_zero() => {
                r.remove(k);
            }
            Ok(k) => r[k].1 = value,
            Err(_) if value.is_zero() => {}
            Err(k) => r.insert(k, (col, value)),
        }
        Ok(())
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data.iter().map(|r| sparse_to_dense(r, self.cols)).collect()
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        MatrixQ {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().map(|(j, v)| v * &x[*j]).sum())
            .collect())
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &[(usize, Rational)], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (j, x) in v {
        out[*j] = x.clone();
    }
    out
}

/// `a - c * b` for sorted sparse vectors.
fn axpy_sub(a: &[(usize, Rational)], c: &Rational, b: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        match (a.get(i), b.get(k)) {
            (Some((ja, va)), Some((jb, vb))) if ja == jb => {
                let v = va - c * vb;
                if !v.is_zero() {
                    out.push((*ja, v));
                }
                i += 1;
                k += 1;
            }
            (Some((ja, va)), Some((jb, _))) if ja < jb => {
                out.push((*ja, va.clone()));
                i += 1;
            }
            (Some((ja, va)), None) => {
                out.push((*ja, va.clone()));
                i += 1;
            }
            (_, Some((jb, vb))) => {
                out.push((*jb, -(c * vb)));
                k += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn scale(v: &mut SparseVec, c: &Rational) {
    for (_, x) in v.iter_mut() {
        *x *= c;
    }
}

/// Incrementally maintained reduced row-echelon basis of a row space.
///
/// Every stored row has a leading 1 in its pivot column and zeros in all
/// other pivot columns.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    cols: usize,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Pivot columns in increasing order.
    pub fn pivot_cols(&self) -> Vec<usize> {
        self.pivot_row.keys().copied().collect()
    }

    /// Rows sorted by pivot column.
    pub fn sorted_rows(&self) -> Vec<&SparseVec> {
        self.pivot_row.values().map(|&r| &self.rows[r]).collect()
    }

    /// Reduces `v` against the stored rows; the result vanishes on every
    /// pivot column and is zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter(|(j, _)| self.pivot_row.contains_key(j))
            .cloned()
            .collect();
        let mut out: SparseVec = v.to_vec();
        for (j, c) in hits {
            let row = &self.rows[self.pivot_row[&j]];
            out = axpy_sub(&out, &c, row);
        }
        out
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space. Returns the new pivot column if `v` was
    /// independent of the stored rows.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> Option<usize> {
        let mut r = self.reduce(v);
        let (p, lead) = match r.first() {
            Some((p, lead)) => (*p, lead.clone()),
            None => return None,
        };
        scale(&mut r, &lead.recip());
        for row in self.rows.iter_mut() {
            if let Ok(k) = row.binary_search_by_key(&p, |(j, _)| *j) {
                let c = row[k].1.clone();
                *row = axpy_sub(row, &c, &r);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(r);
        Some(p)
    }
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub reduced: MatrixQ,
    pub pivot_cols: Vec<usize>,
}

pub fn rref(m: &MatrixQ) -> Rref {
    rref_with_threshold(m, DEFAULT_DENSE_THRESHOLD)
}

/// Row reduction choosing the dense path when `m.cols() < threshold`.
pub fn rref_with_threshold(m: &MatrixQ, threshold: usize) -> Rref {
    if m.cols < threshold {
        rref_dense(m)
    } else {
        rref_sparse(m)
    }
}

fn rref_sparse(m: &MatrixQ) -> Rref {
    let mut ech = Echelon::new(m.cols);
    for row in &m.data {
        ech.insert(row);
    }
    let mut data: Vec<SparseVec> = ech.sorted_rows().into_iter().cloned().collect();
    let rank = data.len();
    data.resize(m.rows, Vec::new());
    Rref {
        rank,
        reduced: MatrixQ {
            rows: m.rows,
            cols: m.cols,
            data,
        },
        pivot_cols: ech.pivot_cols(),
    }
}

fn rref_dense(m: &MatrixQ) -> Rref {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut().skip(c) {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        rank: pivots.len(),
        reduced: MatrixQ {
            rows,
            cols,
            data: a.iter().map(|row| dense_to_sparse(row)).collect(),
        },
        pivot_cols: pivots,
    }
}

pub fn rank(m: &MatrixQ) -> usize {
    let mut ech = Echelon::new(m.cols);
    m.data.iter().filter(|row| ech.insert(row).is_some()).count()
}

/// Basis of the null space as sparse vectors, one per free column.
pub fn kernel_basis_sparse(m: &MatrixQ) -> Vec<SparseVec> {
    let r = rref(m);
    let pivot_set: BTreeMap<usize, usize> = r
        .pivot_cols
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    let free = (0..m.cols).filter(|c| !pivot_set.contains_key(c));
    free.map(|f| {
        let mut v: Vec<(usize, Rational)> = vec![(f, Rational::one())];
        for (&pc, &i) in &pivot_set {
            let coeff = r.reduced.get(i, f);
            if !coeff.is_zero() {
                v.push((pc, -coeff));
            }
        }
        v.sort_by_key(|(j, _)| *j);
        v
    })
    .collect()
}

/// Basis of the null space, `cols - rank` vectors.
pub fn kernel_basis(m: &MatrixQ) -> Vec<Vec<Rational>> {
    kernel_basis_sparse(m)
        .into_iter()
        .map(|v| sparse_to_dense(&v, m.cols))
        .collect()
}

/// Solves `m x = b`, returning `None` when `b` is outside the column space.
pub fn solve(m: &MatrixQ, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            got: b.len(),
        });
    }
    let aug_rows = m
        .data
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            if !bi.is_zero() {
                r.push((m.cols, bi.clone()));
            }
            r
        })
        .collect();
    let aug = MatrixQ {
        rows: m.rows,
        cols: m.cols + 1,
        data: aug_rows,
    };
    let r = rref(&aug);
    if r.pivot_cols.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (i, &c) in r.pivot_cols.iter().enumerate() {
        x[c] = r.reduced.get(i, m.cols);
    }
    Ok(Some(x))
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
