use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::IntMatrix;

/// Sorted `(column, value)` pairs with no zero values.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Row-major sparse integer matrix, used for coboundary operators whose
/// dense form would be mostly zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

/// Sorts by column and merges repeated columns, dropping zeros.
pub fn normalize_row(mut entries: Vec<(usize, BigInt)>) -> SparseRow {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(entries.len());
    for (j, x) in entries {
        match out.last_mut() {
            Some((k, y)) if *k == j => *y += x,
            _ => out.push((j, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![vec![]; rows],
        }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseRow>) -> Self {
        debug_assert!(data.iter().all(|r| r.iter().all(|(j, x)| *j < cols && !x.is_zero())));
        SparseMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_dense(a: &IntMatrix) -> Self {
        let data = (0..a.rows())
            .map(|i| {
                a.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: a.rows(),
            cols: a.cols(),
            data,
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                out[(i, *j)] = x.clone();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.data[i]
    }

    pub fn row_data(&self) -> &[SparseRow] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().fold(BigInt::zero(), |acc, (j, a)| acc + a * &x[*j]))
            .collect()
    }

    /// `self * b` as a dense matrix.
    pub fn mul_dense(&self, b: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, b.rows());
        let mut out = IntMatrix::zeros(self.rows, b.cols());
        for (i, row) in self.data.iter().enumerate() {
            for (j, a) in row {
                for k in 0..b.cols() {
                    let v = &b[(*j, k)];
                    if !v.is_zero() {
                        out[(i, k)] += a * v;
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, x)| (j + self.cols, x.clone())));
                r
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        SparseMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block diagonal matrix with `copies` copies of `block`.
    pub fn block_repeat(block: &IntMatrix, copies: usize) -> SparseMatrix {
        let b = SparseMatrix::from_dense(block);
        let mut data = Vec::with_capacity(copies * b.rows);
        for c in 0..copies {
            for row in &b.data {
                data.push(row.iter().map(|(j, x)| (j + c * b.cols, x.clone())).collect());
            }
        }
        SparseMatrix {
            rows: copies * b.rows,
            cols: copies * b.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_round_trip_and_products() {
        let a = IntMatrix::from_rows(&[vec![1, 0, 2], vec![0, 0, 0], vec![-3, 4, 0]]);
        let s = SparseMatrix::from_dense(&a);
        assert_eq!(s.to_dense(), a);
        assert_eq!(s.nnz(), 4);
        let b = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1], vec![2, 0]]);
        assert_eq!(s.mul_dense(&b), &a * &b);
        let x: Vec<BigInt> = [1, 2, 3].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(s.mul_vec(&x), a.mul_vec(&x));
    }

    #[test]
    fn normalize_merges() {
        let r = normalize_row(vec![(2, BigInt::from(1)), (0, BigInt::from(3)), (2, BigInt::from(-1))]);
        assert_eq!(r, vec![(0, BigInt::from(3))]);
    }

    #[test]
    fn block_repeat_matches_dense() {
        let b = IntMatrix::from_rows(&[vec![2], vec![1]]);
        let s = SparseMatrix::block_repeat(&b, 2);
        assert_eq!(s.to_dense(), IntMatrix::block_diag(&[&b, &b]));
    }
}
