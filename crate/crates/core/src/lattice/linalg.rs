//! Kernels, images, saturation and exact solving built on the Smith form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith_normal_form_with, SnfOptions, SnfResult};
use super::sparse::{SparseMatrix, SparseRow};

fn content(row: &SparseRow) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x))
}

/// `alpha * v - beta * p` for sparse rows.
fn combine(v: &SparseRow, alpha: &BigInt, p: &SparseRow, beta: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let next = match (v.get(i), p.get(j)) {
            (Some((ci, xi)), Some((cj, xj))) => {
                if ci < cj {
                    i += 1;
                    (*ci, alpha * xi)
                } else if cj < ci {
                    j += 1;
                    (*cj, -(beta * xj))
                } else {
                    i += 1;
                    j += 1;
                    (*ci, alpha * xi - beta * xj)
                }
            }
            (Some((ci, xi)), None) => {
                i += 1;
                (*ci, alpha * xi)
            }
            (None, Some((cj, xj))) => {
                j += 1;
                (*cj, -(beta * xj))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Rows in echelon form spanning the same rational row space as `a`.
///
/// The integer row lattice is not preserved, only the rational span; this is
/// enough for kernels, which are saturated.
pub fn row_space_echelon(a: &IntMatrix) -> IntMatrix {
    rows_to_dense(&echelon_rows(SparseMatrix::from_dense(a).row_data()), a.cols())
}

fn rows_to_dense(rows: &[SparseRow], ncols: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(rows.len(), ncols);
    for (r, row) in rows.iter().enumerate() {
        for (j, x) in row {
            out[(r, *j)] = x.clone();
        }
    }
    out
}

type SmallRow = Vec<(usize, i64)>;

/// Entries are kept below `2^62` so that gcds and negations cannot overflow.
const SMALL_BOUND: u64 = 1 << 62;

fn small(x: i64) -> Option<i64> {
    (x.unsigned_abs() < SMALL_BOUND).then_some(x)
}

fn combine_small(v: &SmallRow, alpha: i64, p: &SmallRow, beta: i64) -> Option<SmallRow> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let (c, x) = match (v.get(i), p.get(j)) {
            (Some(&(ci, xi)), Some(&(cj, _))) if ci < cj => {
                i += 1;
                (ci, alpha.checked_mul(xi)?)
            }
            (Some(&(ci, _)), Some(&(cj, xj))) if cj < ci => {
                j += 1;
                (cj, beta.checked_mul(xj)?.checked_neg()?)
            }
            (Some(&(ci, xi)), Some(&(_, xj))) => {
                i += 1;
                j += 1;
                (ci, alpha.checked_mul(xi)?.checked_sub(beta.checked_mul(xj)?)?)
            }
            (Some(&(ci, xi)), None) => {
                i += 1;
                (ci, alpha.checked_mul(xi)?)
            }
            (None, Some(&(cj, xj))) => {
                j += 1;
                (cj, beta.checked_mul(xj)?.checked_neg()?)
            }
            (None, None) => unreachable!(),
        };
        if x != 0 {
            out.push((c, small(x)?));
        }
    }
    Some(out)
}

fn divide_content_small(v: &mut SmallRow, positive_lead: bool) {
    let mut c = v.iter().fold(0i64, |g, (_, x)| g.gcd(x));
    if positive_lead && v.first().is_some_and(|e| e.1 < 0) {
        c = -c;
    }
    if c != 0 && c != 1 {
        for e in v.iter_mut() {
            e.1 /= c;
        }
    }
}

/// Machine-integer elimination; `None` as soon as an entry leaves the safe
/// range.
fn echelon_small(rows: &[SparseRow]) -> Option<Vec<SparseRow>> {
    let mut pivots: BTreeMap<usize, SmallRow> = BTreeMap::new();
    for row in rows {
        let mut v: SmallRow = row
            .iter()
            .map(|(j, x)| i64::try_from(x).ok().and_then(small).map(|x| (*j, x)))
            .collect::<Option<_>>()?;
        while let Some(&(lead, x)) = v.first() {
            match pivots.get(&lead) {
                Some(p) => {
                    let px = p[0].1;
                    let g = px.gcd(&x);
                    v = combine_small(&v, px / g, p, x / g)?;
                    divide_content_small(&mut v, false);
                }
                None => {
                    divide_content_small(&mut v, true);
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    Some(
        pivots
            .into_values()
            .map(|r| r.into_iter().map(|(j, x)| (j, BigInt::from(x))).collect())
            .collect(),
    )
}

fn echelon_big(rows: &[SparseRow]) -> Vec<SparseRow> {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for row in rows {
        let mut v = row.clone();
        while let Some((lead, x)) = v.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let px = &p[0].1;
                    let g = px.gcd(&x);
                    v = combine(&v, &(px / &g), p, &(&x / &g));
                    let c = content(&v);
                    if !c.is_zero() && !c.is_one() {
                        for e in v.iter_mut() {
                            e.1 /= &c;
                        }
                    }
                }
                None => {
                    let c = content(&v);
                    let sign = if x.is_negative() { -c } else { c };
                    for e in v.iter_mut() {
                        e.1 /= &sign;
                    }
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.into_values().collect()
}

/// Echelon rows ordered by leading column, each primitive with a positive
/// leading entry.
fn echelon_rows(rows: &[SparseRow]) -> Vec<SparseRow> {
    echelon_small(rows).unwrap_or_else(|| echelon_big(rows))
}

pub fn rank(a: &IntMatrix) -> usize {
    if a.rows() > a.cols() {
        row_space_echelon(&a.transpose()).rows()
    } else {
        row_space_echelon(a).rows()
    }
}

/// Saturated basis (as columns) of `{x : a x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    kernel_from_echelon(echelon_rows(SparseMatrix::from_dense(a).row_data()), a.cols())
}

pub fn kernel_basis_sparse(a: &SparseMatrix) -> IntMatrix {
    kernel_from_echelon(echelon_rows(a.row_data()), a.cols())
}

/// Rows with leading entry 1 solve for their pivot variable integrally in
/// terms of the remaining ("free") variables, so the kernel is the lift of
/// the kernel of the other rows restricted to the free variables. Only that
/// residual block goes through a Smith form. Lifting along an integral
/// section of the projection to the free variables keeps saturation.
fn kernel_from_echelon(rows: Vec<SparseRow>, n: usize) -> IntMatrix {
    if n == 0 {
        return IntMatrix::zeros(0, 0);
    }
    if rows.is_empty() {
        return IntMatrix::identity(n);
    }
    let mut unit = vec![false; n];
    for r in &rows {
        if r[0].1.is_one() {
            unit[r[0].0] = true;
        }
    }
    let free: Vec<usize> = (0..n).filter(|&j| !unit[j]).collect();
    let nf = free.len();
    let mut fpos = vec![usize::MAX; n];
    for (i, &j) in free.iter().enumerate() {
        fpos[j] = i;
    }
    // x_p as a combination of free variables, filled by back-substitution
    let mut expr: Vec<Option<Vec<BigInt>>> = vec![None; n];
    let substitute = |row: &[(usize, BigInt)], expr: &[Option<Vec<BigInt>>], out: &mut [BigInt]| {
        for (j, a) in row {
            match &expr[*j] {
                Some(e) => {
                    for (o, x) in out.iter_mut().zip(e) {
                        if !x.is_zero() {
                            *o += a * x;
                        }
                    }
                }
                None => out[fpos[*j]] += a,
            }
        }
    };
    for r in rows.iter().rev().filter(|r| r[0].1.is_one()) {
        let mut e = vec![BigInt::zero(); nf];
        substitute(&r[1..], &expr, &mut e);
        for x in e.iter_mut() {
            *x = -std::mem::take(x);
        }
        expr[r[0].0] = Some(e);
    }
    let residual: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| !r[0].1.is_one())
        .map(|r| {
            let mut out = vec![BigInt::zero(); nf];
            substitute(r, &expr, &mut out);
            out
        })
        .collect();
    let base = if residual.is_empty() {
        IntMatrix::identity(nf)
    } else {
        let m = IntMatrix::from_vec(residual.len(), nf, residual.concat());
        kernel_by_snf(&m)
    };
    let k = base.cols();
    let mut out = IntMatrix::zeros(n, k);
    for j in 0..n {
        match &expr[j] {
            Some(e) => {
                for c in 0..k {
                    let mut acc = BigInt::zero();
                    for (i, x) in e.iter().enumerate() {
                        if !x.is_zero() {
                            acc += x * &base[(i, c)];
                        }
                    }
                    out[(j, c)] = acc;
                }
            }
            None => {
                for c in 0..k {
                    out[(j, c)] = base[(fpos[j], c)].clone();
                }
            }
        }
    }
    out
}

fn kernel_by_snf(r: &IntMatrix) -> IntMatrix {
    let n = r.cols();
    if n == 0 {
        return IntMatrix::zeros(0, 0);
    }
    let opts = SnfOptions {
        u: false,
        v: true,
        u_inv: false,
        v_inv: false,
    };
    let s = smith_normal_form_with(r, opts);
    let k = s.rank();
    let idx: Vec<usize> = (k..n).collect();
    s.v.select_columns(&idx)
}

/// Basis (as columns) of the integer column span of `a`.
pub fn image_basis(a: &IntMatrix) -> IntMatrix {
    let opts = SnfOptions {
        u: false,
        v: false,
        u_inv: true,
        v_inv: false,
    };
    let s = smith_normal_form_with(a, opts);
    let k = s.rank();
    let ui = s.u_inv().expect("u_inv requested");
    let mut out = ui.select_columns(&(0..k).collect::<Vec<_>>());
    for j in 0..k {
        let d = s.d[(j, j)].clone();
        if !d.is_one() {
            for i in 0..out.rows() {
                out[(i, j)] *= &d;
            }
        }
    }
    out
}

/// Basis of the saturation `(Q-span of columns) ∩ Z^n`.
pub fn saturation_basis(a: &IntMatrix) -> IntMatrix {
    let opts = SnfOptions {
        u: false,
        v: false,
        u_inv: true,
        v_inv: false,
    };
    let s = smith_normal_form_with(a, opts);
    let k = s.rank();
    s.u_inv()
        .expect("u_inv requested")
        .select_columns(&(0..k).collect::<Vec<_>>())
}

/// Exact solver for `a x = b` over the integers, reusing one Smith form.
#[derive(Clone, Debug)]
pub struct Solver {
    rows: usize,
    cols: usize,
    snf: SnfResult,
    rank: usize,
}

impl Solver {
    pub fn new(a: &IntMatrix) -> Self {
        let snf = smith_normal_form_with(a, SnfOptions::UV);
        let rank = snf.rank();
        Solver {
            rows: a.rows(),
            cols: a.cols(),
            snf,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn has_full_column_rank(&self) -> bool {
        self.rank == self.cols
    }

    /// One integer solution of `a x = b`, or `None` if there is none.
    /// When `a` has a kernel the free coordinates are set to zero.
    pub fn solve_vec(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let ub = self.snf.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, x) in ub.iter().enumerate() {
            if i < self.rank {
                let d = &self.snf.d[(i, i)];
                let (q, r) = x.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !x.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }

    pub fn solve(&self, b: &IntMatrix) -> Option<IntMatrix> {
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            cols.push(self.solve_vec(&b.column(j))?);
        }
        Some(IntMatrix::from_columns(self.cols, &cols))
    }
}

/// Inverse of a unimodular matrix, `None` if `a` is not unimodular.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if !a.is_square() {
        return None;
    }
    let s = smith_normal_form_with(a, SnfOptions::UV);
    if s.rank() != a.rows() || !s.factors().iter().all(One::is_one) {
        return None;
    }
    // u a v = 1, so a^-1 = v u
    Some(&s.v * &s.u)
}

/// Whether the columns of `a` span a saturated sublattice of rank `a.cols()`.
pub fn is_saturated_basis(a: &IntMatrix) -> bool {
    let s = smith_normal_form_with(
        a,
        SnfOptions {
            u: false,
            v: false,
            u_inv: false,
            v_inv: false,
        },
    );
    s.rank() == a.cols() && s.factors().iter().all(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_row_vector() {
        let a = IntMatrix::from_rows(&[vec![1, -1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.shape(), (2, 1));
        assert!((&a * &k).is_zero());
        assert!(is_saturated_basis(&k));
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 4y = 0 has kernel spanned by (2, 1), not (4, 2).
        let a = IntMatrix::from_rows(&[vec![2, -4], vec![4, -8], vec![-1, 2]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!((&a * &k).is_zero());
        assert!(is_saturated_basis(&k));
    }

    #[test]
    fn image_keeps_index() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let b = image_basis(&a);
        assert_eq!(b.determinant().abs(), BigInt::from(6));
        let s = saturation_basis(&IntMatrix::from_rows(&[vec![2], vec![4]]));
        assert_eq!(s.column(0).iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn solver_detects_inconsistency() {
        let a = IntMatrix::from_rows(&[vec![2], vec![0]]);
        let s = Solver::new(&a);
        assert_eq!(s.solve_vec(&[BigInt::from(4), BigInt::from(0)]), Some(vec![BigInt::from(2)]));
        assert_eq!(s.solve_vec(&[BigInt::from(3), BigInt::from(0)]), None);
        assert_eq!(s.solve_vec(&[BigInt::from(2), BigInt::from(1)]), None);
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        let b = unimodular_inverse(&a).unwrap();
        assert!((&a * &b).is_identity());
        assert!(unimodular_inverse(&IntMatrix::from_rows(&[vec![2]])).is_none());
    }

    #[test]
    fn sparse_kernel_agrees() {
        let a = IntMatrix::from_rows(&[vec![1, 2, 3, 0], vec![0, 0, 1, 1]]);
        assert_eq!(kernel_basis_sparse(&SparseMatrix::from_dense(&a)), kernel_basis(&a));
    }

    #[test]
    fn echelon_rank() {
        let a = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&a.transpose()), 2);
    }
}
