//! Normalized bar cochains: an `n`-cochain on `H` is a function of `n`
//! non-identity elements of `H`. Coordinates are ordered by tuple (mixed radix,
//! first argument most significant) and then by lattice coordinate.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::groups::{FiniteGroup, Subgroup};
use crate::lattice::sparse::normalize_row;
use crate::lattice::{IntMatrix, SparseMatrix, SparseRow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarIndex {
    elements: Vec<usize>,
    pos: Vec<usize>,
}

impl BarIndex {
    pub fn new(h: &Subgroup) -> Self {
        let id = h.parent().identity();
        Self::from_elements(
            h.members().iter().copied().filter(|&x| x != id).collect(),
            h.parent().order(),
        )
    }

    pub(crate) fn from_elements(elements: Vec<usize>, order: usize) -> Self {
        let mut pos = vec![usize::MAX; order];
        for (i, &e) in elements.iter().enumerate() {
            pos[e] = i;
        }
        BarIndex { elements, pos }
    }

    /// Non-identity members, in increasing id order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn count(&self, n: i32) -> usize {
        if n < 0 {
            0
        } else {
            self.elements.len().pow(n as u32)
        }
    }

    pub fn tuple(&self, mut idx: usize, n: usize) -> Vec<usize> {
        let m = self.elements.len();
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = self.elements[idx % m];
            idx /= m;
        }
        out
    }

    /// Tuple index, `None` if some entry is not a non-identity member.
    pub fn index(&self, tuple: &[usize]) -> Option<usize> {
        let m = self.elements.len();
        let mut idx = 0;
        for &g in tuple {
            let p = *self.pos.get(g)?;
            if p == usize::MAX {
                return None;
            }
            idx = idx * m + p;
        }
        Some(idx)
    }
}

/// `δ^n : C^n -> C^{n+1}` with
/// `(δf)(g_1..g_{n+1}) = g_1 f(g_2..) + Σ (-1)^i f(..g_i g_{i+1}..) + (-1)^{n+1} f(g_1..g_n)`.
/// Terms with an identity argument vanish on normalized cochains and are dropped.
pub fn coboundary(
    idx: &BarIndex,
    group: &FiniteGroup,
    dim: usize,
    action: impl Fn(usize) -> IntMatrix,
    n: usize,
) -> SparseMatrix {
    let rows = idx.count(n as i32 + 1);
    let cols = idx.count(n as i32) * dim;
    let mut data: Vec<SparseRow> = Vec::with_capacity(rows * dim);
    let mut acts: Vec<Option<IntMatrix>> = vec![None; group.order()];
    for &g in idx.elements() {
        acts[g] = Some(action(g));
    }
    for t in 0..rows {
        let tuple = idx.tuple(t, n + 1);
        let mut row_entries: Vec<Vec<(usize, BigInt)>> = vec![vec![]; dim];
        let rho = acts[tuple[0]].as_ref().expect("tuple entries are members");
        let c0 = idx.index(&tuple[1..]).expect("tail is a tuple") * dim;
        for (i, entries) in row_entries.iter_mut().enumerate() {
            for j in 0..dim {
                let x = &rho[(i, j)];
                if !x.is_zero() {
                    entries.push((c0 + j, x.clone()));
                }
            }
        }
        let mut inner = Vec::with_capacity(n);
        for i in 1..=n {
            let p = group.mul(tuple[i - 1], tuple[i]);
            if p == group.identity() {
                continue;
            }
            inner.clear();
            inner.extend_from_slice(&tuple[..i - 1]);
            inner.push(p);
            inner.extend_from_slice(&tuple[i + 1..]);
            let c = idx.index(&inner).expect("product of members is a member") * dim;
            let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            for (k, entries) in row_entries.iter_mut().enumerate() {
                entries.push((c + k, sign.clone()));
            }
        }
        let c = idx.index(&tuple[..n]).expect("head is a tuple") * dim;
        let sign = if (n + 1).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        for (k, entries) in row_entries.iter_mut().enumerate() {
            entries.push((c + k, sign.clone()));
        }
        data.extend(row_entries.into_iter().map(normalize_row));
    }
    SparseMatrix::from_rows(cols, data)
}

/// Restriction of `n`-cochains from the subgroup of `from` to the subgroup
/// of `to`: keeps the values on tuples from the smaller subgroup.
pub fn restriction_matrix(from: &BarIndex, to: &BarIndex, n: usize, dim: usize) -> Option<SparseMatrix> {
    let rows = to.count(n as i32);
    let mut data = Vec::with_capacity(rows * dim);
    for t in 0..rows {
        let tuple = to.tuple(t, n);
        let s = from.index(&tuple)?;
        for k in 0..dim {
            data.push(vec![(s * dim + k, BigInt::one())]);
        }
    }
    Some(SparseMatrix::from_rows(from.count(n as i32) * dim, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named;
    use std::sync::Arc;

    #[test]
    fn tuple_index_round_trip() {
        let g = Arc::new(named::symmetric3());
        let idx = BarIndex::new(&Subgroup::whole(&g));
        for t in 0..idx.count(3) {
            assert_eq!(idx.index(&idx.tuple(t, 3)), Some(t));
        }
        assert_eq!(idx.index(&[g.identity()]), None);
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let g = Arc::new(named::symmetric3());
        let idx = BarIndex::new(&Subgroup::whole(&g));
        // the sign character on S3
        let sign = |x: usize| {
            let p = g.permutations().unwrap()[x].images().to_vec();
            let mut inv = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            IntMatrix::from_rows(&[vec![if inv % 2 == 0 { 1 } else { -1 }]])
        };
        for n in 0..2 {
            let d0 = coboundary(&idx, &g, 1, sign, n).to_dense();
            let d1 = coboundary(&idx, &g, 1, sign, n + 1).to_dense();
            assert!((&d1 * &d0).is_zero());
        }
    }
}
