//! Hypercohomology of `[L1 -> L2]` (degrees -1 and 0) from the total complex
//! `Tot^n = C^{n+1}(L1) ⊕ C^n(L2)`, `D^n(x, y) = (δx, (-1)^n ∂x + δy)`.

use num_bigint::BigInt;

use super::bar::BarIndex;
use super::{cochain_coboundary, homology_at, Block, CohomologyGroup, Coefficients, Kind};
use crate::complexes::TwoTermComplex;
use crate::error::{Error, Result};
use crate::groups::Subgroup;
use crate::lattice::{FgModule, IntMatrix, SparseMatrix, SparseRow};

/// Places sparse blocks `[[a, 0], [b, c]]` into one matrix.
fn lower_triangular(a: &SparseMatrix, b: &SparseMatrix, c: &SparseMatrix) -> SparseMatrix {
    let off = a.cols();
    let cols = a.cols() + c.cols();
    let mut data: Vec<SparseRow> = a.row_data().to_vec();
    for (rb, rc) in b.row_data().iter().zip(c.row_data()) {
        let mut row = rb.clone();
        row.extend(rc.iter().map(|(j, x)| (j + off, x.clone())));
        data.push(row);
    }
    SparseMatrix::from_rows(cols, data)
}

struct Tot<'a, A: Coefficients + ?Sized, B: Coefficients + ?Sized> {
    idx: BarIndex,
    l1: &'a A,
    l2: &'a B,
    d: &'a IntMatrix,
}

impl<A: Coefficients + ?Sized, B: Coefficients + ?Sized> Tot<'_, A, B> {
    fn size(&self, n: i32) -> usize {
        self.idx.count(n + 1) * self.l1.dim() + self.idx.count(n) * self.l2.dim()
    }

    /// `D^n : Tot^n -> Tot^{n+1}`
    fn differential(&self, n: i32) -> SparseMatrix {
        let top = cochain_coboundary(&self.idx, self.l1, n + 1);
        let bottom = cochain_coboundary(&self.idx, self.l2, n);
        let k = self.idx.count(n + 1);
        let sign = if n.rem_euclid(2) == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        let push = SparseMatrix::block_repeat(&self.d.scale(&sign), k);
        let d = lower_triangular(&top, &push, &bottom);
        debug_assert_eq!(d.cols(), self.size(n));
        debug_assert_eq!(d.rows(), self.size(n + 1));
        d
    }

    fn relations(&self, n: i32) -> Option<SparseMatrix> {
        let (r1, r2) = (self.l1.relations(), self.l2.relations());
        if r1.is_none() && r2.is_none() {
            return None;
        }
        let zero1 = IntMatrix::zeros(self.l1.dim(), 0);
        let zero2 = IntMatrix::zeros(self.l2.dim(), 0);
        let a = SparseMatrix::block_repeat(r1.unwrap_or(&zero1), self.idx.count(n + 1));
        let b = SparseMatrix::block_repeat(r2.unwrap_or(&zero2), self.idx.count(n));
        Some(super::block_diag_sparse(&[a, b]))
    }
}

fn check_degree(n: i32) -> Result<()> {
    if (-1..=1).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree {
            degree: n,
            supported: "-1, 0, 1",
        })
    }
}

fn compute<A: Coefficients + ?Sized, B: Coefficients + ?Sized>(
    h: &Subgroup,
    l1: &A,
    l2: &B,
    d: &IntMatrix,
    n: i32,
) -> Result<CohomologyGroup> {
    check_degree(n)?;
    if **h.parent() != **l1.group() || **l1.group() != **l2.group() {
        return Err(Error::Membership("subgroup of a different group".into()));
    }
    if d.shape() != (l2.dim(), l1.dim()) {
        return Err(Error::Mismatch("differential has the wrong shape".into()));
    }
    let tot = Tot {
        idx: BarIndex::new(h),
        l1,
        l2,
        d,
    };
    let d_cur = tot.differential(n);
    let d_prev = tot.differential(n - 1).to_dense();
    let quotient = homology_at(
        &d_cur,
        &d_prev,
        tot.relations(n).as_ref(),
        tot.relations(n + 1).as_ref(),
    )?;
    let mut layout = vec![];
    if n + 1 >= 0 {
        layout.push(Block {
            cochain_degree: (n + 1) as usize,
            dim: l1.dim(),
        });
    }
    if n >= 0 {
        layout.push(Block {
            cochain_degree: n as usize,
            dim: l2.dim(),
        });
    }
    Ok(CohomologyGroup {
        kind: Kind::Hyper,
        degree: n,
        subgroup: h.members().to_vec(),
        bar: tot.idx,
        layout,
        quotient,
    })
}

/// `ℍ^n(H, [L1 -> L2])` for `n` in `{-1, 0, 1}`.
pub fn hypercohomology(h: &Subgroup, t: &TwoTermComplex, n: i32) -> Result<CohomologyGroup> {
    compute(h, t.l1(), t.l2(), t.matrix(), n)
}

/// Hypercohomology of `[M1 -> M2]` for presented modules; `d` must send the
/// relations of `M1` into those of `M2` and commute with the actions.
pub fn hypercohomology_modules(
    h: &Subgroup,
    m1: &FgModule,
    m2: &FgModule,
    d: &IntMatrix,
    n: i32,
) -> Result<CohomologyGroup> {
    crate::lattice::FgMap::new(m1.clone(), m2.clone(), d.clone())?;
    compute(h, m1, m2, d, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::group_cohomology;
    use crate::groups::named;
    use crate::lattice::GLattice;
    use std::sync::Arc;

    fn factors(c: &CohomologyGroup) -> Vec<i64> {
        c.factors().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn total_differential_squares_to_zero() {
        let g = Arc::new(named::symmetric3());
        let l1 = crate::lattice::make_permutation_lattice(&g, &[Subgroup::trivial(&g)]).unwrap();
        let l2 = GLattice::trivial(&g, 1);
        let d = IntMatrix::from_rows(&[vec![1; 6]]);
        let tot = Tot {
            idx: BarIndex::new(&Subgroup::whole(&g)),
            l1: &l1,
            l2: &l2,
            d: &d,
        };
        for n in -2..=1 {
            let a = tot.differential(n).to_dense();
            let b = tot.differential(n + 1).to_dense();
            assert!((&b * &a).is_zero(), "degree {n}");
        }
    }

    #[test]
    fn multiplication_by_two() {
        let g = Arc::new(named::cyclic(2));
        let z = GLattice::trivial(&g, 1);
        let t = TwoTermComplex::new(z.clone(), z, IntMatrix::from_rows(&[vec![2]])).unwrap();
        let w = Subgroup::whole(&g);
        assert!(hypercohomology(&w, &t, -1).unwrap().is_trivial());
        assert_eq!(factors(&hypercohomology(&w, &t, 0).unwrap()), vec![2]);
    }

    #[test]
    fn degree_shifts() {
        let g = Arc::new(named::cyclic(2));
        let sign = GLattice::new(g.clone(), vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap();
        let zero = GLattice::zero(&g);
        let w = Subgroup::whole(&g);
        let left = TwoTermComplex::new(sign.clone(), zero.clone(), IntMatrix::zeros(0, 1)).unwrap();
        let right = TwoTermComplex::new(zero, sign.clone(), IntMatrix::zeros(1, 0)).unwrap();
        for n in -1..=1 {
            let a = hypercohomology(&w, &left, n).unwrap();
            let b = group_cohomology(&w, &sign, n + 1).unwrap();
            assert_eq!(a.factors(), b.factors());
            if n >= 0 {
                let c = hypercohomology(&w, &right, n).unwrap();
                let e = group_cohomology(&w, &sign, n).unwrap();
                assert_eq!(c.factors(), e.factors());
            }
        }
    }

    #[test]
    fn finite_constant_modules() {
        // [Z/2 -0-> Z/2] over Z/2: ℍ^0 = H^1 ⊕ H^0 = (Z/2)^2
        let g = Arc::new(named::cyclic(2));
        let m = FgModule::trivial(&g, IntMatrix::from_rows(&[vec![2]]));
        let w = Subgroup::whole(&g);
        let h0 = hypercohomology_modules(&w, &m, &m, &IntMatrix::zeros(1, 1), 0).unwrap();
        assert_eq!(factors(&h0), vec![2, 2]);
    }
}
