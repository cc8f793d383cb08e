//! Group cohomology in degrees 0..2, Tate cohomology in degrees -1 and 0,
//! hypercohomology of two-term complexes, restriction maps and Shapiro
//! comparisons, all computed from explicit normalized cochains.

pub mod bar;
mod hyper;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

pub use hyper::{hypercohomology, hypercohomology_modules};

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};
use crate::lattice::linalg::{image_basis, kernel_basis, kernel_basis_sparse};
use crate::lattice::{induce, invariant_factors, AbGroup, AbHom, FgModule, GLattice, IntMatrix, SparseMatrix, Subquotient};
use bar::{coboundary, restriction_matrix, BarIndex};

/// Anything usable as cochain coefficients: `Z^dim` (modulo optional
/// relations) with a group action.
pub trait Coefficients {
    fn group(&self) -> &Arc<FiniteGroup>;
    fn dim(&self) -> usize;
    fn action(&self, g: usize) -> &IntMatrix;
    /// Relation columns for a presented module, `None` for lattices.
    fn relations(&self) -> Option<&IntMatrix>;
}

impl Coefficients for GLattice {
    fn group(&self) -> &Arc<FiniteGroup> {
        GLattice::group(self)
    }
    fn dim(&self) -> usize {
        self.rank()
    }
    fn action(&self, g: usize) -> &IntMatrix {
        GLattice::action(self, g)
    }
    fn relations(&self) -> Option<&IntMatrix> {
        None
    }
}

impl Coefficients for FgModule {
    fn group(&self) -> &Arc<FiniteGroup> {
        FgModule::group(self)
    }
    fn dim(&self) -> usize {
        self.ngens()
    }
    fn action(&self, g: usize) -> &IntMatrix {
        FgModule::action(self, g)
    }
    fn relations(&self) -> Option<&IntMatrix> {
        let r = FgModule::relations(self);
        (r.cols() > 0).then_some(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Group,
    Tate,
    Hyper,
}

/// One summand of the cochain coordinates: `C^degree` with values in `Z^dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub cochain_degree: usize,
    pub dim: usize,
}

/// A computed cohomology group: the Smith form of cocycles modulo
/// coboundaries, with explicit cocycle representatives.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    kind: Kind,
    degree: i32,
    subgroup: Vec<usize>,
    bar: BarIndex,
    layout: Vec<Block>,
    quotient: Subquotient,
}

impl CohomologyGroup {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// Members of the subgroup the cohomology is taken over.
    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn layout(&self) -> &[Block] {
        &self.layout
    }

    pub fn group(&self) -> AbGroup {
        self.quotient.group()
    }

    pub fn factors(&self) -> Vec<BigInt> {
        self.quotient.factors()
    }

    pub fn is_trivial(&self) -> bool {
        self.quotient.factors().is_empty()
    }

    /// Cocycle representatives of the Smith generators.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        self.quotient.generators()
    }

    /// Class of a cocycle in generator coordinates; `None` if `x` is not a
    /// cocycle.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        self.quotient.coords(x)
    }

    /// A cocycle representing the class with the given coordinates.
    pub fn cocycle(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.quotient.element(coords)
    }

    pub fn cochain_len(&self) -> usize {
        self.quotient.ambient_dim()
    }

    /// Label of every cochain coordinate, such as `f2(3,5)[0]` for the value
    /// of a 2-cochain at elements 3 and 5 in lattice coordinate 0. With two
    /// blocks the prefixes are `x` and `y`.
    pub fn legend(&self) -> Vec<String> {
        let mut out = vec![];
        let names = if self.layout.len() > 1 { ["x", "y"] } else { ["f", "f"] };
        for (b, block) in self.layout.iter().enumerate() {
            let n = block.cochain_degree;
            for t in 0..self.bar.count(n as i32) {
                let tuple = self.bar.tuple(t, n);
                let args: Vec<String> = tuple.iter().map(|g| g.to_string()).collect();
                for k in 0..block.dim {
                    out.push(format!("{}{}({})[{}]", names[b.min(1)], n, args.join(","), k));
                }
            }
        }
        out
    }

    /// Cochain restriction matrix onto the layout of `to` (a cohomology group
    /// of the same kind over a smaller subgroup).
    fn restriction_to(&self, to: &CohomologyGroup) -> Result<SparseMatrix> {
        if self.kind != to.kind || self.degree != to.degree || self.layout != to.layout {
            return Err(Error::Mismatch("restriction between incompatible cohomology groups".into()));
        }
        if self.kind == Kind::Tate {
            return Err(Error::UnsupportedDegree {
                degree: self.degree,
                supported: "restriction is implemented for group and hypercohomology",
            });
        }
        let mut blocks = vec![];
        for b in &self.layout {
            let m = restriction_matrix(&self.bar, &to.bar, b.cochain_degree, b.dim)
                .ok_or_else(|| Error::Membership("restriction target is not a subgroup".into()))?;
            blocks.push(m);
        }
        Ok(block_diag_sparse(&blocks))
    }
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group())
    }
}

pub(crate) fn block_diag_sparse(blocks: &[SparseMatrix]) -> SparseMatrix {
    let cols: usize = blocks.iter().map(|b| b.cols()).sum();
    let mut data = vec![];
    let mut off = 0;
    for b in blocks {
        for row in b.row_data() {
            data.push(row.iter().map(|(j, x)| (j + off, x.clone())).collect());
        }
        off += b.cols();
    }
    SparseMatrix::from_rows(cols, data)
}

/// `{x : d_cur x ∈ im rel_next} / (im d_prev + im rel_cur)`.
pub(crate) fn homology_at(
    d_cur: &SparseMatrix,
    d_prev: &IntMatrix,
    rel_cur: Option<&SparseMatrix>,
    rel_next: Option<&SparseMatrix>,
) -> Result<Subquotient> {
    let n = d_cur.cols();
    let cycles = match rel_next {
        None => kernel_basis_sparse(d_cur),
        Some(r) => {
            let k = kernel_basis_sparse(&d_cur.hstack(r));
            let proj = if k.cols() == 0 {
                IntMatrix::zeros(n, 0)
            } else {
                k.select_rows(&(0..n).collect::<Vec<_>>())
            };
            image_basis(&proj)
        }
    };
    let cycles = if cycles.rows() != n {
        IntMatrix::zeros(n, 0)
    } else {
        cycles
    };
    let boundaries = match rel_cur {
        None => d_prev.clone(),
        Some(r) => d_prev.hstack(&r.to_dense()),
    };
    Subquotient::new(cycles, &boundaries)
}

fn check_subgroup<C: Coefficients + ?Sized>(h: &Subgroup, a: &C) -> Result<()> {
    if Arc::ptr_eq(h.parent(), a.group()) || **h.parent() == **a.group() {
        Ok(())
    } else {
        Err(Error::Membership("subgroup of a different group".into()))
    }
}

pub(crate) fn cochain_coboundary<C: Coefficients + ?Sized>(
    idx: &BarIndex,
    a: &C,
    n: i32,
) -> SparseMatrix {
    if n < 0 {
        return SparseMatrix::zeros(idx.count(n + 1) * a.dim(), 0);
    }
    coboundary(idx, a.group(), a.dim(), |g| a.action(g).clone(), n as usize)
}

/// `H^n(H, A)` for `n` in `{0, 1, 2}`.
pub fn group_cohomology<C: Coefficients + ?Sized>(h: &Subgroup, a: &C, n: i32) -> Result<CohomologyGroup> {
    if !(0..=2).contains(&n) {
        return Err(Error::UnsupportedDegree {
            degree: n,
            supported: "0, 1, 2",
        });
    }
    check_subgroup(h, a)?;
    let idx = BarIndex::new(h);
    let d_cur = cochain_coboundary(&idx, a, n);
    let d_prev = cochain_coboundary(&idx, a, n - 1).to_dense();
    let (rc, rn) = match a.relations() {
        Some(r) => (
            Some(SparseMatrix::block_repeat(r, idx.count(n))),
            Some(SparseMatrix::block_repeat(r, idx.count(n + 1))),
        ),
        None => (None, None),
    };
    let quotient = homology_at(&d_cur, &d_prev, rc.as_ref(), rn.as_ref())?;
    Ok(CohomologyGroup {
        kind: Kind::Group,
        degree: n,
        subgroup: h.members().to_vec(),
        bar: idx,
        layout: vec![Block {
            cochain_degree: n as usize,
            dim: a.dim(),
        }],
        quotient,
    })
}

/// Tate cohomology `Ĥ^{-1}(H, L) = ker N / I_H L` and `Ĥ^0(H, L) = L^H / N L`.
pub fn tate_cohomology(h: &Subgroup, l: &GLattice, n: i32) -> Result<CohomologyGroup> {
    let r = l.rank();
    let norm = l.norm(h)?;
    let quotient = match n {
        -1 => {
            let mut aug = IntMatrix::zeros(r, 0);
            for &x in h.members() {
                if x != h.parent().identity() {
                    aug = aug.hstack(&l.action(x).sub(&IntMatrix::identity(r)));
                }
            }
            Subquotient::new(kernel_basis(&norm), &aug)?
        }
        0 => Subquotient::new(l.fixed_points(h)?, &norm)?,
        _ => {
            return Err(Error::UnsupportedDegree {
                degree: n,
                supported: "-1, 0",
            })
        }
    };
    Ok(CohomologyGroup {
        kind: Kind::Tate,
        degree: n,
        subgroup: h.members().to_vec(),
        bar: BarIndex::new(h),
        layout: vec![Block {
            cochain_degree: 0,
            dim: r,
        }],
        quotient,
    })
}

/// Tate cohomology of a presented module, which must be torsion-free.
pub fn tate_cohomology_module(h: &Subgroup, m: &FgModule, n: i32) -> Result<CohomologyGroup> {
    if !m.is_torsion_free() {
        return Err(Error::UnsupportedCoefficients(
            "Tate cohomology needs torsion-free coefficients".into(),
        ));
    }
    let q = m.to_lattice()?;
    tate_cohomology(h, &q.lattice, n)
}

/// Map on cohomology induced by a homomorphism of the cochain groups.
#[derive(Clone, Debug)]
pub struct CohMap {
    pub source: CohomologyGroup,
    pub target: CohomologyGroup,
    pub hom: AbHom,
}

/// Restriction `src -> dst` where `dst` is the same kind and degree over a
/// subgroup of the subgroup of `src`.
pub fn restriction_between(src: &CohomologyGroup, dst: &CohomologyGroup) -> Result<AbHom> {
    let r = src.restriction_to(dst)?;
    let cols = src
        .generators()
        .iter()
        .map(|z| {
            dst.coords(&r.mul_vec(z)).ok_or_else(|| {
                Error::WellDefined("restricted cocycle is not a cocycle".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let m = IntMatrix::from_columns(dst.group().ngens(), &cols);
    AbHom::new(src.group(), dst.group(), m)
}

/// `res: H^n(Γ', A) -> H^n(H, A)` for `H ≤ Γ'`.
pub fn restriction<C: Coefficients + ?Sized>(
    from: &Subgroup,
    to: &Subgroup,
    a: &C,
    n: i32,
) -> Result<CohMap> {
    if !to.is_subgroup_of(from) {
        return Err(Error::Membership("restriction target is not a subgroup".into()));
    }
    let source = group_cohomology(from, a, n)?;
    let target = group_cohomology(to, a, n)?;
    let hom = restriction_between(&source, &target)?;
    Ok(CohMap {
        source,
        target,
        hom,
    })
}

/// Isomorphism type of `H^n(H, L)` without representatives. In positive
/// degrees the group is torsion, and since cocycles form a saturated
/// sublattice it is the torsion of the cokernel of `d_{n-1}`; only one Smith
/// form of the smaller coboundary is needed.
pub fn cohomology_invariants(h: &Subgroup, l: &GLattice, n: i32) -> Result<AbGroup> {
    if !(0..=2).contains(&n) {
        return Err(Error::UnsupportedDegree {
            degree: n,
            supported: "0, 1, 2",
        });
    }
    check_subgroup(h, l)?;
    let idx = BarIndex::new(h);
    if n == 0 {
        let d0 = cochain_coboundary(&idx, l, 0);
        let free = kernel_basis_sparse(&d0).cols();
        return Ok(AbGroup::new(vec![BigInt::from(0); free]));
    }
    let d_prev = cochain_coboundary(&idx, l, n - 1).to_dense();
    let torsion = invariant_factors(&d_prev)
        .into_iter()
        .filter(|x| *x != BigInt::from(1))
        .collect();
    Ok(AbGroup::new(torsion))
}

/// Both sides of Shapiro's lemma for a lattice `L` over `H ≤ Γ`.
#[derive(Clone, Debug)]
pub struct ShapiroVerdict {
    pub isomorphic: bool,
    /// `H^n(Γ, Ind L)`
    pub induced: AbGroup,
    /// `H^n(H, L)`
    pub restricted: AbGroup,
}

pub fn shapiro_compare(h: &Subgroup, l: &GLattice, n: i32) -> Result<ShapiroVerdict> {
    let ind = induce(l, h)?;
    let induced = cohomology_invariants(&Subgroup::whole(ind.group()), &ind, n)?;
    let restricted = cohomology_invariants(&Subgroup::whole(l.group()), l, n)?;
    Ok(ShapiroVerdict {
        isomorphic: induced.is_isomorphic(&restricted),
        induced,
        restricted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named;
    use crate::lattice::make_permutation_lattice;

    fn factors(c: &CohomologyGroup) -> Vec<i64> {
        c.factors().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    fn sign() -> GLattice {
        GLattice::new(Arc::new(named::cyclic(2)), vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap()
    }

    #[test]
    fn sign_lattice_values() {
        let l = sign();
        let g = Subgroup::whole(l.group());
        assert!(group_cohomology(&g, &l, 0).unwrap().is_trivial());
        assert_eq!(factors(&group_cohomology(&g, &l, 1).unwrap()), vec![2]);
        assert!(group_cohomology(&g, &l, 2).unwrap().is_trivial());
        assert_eq!(factors(&tate_cohomology(&g, &l, -1).unwrap()), vec![2]);
        assert!(tate_cohomology(&g, &l, 0).unwrap().is_trivial());
    }

    #[test]
    fn trivial_coefficients_cyclic() {
        for n in 2..=4 {
            let g = Arc::new(named::cyclic(n));
            let z = GLattice::trivial(&g, 1);
            let w = Subgroup::whole(&g);
            assert_eq!(factors(&group_cohomology(&w, &z, 0).unwrap()), vec![0]);
            assert!(group_cohomology(&w, &z, 1).unwrap().is_trivial());
            assert_eq!(factors(&group_cohomology(&w, &z, 2).unwrap()), vec![n as i64]);
            assert_eq!(factors(&tate_cohomology(&w, &z, 0).unwrap()), vec![n as i64]);
        }
    }

    #[test]
    fn unsupported_degree() {
        let l = sign();
        let g = Subgroup::whole(l.group());
        assert!(matches!(group_cohomology(&g, &l, 3), Err(Error::UnsupportedDegree { .. })));
        assert!(matches!(tate_cohomology(&g, &l, 1), Err(Error::UnsupportedDegree { .. })));
    }

    #[test]
    fn torsion_coefficients() {
        // H^1(Z/2, Z/2) = Z/2 and H^2(Z/2, Z/2) = Z/2 with trivial action
        let g = Arc::new(named::cyclic(2));
        let m = FgModule::trivial(&g, IntMatrix::from_rows(&[vec![2]]));
        let w = Subgroup::whole(&g);
        for n in 0..=2 {
            assert_eq!(factors(&group_cohomology(&w, &m, n).unwrap()), vec![2]);
        }
        assert!(matches!(
            tate_cohomology_module(&w, &m, 0),
            Err(Error::UnsupportedCoefficients(_))
        ));
    }

    #[test]
    fn restriction_z4_to_z2() {
        let g = Arc::new(named::cyclic(4));
        let z = GLattice::trivial(&g, 1);
        let whole = Subgroup::whole(&g);
        let sub = Subgroup::generated_by(&g, &[g.mul(1, 1)]).unwrap();
        assert_eq!(sub.order(), 2);
        let r = restriction(&whole, &sub, &z, 2).unwrap();
        assert_eq!(factors(&r.source), vec![4]);
        assert_eq!(factors(&r.target), vec![2]);
        assert!(r.hom.is_surjective());
        let id = restriction(&whole, &whole, &z, 2).unwrap();
        assert!(id.hom.is_isomorphism());
    }

    #[test]
    fn permutation_lattices_have_no_h1() {
        let g = Arc::new(named::symmetric3());
        let lat = crate::groups::enumerate_subgroups(&g);
        for h in &lat.subgroups {
            let p = make_permutation_lattice(&g, std::slice::from_ref(h)).unwrap();
            for k in &lat.subgroups {
                assert!(group_cohomology(k, &p, 1).unwrap().is_trivial());
                assert!(tate_cohomology(k, &p, -1).unwrap().is_trivial());
            }
        }
    }

    #[test]
    fn shapiro_sign_from_z2_to_z4() {
        let g = Arc::new(named::cyclic(4));
        let h = Subgroup::generated_by(&g, &[g.mul(1, 1)]).unwrap();
        let (sub, _) = h.to_group();
        let sign = GLattice::new(Arc::new(sub), vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap();
        for n in 1..=2 {
            let v = shapiro_compare(&h, &sign, n).unwrap();
            assert!(v.isomorphic, "degree {n}");
        }
    }

    #[test]
    fn invariants_match_full_computation() {
        let g = Arc::new(named::symmetric3());
        let l = make_permutation_lattice(&g, &[Subgroup::generated_by(&g, &[g.generators()[0]]).unwrap()]).unwrap();
        let w = Subgroup::whole(&g);
        for n in 0..=2 {
            let full = group_cohomology(&w, &l, n).unwrap().group();
            assert!(cohomology_invariants(&w, &l, n).unwrap().is_isomorphic(&full), "degree {n}");
        }
    }
}
