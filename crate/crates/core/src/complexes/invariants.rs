//! Flasque/coflasque classification, invariants for comparing flasque
//! resolutions, and the flasque lattice attached to a complex.

use num_bigint::BigInt;

use super::resolution::{flasque_resolution, Resolution};
use super::TwoTermComplex;
use crate::cohomology::{group_cohomology, tate_cohomology, CohomologyGroup};
use crate::error::{Error, Result};
use crate::groups::{enumerate_subgroups, Subgroup};
use crate::lattice::GLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassMode {
    /// `Ĥ^{-1}(H, L) = 0` for all `H`.
    Flasque,
    /// `H^1(H, L) = 0` for all `H`.
    Coflasque,
}

impl ClassMode {
    pub fn name(self) -> &'static str {
        match self {
            ClassMode::Flasque => "flasque",
            ClassMode::Coflasque => "coflasque",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub mode: ClassMode,
    pub holds: bool,
    /// The first subgroup representative with nonvanishing cohomology, and
    /// that group with its cocycle representatives.
    pub witness: Option<(Subgroup, CohomologyGroup)>,
}

fn test_group(mode: ClassMode, h: &Subgroup, l: &GLattice) -> Result<CohomologyGroup> {
    match mode {
        ClassMode::Flasque => tate_cohomology(h, l, -1),
        ClassMode::Coflasque => group_cohomology(h, l, 1),
    }
}

pub fn classify(l: &GLattice, mode: ClassMode) -> Result<Classification> {
    for h in enumerate_subgroups(l.group()).representatives() {
        let c = test_group(mode, h, l)?;
        if !c.is_trivial() {
            return Ok(Classification {
                mode,
                holds: false,
                witness: Some((h.clone(), c)),
            });
        }
    }
    Ok(Classification {
        mode,
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantValue {
    Count(usize),
    Factors(Vec<BigInt>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRow {
    pub subgroup: Vec<usize>,
    pub invariant: &'static str,
    pub left: InvariantValue,
    pub right: InvariantValue,
}

impl InvariantRow {
    pub fn agrees(&self) -> bool {
        self.left == self.right
    }
}

#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub rows: Vec<InvariantRow>,
}

impl UniquenessReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(InvariantRow::agrees)
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &InvariantRow> {
        self.rows.iter().filter(|r| !r.agrees())
    }
}

fn lattice_invariants(h: &Subgroup, l: &GLattice) -> Result<Vec<(&'static str, InvariantValue)>> {
    Ok(vec![
        ("rank", InvariantValue::Count(l.rank())),
        ("fixed-point rank", InvariantValue::Count(l.fixed_points(h)?.cols())),
        ("H^1", InvariantValue::Factors(group_cohomology(h, l, 1)?.factors())),
        ("Ĥ^-1", InvariantValue::Factors(tate_cohomology(h, l, -1)?.factors())),
    ])
}

/// Compares `F ⊕ P'` with `F' ⊕ P` for flasque resolutions `[P -> F]` and
/// `[P' -> F']`. Agreement is necessary for the two sums to be isomorphic.
pub fn uniqueness_invariants(a: &TwoTermComplex, b: &TwoTermComplex) -> Result<UniquenessReport> {
    if **a.group() != **b.group() {
        return Err(Error::Mismatch("resolutions over different groups".into()));
    }
    let left = GLattice::direct_sum(&[a.l2(), b.l1()])?;
    let right = GLattice::direct_sum(&[b.l2(), a.l1()])?;
    let mut rows = vec![];
    for h in enumerate_subgroups(a.group()).representatives() {
        let li = lattice_invariants(h, &left)?;
        let ri = lattice_invariants(h, &right)?;
        for ((name, l), (_, r)) in li.into_iter().zip(ri) {
            rows.push(InvariantRow {
                subgroup: h.members().to_vec(),
                invariant: name,
                left: l,
                right: r,
            });
        }
    }
    Ok(UniquenessReport { rows })
}

/// Cohomology of the flasque lattice over one subgroup representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyRow {
    pub subgroup: Vec<usize>,
    pub tate_minus1: Vec<BigInt>,
    pub tate_zero: Vec<BigInt>,
    pub h1: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub struct REquivalenceReport {
    /// The flasque lattice `F` of the flasque resolution `[P -> F]`.
    pub flasque: GLattice,
    pub resolution: Resolution,
    pub rows: Vec<CohomologyRow>,
}

/// The flasque lattice of `t` with its cohomology table; the `Ĥ^{-1}`
/// column vanishes by construction.
pub fn r_equivalence_invariant(t: &TwoTermComplex) -> Result<REquivalenceReport> {
    let resolution = flasque_resolution(t)?;
    let f = resolution.resolved.l2().clone();
    let rows = enumerate_subgroups(f.group())
        .representatives()
        .map(|h| {
            Ok(CohomologyRow {
                subgroup: h.members().to_vec(),
                tate_minus1: tate_cohomology(h, &f, -1)?.factors(),
                tate_zero: tate_cohomology(h, &f, 0)?.factors(),
                h1: group_cohomology(h, &f, 1)?.factors(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(REquivalenceReport {
        flasque: f,
        resolution,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named;
    use crate::lattice::{make_permutation_lattice, IntMatrix};
    use std::sync::Arc;

    fn sign() -> GLattice {
        GLattice::new(Arc::new(named::cyclic(2)), vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap()
    }

    #[test]
    fn classify_examples() {
        let g = Arc::new(named::symmetric3());
        let reg = make_permutation_lattice(&g, &[Subgroup::trivial(&g)]).unwrap();
        for mode in [ClassMode::Flasque, ClassMode::Coflasque] {
            assert!(classify(&reg, mode).unwrap().holds);
            assert!(classify(&GLattice::trivial(&g, 2), mode).unwrap().holds);
            let c = classify(&sign(), mode).unwrap();
            assert!(!c.holds);
            let (h, grp) = c.witness.unwrap();
            assert_eq!(h.order(), 2);
            assert_eq!(grp.factors(), vec![BigInt::from(2)]);
        }
    }

    #[test]
    fn mismatched_pair_disagrees_on_fixed_points() {
        let s = sign();
        let g = s.group().clone();
        let zero = GLattice::zero(&g);
        let a = TwoTermComplex::new(zero.clone(), s, IntMatrix::zeros(1, 0)).unwrap();
        let b = TwoTermComplex::new(zero, GLattice::trivial(&g, 1), IntMatrix::zeros(1, 0)).unwrap();
        let rep = uniqueness_invariants(&a, &b).unwrap();
        assert!(!rep.all_agree());
        assert!(rep.disagreements().any(|r| r.invariant == "fixed-point rank"));
        assert!(uniqueness_invariants(&a, &a).unwrap().all_agree());
    }

    #[test]
    fn r_equivalence_of_sign() {
        let s = sign();
        let zero = GLattice::zero(s.group());
        let t = TwoTermComplex::new(s, zero, IntMatrix::zeros(0, 1)).unwrap();
        let rep = r_equivalence_invariant(&t).unwrap();
        assert_eq!(rep.rows.len(), 2);
        assert!(rep.rows.iter().all(|r| r.tate_minus1.is_empty()));
        assert_eq!(rep.flasque.rank(), 1);
    }
}
