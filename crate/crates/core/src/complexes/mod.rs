//! Two-term complexes of lattices, maps between them, and the flasque and
//! coflasque resolution machinery.

mod cts;
mod invariants;
mod resolution;
mod squares;

use std::sync::Arc;

pub use cts::{cts_cover_coflasque, cts_embed_coflasque, CoverSequence, EmbedSequence};
pub use invariants::{
    classify, r_equivalence_invariant, uniqueness_invariants, ClassMode, Classification,
    CohomologyRow, InvariantRow, InvariantValue, REquivalenceReport, UniquenessReport,
};
pub use resolution::{
    coflasque_resolution, coflasque_resolution_with, flasque_resolution, flasque_resolution_with,
    Direction, Move, MoveKind, ReplayReport, Resolution, ResolutionCertificate, ResolveOptions,
    VanishingEntry,
};
pub use squares::{pullback_square, pushout_square, PullbackSquare, PushoutSquare};

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::lattice::linalg::{kernel_basis, Solver};
use crate::lattice::{fg_iso_check, FgMap, FgModule, GLattice, IntMatrix, LatticeMap};

/// `[L1 -> L2]` with `L1` in degree -1 and `L2` in degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermComplex {
    differential: LatticeMap,
}

impl TwoTermComplex {
    pub fn new(l1: GLattice, l2: GLattice, matrix: IntMatrix) -> Result<Self> {
        Ok(TwoTermComplex {
            differential: LatticeMap::new(l1, l2, matrix)?,
        })
    }

    pub fn from_map(differential: LatticeMap) -> Self {
        TwoTermComplex { differential }
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        let z = GLattice::zero(group);
        TwoTermComplex::new(z.clone(), z, IntMatrix::zeros(0, 0)).expect("zero complex")
    }

    pub fn l1(&self) -> &GLattice {
        &self.differential.source
    }

    pub fn l2(&self) -> &GLattice {
        &self.differential.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.differential.matrix
    }

    pub fn differential(&self) -> &LatticeMap {
        &self.differential
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.l1().group()
    }

    /// `[L2° -> L1°]` with the transposed differential.
    pub fn dual(&self) -> TwoTermComplex {
        TwoTermComplex {
            differential: self.differential.dual(),
        }
    }
}

/// `H^{-1} = ker ∂` (a lattice) and `H^0 = coker ∂` (a module).
#[derive(Clone, Debug)]
pub struct Homology {
    pub h_minus1: GLattice,
    /// Basis of `ker ∂` inside `L1`, as columns.
    pub kernel_basis: IntMatrix,
    pub h0: FgModule,
}

pub fn homology(t: &TwoTermComplex) -> Result<Homology> {
    let kb = kernel_basis(t.matrix());
    let kb = if kb.rows() != t.l1().rank() {
        IntMatrix::zeros(t.l1().rank(), 0)
    } else {
        kb
    };
    Ok(Homology {
        h_minus1: t.l1().sublattice(&kb)?,
        kernel_basis: kb,
        h0: FgModule::cokernel(t.differential()),
    })
}

/// Commuting square from `source` to `target`: `minus_one: L1 -> L1'`,
/// `zero: L2 -> L2'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMap {
    pub source: TwoTermComplex,
    pub target: TwoTermComplex,
    pub minus_one: IntMatrix,
    pub zero: IntMatrix,
}

impl ComplexMap {
    pub fn new(
        source: TwoTermComplex,
        target: TwoTermComplex,
        minus_one: IntMatrix,
        zero: IntMatrix,
    ) -> Result<Self> {
        let m = ComplexMap {
            source,
            target,
            minus_one,
            zero,
        };
        m.validate()?;
        Ok(m)
    }

    /// Equivariance of both components and commutativity of the square.
    pub fn validate(&self) -> Result<()> {
        LatticeMap::new(self.source.l1().clone(), self.target.l1().clone(), self.minus_one.clone())?;
        LatticeMap::new(self.source.l2().clone(), self.target.l2().clone(), self.zero.clone())?;
        if (self.target.matrix() * &self.minus_one) != (&self.zero * self.source.matrix()) {
            return Err(Error::WellDefined("complex map square does not commute".into()));
        }
        Ok(())
    }

    /// Induced maps on `H^{-1}` and `H^0`.
    pub fn on_homology(&self) -> Result<(FgMap, FgMap)> {
        let hs = homology(&self.source)?;
        let ht = homology(&self.target)?;
        let image = &self.minus_one * &hs.kernel_basis;
        let coords = Solver::new(&ht.kernel_basis)
            .solve(&image)
            .ok_or_else(|| Error::WellDefined("kernel does not map into kernel".into()))?;
        let k = FgMap::new(
            FgModule::from_lattice(&hs.h_minus1),
            FgModule::from_lattice(&ht.h_minus1),
            coords,
        )?;
        let c = FgMap::new(hs.h0, ht.h0, self.zero.clone())?;
        Ok((k, c))
    }

    pub fn is_quasi_isomorphism(&self) -> Result<bool> {
        let (k, c) = self.on_homology()?;
        Ok(fg_iso_check(&k)? && fg_iso_check(&c)?)
    }

    /// Map of dual complexes in the opposite direction.
    pub fn dual(&self) -> ComplexMap {
        ComplexMap {
            source: self.target.dual(),
            target: self.source.dual(),
            minus_one: self.zero.transpose(),
            zero: self.minus_one.transpose(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{named, Subgroup};
    use crate::lattice::make_permutation_lattice;

    #[test]
    fn homology_examples() {
        let g = Arc::new(named::cyclic(2));
        let z = GLattice::trivial(&g, 1);
        let two = TwoTermComplex::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let h = homology(&two).unwrap();
        assert_eq!(h.h_minus1.rank(), 0);
        assert_eq!(h.h0.structure().to_string(), "Z/2");

        let reg = make_permutation_lattice(&g, &[Subgroup::trivial(&g)]).unwrap();
        let sign = GLattice::new(g.clone(), vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap();
        let aug = TwoTermComplex::new(reg, sign, IntMatrix::from_rows(&[vec![1, -1]])).unwrap();
        let h = homology(&aug).unwrap();
        assert_eq!(h.h_minus1.rank(), 1);
        assert!(h.h_minus1.is_trivial_action());
        assert!(h.h0.structure().is_trivial());
    }

    #[test]
    fn non_commuting_square_rejected() {
        let g = Arc::new(named::cyclic(2));
        let z = GLattice::trivial(&g, 1);
        let id = TwoTermComplex::new(z.clone(), z.clone(), IntMatrix::identity(1)).unwrap();
        let m = ComplexMap::new(id.clone(), id, IntMatrix::from_rows(&[vec![1]]), IntMatrix::from_rows(&[vec![2]]));
        assert!(m.is_err());
    }

    #[test]
    fn dual_complex_is_involution() {
        let g = Arc::new(named::symmetric3());
        let reg = make_permutation_lattice(&g, &[Subgroup::trivial(&g)]).unwrap();
        let z = GLattice::trivial(&g, 1);
        let t = TwoTermComplex::new(z, reg, IntMatrix::from_rows(&vec![vec![1]; 6])).unwrap();
        assert_eq!(t.dual().dual(), t);
    }
}
