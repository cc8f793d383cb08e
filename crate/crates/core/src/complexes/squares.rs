//! Pushout along a monomorphism and pullback along an epimorphism, each
//! giving a quasi-isomorphism of two-term complexes.

use super::{ComplexMap, TwoTermComplex};
use crate::error::{Error, Result};
use crate::lattice::linalg::kernel_basis;
use crate::lattice::{FgModule, GLattice, IntMatrix, LatticeMap, TorsionFreeQuotient};

/// `B' = (A' ⊕ B) / {(f a, -∂ a)}` for `f: A -> A'` and `∂: A -> B`.
#[derive(Clone, Debug)]
pub struct PushoutSquare {
    pub module: FgModule,
    /// Present when `B'` is torsion-free.
    pub lattice: Option<TorsionFreeQuotient>,
    /// `[A -> B] -> [A' -> B']`, present when `B'` is a lattice.
    pub map: Option<ComplexMap>,
    /// Whether `map` was verified to be a quasi-isomorphism.
    pub certified: bool,
}

impl PushoutSquare {
    /// The lower complex `[A' -> B']`.
    pub fn complex(&self) -> Option<&TwoTermComplex> {
        self.map.as_ref().map(|m| &m.target)
    }
}

pub fn pushout_square(f: &LatticeMap, d: &LatticeMap) -> Result<PushoutSquare> {
    if f.source != d.source {
        return Err(Error::Mismatch("pushout maps must share their source".into()));
    }
    if !f.is_injective() {
        return Err(Error::Precondition("pushout map is not injective".into()));
    }
    let a2 = &f.target;
    let b = &d.target;
    let sum = GLattice::direct_sum(&[a2, b])?;
    let relations = f.matrix.vstack(&d.matrix.neg());
    let gens = sum.generator_matrices().to_vec();
    let module = FgModule::new(sum.group().clone(), relations, gens)?;
    if !module.is_torsion_free() {
        return Ok(PushoutSquare {
            module,
            lattice: None,
            map: None,
            certified: false,
        });
    }
    let q = module.to_lattice()?;
    let (na, nb) = (a2.rank(), b.rank());
    let d_new = q.projection.block(0, 0, q.projection.rows(), na);
    let j = q.projection.block(0, na, q.projection.rows(), nb);
    let source = TwoTermComplex::from_map(d.clone());
    let target = TwoTermComplex::new(a2.clone(), q.lattice.clone(), d_new)?;
    let map = ComplexMap::new(source, target, f.matrix.clone(), j)?;
    let certified = map.is_quasi_isomorphism()?;
    if !certified {
        return Err(Error::Verification("pushout square is not a quasi-isomorphism".into()));
    }
    Ok(PushoutSquare {
        module,
        lattice: Some(q),
        map: Some(map),
        certified,
    })
}

/// `A = B' ×_B A' = {(b', a') : g(b') = ∂'(a')}` for `g: B' -> B` and
/// `∂': A' -> B`.
#[derive(Clone, Debug)]
pub struct PullbackSquare {
    pub lattice: GLattice,
    /// Basis of `A` inside `B' ⊕ A'`, as columns.
    pub basis: IntMatrix,
    /// `[A -> B'] -> [A' -> B]`
    pub map: ComplexMap,
    pub certified: bool,
}

impl PullbackSquare {
    /// The upper complex `[A -> B']`.
    pub fn complex(&self) -> &TwoTermComplex {
        &self.map.source
    }
}

pub fn pullback_square(g: &LatticeMap, d: &LatticeMap) -> Result<PullbackSquare> {
    if g.target != d.target {
        return Err(Error::Mismatch("pullback maps must share their target".into()));
    }
    if !g.is_surjective() {
        return Err(Error::Precondition("pullback map is not surjective".into()));
    }
    let b2 = &g.source;
    let a2 = &d.source;
    let sum = GLattice::direct_sum(&[b2, a2])?;
    let diff = g.matrix.hstack(&d.matrix.neg());
    let basis = kernel_basis(&diff);
    let basis = if basis.rows() != sum.rank() {
        IntMatrix::zeros(sum.rank(), 0)
    } else {
        basis
    };
    let lattice = sum.sublattice(&basis)?;
    let (nb, na) = (b2.rank(), a2.rank());
    let to_b2 = basis.block(0, 0, nb, basis.cols());
    let to_a2 = basis.block(nb, 0, na, basis.cols());
    let source = TwoTermComplex::new(lattice.clone(), b2.clone(), to_b2)?;
    let target = TwoTermComplex::from_map(d.clone());
    let map = ComplexMap::new(source, target, to_a2, g.matrix.clone())?;
    let certified = map.is_quasi_isomorphism()?;
    if !certified {
        return Err(Error::Verification("pullback square is not a quasi-isomorphism".into()));
    }
    Ok(PullbackSquare {
        lattice,
        basis,
        map,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{named, Subgroup};
    use crate::lattice::make_permutation_lattice;
    use std::sync::Arc;

    #[test]
    fn pushout_from_zero() {
        let g = Arc::new(named::cyclic(2));
        let zero = GLattice::zero(&g);
        let a2 = make_permutation_lattice(&g, &[Subgroup::trivial(&g)]).unwrap();
        let b = GLattice::trivial(&g, 1);
        let f = LatticeMap::zero(&zero, &a2);
        let d = LatticeMap::zero(&zero, &b);
        let p = pushout_square(&f, &d).unwrap();
        assert!(p.certified);
        assert_eq!(p.lattice.unwrap().lattice.rank(), 3);
    }

    #[test]
    fn pushout_along_norm_element() {
        let g = Arc::new(named::cyclic(2));
        let z = GLattice::trivial(&g, 1);
        let reg = make_permutation_lattice(&g, &[Subgroup::trivial(&g)]).unwrap();
        let f = LatticeMap::new(z.clone(), reg, IntMatrix::from_rows(&[vec![1], vec![1]])).unwrap();
        let d = LatticeMap::identity(&z);
        let p = pushout_square(&f, &d).unwrap();
        assert!(p.certified);
        assert_eq!(p.complex().unwrap().l2().rank(), 2);
    }

    #[test]
    fn pushout_needs_mono() {
        let g = Arc::new(named::cyclic(2));
        let z = GLattice::trivial(&g, 1);
        let zero = GLattice::zero(&g);
        let f = LatticeMap::zero(&z, &zero);
        assert!(matches!(pushout_square(&f, &LatticeMap::identity(&z)), Err(Error::Precondition(_))));
    }

    #[test]
    fn pullback_examples() {
        let g = Arc::new(named::cyclic(2));
        let z = GLattice::trivial(&g, 1);
        let zero = GLattice::zero(&g);
        // B = 0: A = B' ⊕ A'
        let p = pullback_square(&LatticeMap::zero(&z, &zero), &LatticeMap::zero(&z, &zero)).unwrap();
        assert_eq!(p.lattice.rank(), 2);
        // g = id: A ≅ A'
        let p = pullback_square(&LatticeMap::identity(&z), &LatticeMap::identity(&z)).unwrap();
        assert_eq!(p.lattice.rank(), 1);
        assert!(p.certified);
        let two = LatticeMap::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert!(matches!(pullback_square(&two, &LatticeMap::identity(&z)), Err(Error::Precondition(_))));
    }
}
