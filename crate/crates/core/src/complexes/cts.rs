//! The two basic exact sequences: a permutation cover with coflasque kernel,
//! and an embedding of a lattice into a coflasque lattice with permutation
//! cokernel.

use std::sync::Arc;

use num_bigint::BigInt;

use super::ResolveOptions;
use crate::error::{Error, Result};
use crate::groups::{coset_action, enumerate_subgroups, FiniteGroup, Subgroup};
use crate::lattice::linalg::{image_basis, kernel_basis};
use crate::lattice::{make_permutation_lattice, FgModule, GLattice, IntMatrix, Subquotient};

/// `0 -> C -> Q -> M -> 0` with `Q` a permutation lattice and `Q^H -> M^H`
/// onto for every subgroup `H`.
#[derive(Clone, Debug)]
pub struct CoverSequence {
    pub module: FgModule,
    pub q: GLattice,
    pub c: GLattice,
    /// `C -> Q`, as `q.rank x c.rank`.
    pub inclusion: IntMatrix,
    /// `Q -> M` on generators, as `module.ngens x q.rank`.
    pub projection: IntMatrix,
    /// One entry per permutation summand: the subgroup and the fixed element
    /// that its base coset is sent to.
    pub summands: Vec<(Vec<usize>, Vec<BigInt>)>,
}

/// Subgroup conjugacy representatives in processing order: largest first
/// unless a permutation of the representatives is given.
pub(crate) fn processing_order(g: &Arc<FiniteGroup>, opts: &ResolveOptions) -> Result<Vec<Subgroup>> {
    let lat = enumerate_subgroups(g);
    let reps: Vec<Subgroup> = lat.representatives().cloned().collect();
    match &opts.rep_order {
        Some(perm) => {
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            if sorted != (0..reps.len()).collect::<Vec<_>>() {
                return Err(Error::Precondition(format!(
                    "subgroup order must be a permutation of 0..{}",
                    reps.len()
                )));
            }
            Ok(perm.iter().map(|&i| reps[i].clone()).collect())
        }
        None => Ok(reps.into_iter().rev().collect()),
    }
}

/// Greedy cover: for each subgroup representative `H`, the part of `M^H`
/// not yet reached from `Q^H` is added as new `Z[G/H]` summands, one per
/// Smith generator of the missing quotient.
pub fn cts_cover_coflasque(m: &FgModule, opts: &ResolveOptions) -> Result<CoverSequence> {
    let g = m.group().clone();
    let n = m.ngens();
    let order = processing_order(&g, opts)?;
    let mut subgroups: Vec<Subgroup> = vec![];
    let mut summands: Vec<(Vec<usize>, Vec<BigInt>)> = vec![];
    let mut proj_cols: Vec<Vec<BigInt>> = vec![];
    for h in &order {
        let fixed = m.fixed_points(h)?;
        let reached = if subgroups.is_empty() {
            IntMatrix::zeros(n, 0)
        } else {
            let q = make_permutation_lattice(&g, &subgroups)?;
            let p = IntMatrix::from_columns(n, &proj_cols);
            &p * &q.fixed_points(h)?
        };
        let missing = Subquotient::new(fixed.basis().clone(), &m.relations().hstack(&reached))?;
        for x in missing.generators() {
            let cs = coset_action(&g, h)?;
            for &r in cs.representatives() {
                proj_cols.push(m.action(r).mul_vec(x));
            }
            subgroups.push(h.clone());
            summands.push((h.members().to_vec(), x.clone()));
        }
    }
    let q = if subgroups.is_empty() {
        GLattice::zero(&g).with_permutation_certificate(vec![])
    } else {
        make_permutation_lattice(&g, &subgroups)?
    };
    let projection = IntMatrix::from_columns(n, &proj_cols);
    let full = projection.hstack(m.relations());
    if !Subquotient::cokernel_of(&full).group().is_trivial() {
        return Err(Error::Verification("permutation cover is not surjective".into()));
    }
    let k = kernel_basis(&full);
    let qr = q.rank();
    let proj_k = if k.rows() == full.cols() && qr > 0 {
        k.select_rows(&(0..qr).collect::<Vec<_>>())
    } else {
        IntMatrix::zeros(qr, 0)
    };
    let inclusion = image_basis(&proj_k);
    let c = q.sublattice(&inclusion)?;
    Ok(CoverSequence {
        module: m.clone(),
        q,
        c,
        inclusion,
        projection,
        summands,
    })
}

/// `0 -> L -> C1 -> Q1 -> 0` with `C1` coflasque and `Q1` permutation.
#[derive(Clone, Debug)]
pub struct EmbedSequence {
    pub lattice: GLattice,
    pub c1: GLattice,
    pub q1: GLattice,
    /// `L -> C1`
    pub inclusion: IntMatrix,
    /// `C1 -> Q1`
    pub projection: IntMatrix,
}

/// Covers the dual, resolves the kernel of that cover, pushes out and
/// dualizes back.
pub fn cts_embed_coflasque(l: &GLattice, opts: &ResolveOptions) -> Result<EmbedSequence> {
    let ld = l.dual();
    // 0 -> C -> Q -> L° -> 0
    let first = cts_cover_coflasque(&FgModule::from_lattice(&ld), opts)?;
    // 0 -> C' -> Q' -> C° -> 0, dualized to 0 -> C -> P1 -> C'° -> 0
    let second = cts_cover_coflasque(&FgModule::from_lattice(&first.c.dual()), opts)?;
    let p1 = second.q.dual();
    let c_to_p1 = second.projection.transpose();
    // E = (Q ⊕ P1) / {(i c, -j c)}
    let sum = GLattice::direct_sum(&[&first.q, &p1])?;
    let relations = first.inclusion.vstack(&c_to_p1.neg());
    let e_mod = FgModule::new(sum.group().clone(), relations, sum.generator_matrices().to_vec())?;
    let e = e_mod
        .to_lattice()
        .map_err(|_| Error::Verification("pushout in the embedding has torsion".into()))?;
    let (nq, np) = (first.q.rank(), p1.rank());
    // E -> L° induced by (Q -> L°, 0)
    let to_ld = first
        .projection
        .hstack(&IntMatrix::zeros(ld.rank(), np));
    let e_to_ld = &to_ld * &e.section;
    let p1_to_e = e.projection.block(0, nq, e.projection.rows(), np);
    let c1 = e.lattice.dual();
    let q1 = p1.dual();
    Ok(EmbedSequence {
        lattice: l.clone(),
        c1,
        q1,
        inclusion: e_to_ld.transpose(),
        projection: p1_to_e.transpose(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::group_cohomology;
    use crate::groups::named;
    use crate::lattice::LatticeMap;

    fn sign() -> GLattice {
        GLattice::new(Arc::new(named::cyclic(2)), vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap()
    }

    fn check_coflasque(c: &GLattice) {
        for h in enumerate_subgroups(c.group()).subgroups {
            assert!(group_cohomology(&h, c, 1).unwrap().is_trivial());
        }
    }

    #[test]
    fn cover_of_sign() {
        let cov = cts_cover_coflasque(&FgModule::from_lattice(&sign()), &ResolveOptions::default()).unwrap();
        assert_eq!(cov.q.rank(), 2);
        assert!(cov.q.verify_permutation_certificate());
        assert_eq!(cov.projection, IntMatrix::from_rows(&[vec![1, -1]]));
        assert_eq!(cov.c.rank(), 1);
        assert!(cov.c.is_trivial_action());
    }

    #[test]
    fn cover_of_trivial_group_modules() {
        let g = Arc::new(named::trivial());
        let free = FgModule::from_lattice(&GLattice::trivial(&g, 3));
        let cov = cts_cover_coflasque(&free, &ResolveOptions::default()).unwrap();
        assert_eq!((cov.q.rank(), cov.c.rank()), (3, 0));
        let z2 = FgModule::trivial(&g, IntMatrix::from_rows(&[vec![2]]));
        let cov = cts_cover_coflasque(&z2, &ResolveOptions::default()).unwrap();
        assert_eq!((cov.q.rank(), cov.c.rank()), (1, 1));
        assert_eq!(cov.inclusion.column(0)[0].magnitude(), &2u32.into());
    }

    #[test]
    fn cover_kernel_is_coflasque() {
        let g = Arc::new(named::symmetric3());
        let l = GLattice::new(
            g.clone(),
            vec![
                IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
                IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]),
            ],
        )
        .unwrap();
        let cov = cts_cover_coflasque(&FgModule::from_lattice(&l), &ResolveOptions::default()).unwrap();
        check_coflasque(&cov.c);
        assert_eq!(cov.q.rank(), cov.c.rank() + 2);
    }

    #[test]
    fn embedding_of_sign() {
        let e = cts_embed_coflasque(&sign(), &ResolveOptions::default()).unwrap();
        assert_eq!(e.c1.rank(), 2);
        assert_eq!(e.q1.rank(), 1);
        assert!(e.q1.verify_permutation_certificate());
        check_coflasque(&e.c1);
        let inc = LatticeMap::new(sign(), e.c1.clone(), e.inclusion.clone()).unwrap();
        let pr = LatticeMap::new(e.c1.clone(), e.q1.clone(), e.projection.clone()).unwrap();
        assert!(inc.is_injective() && pr.is_surjective());
        assert!((&e.projection * &e.inclusion).is_zero());
    }

    #[test]
    fn embedding_over_trivial_group() {
        let g = Arc::new(named::trivial());
        let e = cts_embed_coflasque(&GLattice::trivial(&g, 1), &ResolveOptions::default()).unwrap();
        assert_eq!((e.c1.rank(), e.q1.rank()), (1, 0));
    }
}
