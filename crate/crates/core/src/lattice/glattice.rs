//! Lattices with a group action by unimodular matrices, and equivariant maps.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::fgmodule::{FgMap, FgModule};
use super::linalg::{image_basis, kernel_basis, rank, Solver};
use super::matrix::IntMatrix;
use super::snf::invariant_factors;
use crate::error::{Error, Result};
use crate::groups::{coset_action, FiniteGroup, Subgroup};

/// Free abelian group of finite rank with a left action of a finite group,
/// acting on column vectors.
#[derive(Clone)]
pub struct GLattice {
    group: Arc<FiniteGroup>,
    rank: usize,
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
    permutation: Option<Vec<Vec<usize>>>,
}

impl PartialEq for GLattice {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.generators == other.generators
            && *self.group == *other.group
    }
}

impl Eq for GLattice {}

impl fmt::Debug for GLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GLattice(rank {}, generators {:?})", self.rank, self.generators)
    }
}

/// Extends generator matrices to every element along the Cayley graph,
/// checking `m(s * x) = m(s) m(x)` on every edge. The check on all edges makes
/// the extension a homomorphism. `same` decides equality of two candidates.
pub(crate) fn extend_action(
    group: &FiniteGroup,
    dim: usize,
    generators: &[IntMatrix],
    same: impl Fn(&IntMatrix, &IntMatrix) -> bool,
) -> Result<Vec<IntMatrix>> {
    let gens = group.generators();
    if generators.len() != gens.len() {
        return Err(Error::InvalidLattice(format!(
            "expected {} generator matrices, got {}",
            gens.len(),
            generators.len()
        )));
    }
    if generators.iter().any(|m| m.shape() != (dim, dim)) {
        return Err(Error::InvalidLattice(format!("action matrices must be {dim}x{dim}")));
    }
    let n = group.order();
    let mut elems: Vec<Option<IntMatrix>> = vec![None; n];
    elems[group.identity()] = Some(IntMatrix::identity(dim));
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        let mx = elems[x].clone().expect("queued elements are assigned");
        for (&s, ms) in gens.iter().zip(generators) {
            let y = group.mul(s, x);
            let my = ms * &mx;
            match &elems[y] {
                Some(prev) => {
                    if !same(prev, &my) {
                        return Err(Error::InvalidLattice(
                            "action matrices do not satisfy the group relations".into(),
                        ));
                    }
                }
                None => {
                    elems[y] = Some(my);
                    queue.push_back(y);
                }
            }
        }
    }
    elems
        .into_iter()
        .map(|m| m.ok_or_else(|| Error::InvalidGroup("generators do not generate".into())))
        .collect()
}

impl GLattice {
    /// Lattice with the given action of each group generator (in the order of
    /// `group.generators()`).
    pub fn new(group: Arc<FiniteGroup>, generators: Vec<IntMatrix>) -> Result<Self> {
        let rank = match generators.first() {
            Some(m) => m.rows(),
            None => {
                return Err(Error::InvalidLattice(
                    "rank cannot be inferred without generators; use with_rank".into(),
                ))
            }
        };
        Self::with_rank(group, rank, generators)
    }

    pub fn with_rank(group: Arc<FiniteGroup>, rank: usize, generators: Vec<IntMatrix>) -> Result<Self> {
        for m in &generators {
            if m.shape() == (rank, rank) && !m.is_unimodular() {
                return Err(Error::InvalidLattice(format!("action matrix {m} is not unimodular")));
            }
        }
        let elements = extend_action(&group, rank, &generators, |a, b| a == b)?;
        Ok(GLattice {
            group,
            rank,
            generators,
            elements,
            permutation: None,
        })
    }

    pub fn trivial(group: &Arc<FiniteGroup>, rank: usize) -> Self {
        let gens = vec![IntMatrix::identity(rank); group.generators().len()];
        Self::with_rank(group.clone(), rank, gens).expect("identity action is valid")
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Self::trivial(group, 0)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_matrices(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.elements[g]
    }

    pub fn is_trivial_action(&self) -> bool {
        self.generators.iter().all(IntMatrix::is_identity)
    }

    /// Subgroups whose coset lattices make up this lattice, when it was built
    /// by [`make_permutation_lattice`].
    pub fn permutation_certificate(&self) -> Option<&[Vec<usize>]> {
        self.permutation.as_deref()
    }

    pub(crate) fn with_permutation_certificate(mut self, subgroups: Vec<Vec<usize>>) -> Self {
        self.permutation = Some(subgroups);
        self
    }

    /// Rebuilds the permutation lattice from the stored subgroups and checks
    /// that it matches this lattice entrywise.
    pub fn verify_permutation_certificate(&self) -> bool {
        let Some(cert) = &self.permutation else {
            return false;
        };
        let subs: Result<Vec<Subgroup>> = cert
            .iter()
            .map(|m| Subgroup::from_members(&self.group, m))
            .collect();
        match subs.and_then(|s| make_permutation_lattice(&self.group, &s)) {
            Ok(p) => p == *self,
            Err(_) => false,
        }
    }

    /// `Hom(L, Z)` with the contragredient action `g -> m(g^-1)^T`.
    pub fn dual(&self) -> GLattice {
        let gens = self
            .group
            .generators()
            .iter()
            .map(|&s| self.elements[self.group.inv(s)].transpose())
            .collect();
        let elements = self
            .group
            .elements()
            .map(|g| self.elements[self.group.inv(g)].transpose())
            .collect();
        GLattice {
            group: self.group.clone(),
            rank: self.rank,
            generators: gens,
            elements,
            permutation: self.permutation.clone(),
        }
    }

    pub fn direct_sum(parts: &[&GLattice]) -> Result<GLattice> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidLattice("direct sum of no lattices".into()))?;
        let group = first.group.clone();
        if parts.iter().any(|p| *p.group != *group) {
            return Err(Error::Mismatch("direct sum over different groups".into()));
        }
        let rank = parts.iter().map(|p| p.rank).sum();
        let gens = (0..group.generators().len())
            .map(|i| {
                let blocks: Vec<&IntMatrix> = parts.iter().map(|p| &p.generators[i]).collect();
                IntMatrix::block_diag(&blocks)
            })
            .collect();
        let elements = group
            .elements()
            .map(|g| {
                let blocks: Vec<&IntMatrix> = parts.iter().map(|p| &p.elements[g]).collect();
                IntMatrix::block_diag(&blocks)
            })
            .collect();
        let permutation = parts
            .iter()
            .map(|p| p.permutation.clone())
            .collect::<Option<Vec<_>>>()
            .map(|v| v.concat());
        Ok(GLattice {
            group,
            rank,
            generators: gens,
            elements,
            permutation,
        })
    }

    fn check_subgroup(&self, h: &Subgroup) -> Result<()> {
        if Arc::ptr_eq(h.parent(), &self.group) || **h.parent() == *self.group {
            Ok(())
        } else {
            Err(Error::Membership("subgroup of a different group".into()))
        }
    }

    /// Basis (columns) of the saturated sublattice `L^H`.
    pub fn fixed_points(&self, h: &Subgroup) -> Result<IntMatrix> {
        self.check_subgroup(h)?;
        let mut stack = IntMatrix::zeros(0, self.rank);
        for &s in h.generators() {
            let d = self.elements[s].sub(&IntMatrix::identity(self.rank));
            stack = stack.vstack(&d);
        }
        Ok(kernel_basis(&stack))
    }

    /// `sum_{h in H} m(h)`
    pub fn norm(&self, h: &Subgroup) -> Result<IntMatrix> {
        self.check_subgroup(h)?;
        let mut n = IntMatrix::zeros(self.rank, self.rank);
        for &x in h.members() {
            n = n.add(&self.elements[x]);
        }
        Ok(n)
    }

    /// The same lattice viewed as a lattice over `H` (as its own group).
    pub fn restrict(&self, h: &Subgroup) -> Result<GLattice> {
        self.check_subgroup(h)?;
        let (sub, _) = h.to_group();
        let gens = h.generators().iter().map(|&s| self.elements[s].clone()).collect();
        GLattice::with_rank(Arc::new(sub), self.rank, gens)
    }

    /// Invariant sublattice spanned by the columns of `basis` (independent),
    /// in the coordinates of that basis.
    pub fn sublattice(&self, basis: &IntMatrix) -> Result<GLattice> {
        if basis.rows() != self.rank {
            return Err(Error::Mismatch("sublattice basis has the wrong length".into()));
        }
        let solver = Solver::new(basis);
        if !solver.has_full_column_rank() {
            return Err(Error::Precondition("sublattice basis is not independent".into()));
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for m in &self.generators {
            let x = solver.solve(&(m * basis)).ok_or_else(|| {
                Error::Precondition("sublattice is not stable under the action".into())
            })?;
            gens.push(x);
        }
        GLattice::with_rank(self.group.clone(), basis.cols(), gens)
    }

    /// Same lattice in a new basis given by the columns of a unimodular `p`:
    /// the action becomes `p^-1 m(g) p`.
    pub fn change_basis(&self, p: &IntMatrix) -> Result<GLattice> {
        if !p.is_unimodular() {
            return Err(Error::Precondition("change of basis must be unimodular".into()));
        }
        self.sublattice(p)
    }
}

/// `Z[G/H_1] ⊕ ... ⊕ Z[G/H_k]` with basis the cosets, in the order of
/// [`coset_action`].
pub fn make_permutation_lattice(g: &Arc<FiniteGroup>, subgroups: &[Subgroup]) -> Result<GLattice> {
    let spaces = subgroups
        .iter()
        .map(|h| coset_action(g, h))
        .collect::<Result<Vec<_>>>()?;
    let rank: usize = spaces.iter().map(|c| c.len()).sum();
    let gens = g
        .generators()
        .iter()
        .map(|&s| {
            let mut m = IntMatrix::zeros(rank, rank);
            let mut off = 0;
            for cs in &spaces {
                for c in 0..cs.len() {
                    m[(off + cs.act(s, c), off + c)] = BigInt::one();
                }
                off += cs.len();
            }
            m
        })
        .collect();
    let l = GLattice::with_rank(g.clone(), rank, gens)?;
    Ok(l.with_permutation_certificate(subgroups.iter().map(|h| h.members().to_vec()).collect()))
}

/// `Z[Γ] ⊗_{Z[H]} L` for a lattice `L` over the group of `h`. Block `(gc, c)` of
/// the action of `g` is the action on `L` of the `H`-element
/// `rep(gc)^-1 g rep(c)`.
pub fn induce(l: &GLattice, h: &Subgroup) -> Result<GLattice> {
    let (sub, emb) = h.to_group();
    if **l.group() != sub {
        return Err(Error::Membership(
            "lattice is not defined over the given subgroup".into(),
        ));
    }
    let gamma = h.parent();
    let mut pos = vec![usize::MAX; gamma.order()];
    for (i, &m) in emb.iter().enumerate() {
        pos[m] = i;
    }
    let cs = coset_action(gamma, h)?;
    let r = l.rank();
    let n = cs.len() * r;
    let gens = gamma
        .generators()
        .iter()
        .map(|&s| {
            let mut m = IntMatrix::zeros(n, n);
            for c in 0..cs.len() {
                let t = cs.act(s, c);
                let hh = pos[cs.cocycle(s, c)];
                m.set_block(t * r, c * r, l.action(hh));
            }
            m
        })
        .collect();
    GLattice::with_rank(gamma.clone(), n, gens)
}

/// Equivariant homomorphism of lattices; `matrix` is `target.rank x source.rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub source: GLattice,
    pub target: GLattice,
    pub matrix: IntMatrix,
}

impl LatticeMap {
    pub fn new(source: GLattice, target: GLattice, matrix: IntMatrix) -> Result<Self> {
        if *source.group != *target.group {
            return Err(Error::Mismatch("map between lattices over different groups".into()));
        }
        if matrix.shape() != (target.rank, source.rank) {
            return Err(Error::Mismatch(format!(
                "map matrix has shape {:?}, expected {:?}",
                matrix.shape(),
                (target.rank, source.rank)
            )));
        }
        for (ms, mt) in source.generators.iter().zip(&target.generators) {
            if (mt * &matrix) != (&matrix * ms) {
                return Err(Error::WellDefined("map is not equivariant".into()));
            }
        }
        Ok(LatticeMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(l: &GLattice) -> Self {
        LatticeMap {
            source: l.clone(),
            target: l.clone(),
            matrix: IntMatrix::identity(l.rank),
        }
    }

    pub fn zero(source: &GLattice, target: &GLattice) -> Self {
        LatticeMap {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.rank, source.rank),
        }
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &LatticeMap) -> Result<LatticeMap> {
        if first.target != self.source {
            return Err(Error::Mismatch("composition of incompatible lattice maps".into()));
        }
        Ok(LatticeMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &first.matrix,
        })
    }

    pub fn dual(&self) -> LatticeMap {
        LatticeMap {
            source: self.target.dual(),
            target: self.source.dual(),
            matrix: self.matrix.transpose(),
        }
    }

    pub fn is_injective(&self) -> bool {
        rank(&self.matrix) == self.source.rank
    }

    pub fn is_surjective(&self) -> bool {
        let f = invariant_factors(&self.matrix);
        f.len() == self.target.rank && f.iter().all(One::is_one)
    }
}

/// Kernel, image and cokernel of an equivariant map.
#[derive(Clone, Debug)]
pub struct MapDecomposition {
    pub kernel: GLattice,
    /// `kernel -> source`
    pub kernel_inclusion: LatticeMap,
    pub image: GLattice,
    /// `image -> target`
    pub image_inclusion: LatticeMap,
    pub cokernel: FgModule,
    /// `target -> cokernel`
    pub projection: FgMap,
}

pub fn map_decompose(f: &LatticeMap) -> Result<MapDecomposition> {
    let kb = kernel_basis(&f.matrix);
    let kernel = f.source.sublattice(&kb)?;
    let kernel_inclusion = LatticeMap::new(kernel.clone(), f.source.clone(), kb)?;
    let ib = image_basis(&f.matrix);
    let image = f.target.sublattice(&ib)?;
    let image_inclusion = LatticeMap::new(image.clone(), f.target.clone(), ib)?;
    let cokernel = FgModule::cokernel(f);
    let projection = FgMap::new(
        FgModule::from_lattice(&f.target),
        cokernel.clone(),
        IntMatrix::identity(f.target.rank),
    )?;
    Ok(MapDecomposition {
        kernel,
        kernel_inclusion,
        image,
        image_inclusion,
        cokernel,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{enumerate_subgroups, named};

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(named::cyclic(2))
    }

    fn sign() -> GLattice {
        GLattice::new(z2(), vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap()
    }

    #[test]
    fn relations_are_enforced() {
        // the generator of Z/2 cannot act by a matrix of order 3
        let m = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]);
        assert!(GLattice::new(z2(), vec![m]).is_err());
        assert!(GLattice::new(z2(), vec![IntMatrix::from_rows(&[vec![2]])]).is_err());
    }

    #[test]
    fn permutation_lattices() {
        let g = z2();
        let reg = make_permutation_lattice(&g, &[Subgroup::trivial(&g)]).unwrap();
        assert_eq!(reg.rank(), 2);
        assert_eq!(reg.generator_matrices()[0], IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert!(reg.verify_permutation_certificate());
        let triv = make_permutation_lattice(&g, &[Subgroup::whole(&g)]).unwrap();
        assert_eq!(triv, GLattice::trivial(&g, 1));
        assert_eq!(reg.dual(), reg);
    }

    #[test]
    fn dual_is_involution() {
        assert_eq!(sign().dual(), sign());
        let s3 = Arc::new(named::symmetric3());
        let l = GLattice::new(
            s3.clone(),
            vec![
                IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
                IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]),
            ],
        )
        .unwrap();
        assert_eq!(l.dual().dual(), l);
        assert_ne!(l.dual(), l);
    }

    #[test]
    fn fixed_points_examples() {
        let g = z2();
        let whole = Subgroup::whole(&g);
        assert_eq!(sign().fixed_points(&whole).unwrap().cols(), 0);
        assert_eq!(sign().fixed_points(&Subgroup::trivial(&g)).unwrap().cols(), 1);
        let reg = make_permutation_lattice(&g, &[Subgroup::trivial(&g)]).unwrap();
        let f = reg.fixed_points(&whole).unwrap();
        assert_eq!(f.cols(), 1);
        assert_eq!(f.column(0)[0], f.column(0)[1]);
    }

    #[test]
    fn induction_of_trivial_is_coset_lattice() {
        let g = Arc::new(named::symmetric3());
        for h in enumerate_subgroups(&g).subgroups {
            let (sub, _) = h.to_group();
            let z = GLattice::trivial(&Arc::new(sub), 1);
            let ind = induce(&z, &h).unwrap();
            let perm = make_permutation_lattice(&g, std::slice::from_ref(&h)).unwrap();
            assert_eq!(ind, perm);
        }
    }

    #[test]
    fn augmentation_to_sign() {
        let g = z2();
        let reg = make_permutation_lattice(&g, &[Subgroup::trivial(&g)]).unwrap();
        let f = LatticeMap::new(reg, sign(), IntMatrix::from_rows(&[vec![1, -1]])).unwrap();
        let d = map_decompose(&f).unwrap();
        assert_eq!(d.kernel.rank(), 1);
        assert!(d.kernel.is_trivial_action());
        assert!(d.cokernel.structure().is_trivial());
        assert!(f.is_surjective() && !f.is_injective());
    }

    #[test]
    fn non_equivariant_map_rejected() {
        let g = z2();
        let err = LatticeMap::new(sign(), GLattice::trivial(&g, 1), IntMatrix::from_rows(&[vec![1]]));
        assert!(err.is_err());
    }
}
