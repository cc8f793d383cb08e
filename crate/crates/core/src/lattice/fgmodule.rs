//! Finitely generated modules `Z^n / span(R)` with a group action, the one
//! place where torsion is allowed.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::abelian::{AbGroup, AbHom, Subquotient};
use super::glattice::{extend_action, GLattice};
use super::linalg::{image_basis, kernel_basis, Solver};
use super::matrix::IntMatrix;
use super::snf::{smith_normal_form_with, SnfOptions};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};

/// `Z^n / span(relations)`; the action is given on `Z^n` and must preserve
/// the relation span.
#[derive(Clone)]
pub struct FgModule {
    group: Arc<FiniteGroup>,
    ngens: usize,
    relations: IntMatrix,
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
}

impl PartialEq for FgModule {
    fn eq(&self, other: &Self) -> bool {
        self.ngens == other.ngens
            && self.relations == other.relations
            && self.generators == other.generators
            && *self.group == *other.group
    }
}

impl Eq for FgModule {}

impl fmt::Debug for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FgModule(Z^{} / {:?}, generators {:?})",
            self.ngens, self.relations, self.generators
        )
    }
}

fn in_span(solver: &Solver, m: &IntMatrix) -> bool {
    solver.solve(m).is_some()
}

impl FgModule {
    pub fn new(group: Arc<FiniteGroup>, relations: IntMatrix, generators: Vec<IntMatrix>) -> Result<Self> {
        let n = relations.rows();
        let solver = Solver::new(&relations);
        for m in &generators {
            if m.shape() != (n, n) {
                return Err(Error::InvalidLattice(format!("action matrices must be {n}x{n}")));
            }
            if !in_span(&solver, &(m * &relations)) {
                return Err(Error::WellDefined(
                    "action does not preserve the relation span".into(),
                ));
            }
        }
        let elements = extend_action(&group, n, &generators, |a, b| in_span(&solver, &a.sub(b)))?;
        Ok(FgModule {
            group,
            ngens: n,
            relations,
            generators,
            elements,
        })
    }

    pub fn from_lattice(l: &GLattice) -> Self {
        FgModule {
            group: l.group().clone(),
            ngens: l.rank(),
            relations: IntMatrix::zeros(l.rank(), 0),
            generators: l.generator_matrices().to_vec(),
            elements: l.group().elements().map(|g| l.action(g).clone()).collect(),
        }
    }

    /// Module with trivial action presented by `relations`.
    pub fn trivial(group: &Arc<FiniteGroup>, relations: IntMatrix) -> Self {
        let n = relations.rows();
        let gens = vec![IntMatrix::identity(n); group.generators().len()];
        FgModule::new(group.clone(), relations, gens).expect("trivial action is well defined")
    }

    /// `target / image(f)`
    pub fn cokernel(f: &super::glattice::LatticeMap) -> Self {
        let t = &f.target;
        FgModule {
            group: t.group().clone(),
            ngens: t.rank(),
            relations: f.matrix.clone(),
            generators: t.generator_matrices().to_vec(),
            elements: t.group().elements().map(|g| t.action(g).clone()).collect(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn generator_matrices(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.elements[g]
    }

    /// Underlying abelian group in Smith form.
    pub fn abelian_group(&self) -> Subquotient {
        Subquotient::cokernel_of(&self.relations)
    }

    pub fn structure(&self) -> AbGroup {
        self.abelian_group().group()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.structure().factors().iter().all(Zero::is_zero)
    }

    /// For a torsion-free module: the lattice `Z^n / span(R)`, the projection
    /// `Z^n -> Z^r` and a section `Z^r -> Z^n`.
    pub fn to_lattice(&self) -> Result<TorsionFreeQuotient> {
        let s = smith_normal_form_with(&self.relations, SnfOptions::ALL);
        let k = s.rank();
        if !s.factors().iter().all(One::is_one) {
            return Err(Error::Precondition("module has torsion".into()));
        }
        let n = self.ngens;
        let rest: Vec<usize> = (k..n).collect();
        let projection = s.u.select_rows(&rest);
        let section = s.u_inv().expect("requested").select_columns(&rest);
        let gens = self
            .generators
            .iter()
            .map(|m| &(&projection * m) * &section)
            .collect();
        let lattice = GLattice::with_rank(self.group.clone(), n - k, gens)?;
        Ok(TorsionFreeQuotient {
            lattice,
            projection,
            section,
        })
    }

    /// `M^H` as a subquotient of `Z^n`: classes fixed by `H`.
    pub fn fixed_points(&self, h: &Subgroup) -> Result<Subquotient> {
        if **h.parent() != *self.group {
            return Err(Error::Membership("subgroup of a different group".into()));
        }
        let n = self.ngens;
        let k = self.relations.cols();
        let gens = h.generators();
        // (m(s) - 1) x + R y_s = 0 for every generator s of H
        let mut w = IntMatrix::zeros(gens.len() * n, n + gens.len() * k);
        for (i, &s) in gens.iter().enumerate() {
            w.set_block(i * n, 0, &self.elements[s].sub(&IntMatrix::identity(n)));
            w.set_block(i * n, n + i * k, &self.relations);
        }
        let ker = kernel_basis(&w);
        let proj = if w.cols() == 0 {
            IntMatrix::zeros(n, 0)
        } else {
            ker.select_rows(&(0..n).collect::<Vec<_>>())
        };
        let basis = image_basis(&proj.hstack(&self.relations));
        Subquotient::new(basis, &self.relations)
    }
}

/// Result of [`FgModule::to_lattice`]; `projection * section = 1`.
#[derive(Clone, Debug)]
pub struct TorsionFreeQuotient {
    pub lattice: GLattice,
    pub projection: IntMatrix,
    pub section: IntMatrix,
}

/// Equivariant homomorphism of presented modules, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgMap {
    pub source: FgModule,
    pub target: FgModule,
    pub matrix: IntMatrix,
}

impl FgMap {
    pub fn new(source: FgModule, target: FgModule, matrix: IntMatrix) -> Result<Self> {
        if *source.group != *target.group {
            return Err(Error::Mismatch("map between modules over different groups".into()));
        }
        if matrix.shape() != (target.ngens, source.ngens) {
            return Err(Error::Mismatch(format!(
                "map matrix has shape {:?}, expected {:?}",
                matrix.shape(),
                (target.ngens, source.ngens)
            )));
        }
        let solver = Solver::new(&target.relations);
        if !in_span(&solver, &(&matrix * &source.relations)) {
            return Err(Error::WellDefined(
                "map does not send relations to relations".into(),
            ));
        }
        for (ms, mt) in source.generators.iter().zip(&target.generators) {
            let diff = (mt * &matrix).sub(&(&matrix * ms));
            if !in_span(&solver, &diff) {
                return Err(Error::WellDefined("map is not equivariant".into()));
            }
        }
        Ok(FgMap {
            source,
            target,
            matrix,
        })
    }

    /// The map on underlying abelian groups, in Smith coordinates.
    pub fn to_ab_hom(&self) -> Result<AbHom> {
        let s = self.source.abelian_group();
        let t = self.target.abelian_group();
        let cols: Vec<Vec<BigInt>> = s
            .generators()
            .iter()
            .map(|g| {
                t.coords(&self.matrix.mul_vec(g))
                    .expect("cokernel coordinates always exist")
            })
            .collect();
        let m = IntMatrix::from_columns(t.group().ngens(), &cols);
        AbHom::new(s.group(), t.group(), m)
    }
}

/// Whether a module map is bijective, decided by Smith forms of its kernel
/// and cokernel.
pub fn fg_iso_check(phi: &FgMap) -> Result<bool> {
    Ok(phi.to_ab_hom()?.is_isomorphism())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named;

    fn z1() -> Arc<FiniteGroup> {
        Arc::new(named::trivial())
    }

    fn cyclic_module(n: i64) -> FgModule {
        FgModule::trivial(&z1(), IntMatrix::from_rows(&[vec![n]]))
    }

    #[test]
    fn iso_checks() {
        let z6 = cyclic_module(6);
        let id = FgMap::new(z6.clone(), z6, IntMatrix::identity(1)).unwrap();
        assert!(fg_iso_check(&id).unwrap());
        let z4 = cyclic_module(4);
        let two = FgMap::new(z4.clone(), z4.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert!(!fg_iso_check(&two).unwrap());
        let three = FgMap::new(z4.clone(), z4, IntMatrix::from_rows(&[vec![3]])).unwrap();
        assert!(fg_iso_check(&three).unwrap());
    }

    #[test]
    fn ill_defined_map_rejected() {
        let z2 = cyclic_module(2);
        let z3 = cyclic_module(3);
        let err = FgMap::new(z2, z3, IntMatrix::from_rows(&[vec![1]]));
        assert!(matches!(err, Err(Error::WellDefined(_))));
    }

    #[test]
    fn torsion_free_quotient() {
        // Z^2 / (1, 1) is Z
        let m = FgModule::trivial(&z1(), IntMatrix::from_rows(&[vec![1], vec![1]]));
        assert!(m.is_torsion_free());
        let q = m.to_lattice().unwrap();
        assert_eq!(q.lattice.rank(), 1);
        assert!((&q.projection * &q.section).is_identity());
        assert!((&q.projection * m.relations()).is_zero());
        assert!(cyclic_module(2).to_lattice().is_err());
        assert!(!cyclic_module(2).is_torsion_free());
    }

    #[test]
    fn fixed_points_of_torsion_module() {
        // Z/4 with the generator of Z/2 acting by -1: fixed points are {0, 2}
        let g = Arc::new(named::cyclic(2));
        let m = FgModule::new(g.clone(), IntMatrix::from_rows(&[vec![4]]), vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap();
        let f = m.fixed_points(&Subgroup::whole(&g)).unwrap();
        assert_eq!(f.group(), AbGroup::new(vec![BigInt::from(2)]));
    }
}
