//! Finitely generated abelian groups as subquotients of `Z^n`, and
//! homomorphisms between groups in Smith form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{image_basis, kernel_basis, Solver};
use super::matrix::IntMatrix;
use super::snf::{smith_normal_form_with, SnfOptions};
use crate::error::{Error, Result};

/// `span(basis) / span(relations)` inside `Z^n`.
///
/// The columns of `basis` must be linearly independent and every relation must
/// lie in their span. The quotient is put in Smith form; coordinates of an
/// element are read off in that basis and reduced modulo the factors.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    basis: IntMatrix,
    solver: Solver,
    u: IntMatrix,
    diag: Vec<BigInt>,
    keep: Vec<usize>,
    generators: Vec<Vec<BigInt>>,
}

impl Subquotient {
    pub fn new(basis: IntMatrix, relations: &IntMatrix) -> Result<Self> {
        let ambient = basis.rows();
        let k = basis.cols();
        assert_eq!(relations.rows(), ambient, "relations live in a different ambient lattice");
        let solver = Solver::new(&basis);
        if !solver.has_full_column_rank() {
            return Err(Error::Precondition("subquotient basis is not independent".into()));
        }
        let rel_coords = solver.solve(relations).ok_or_else(|| {
            Error::Precondition("relations do not lie in the span of the basis".into())
        })?;
        let s = smith_normal_form_with(&rel_coords, SnfOptions::ALL);
        let r = s.rank();
        let mut diag = vec![BigInt::zero(); k];
        for (i, d) in diag.iter_mut().enumerate().take(r) {
            *d = s.d[(i, i)].clone();
        }
        let keep: Vec<usize> = (0..k).filter(|&i| !diag[i].is_one()).collect();
        let ui = s.u_inv().expect("requested");
        let gens_matrix = &basis * ui;
        let generators = keep.iter().map(|&i| gens_matrix.column(i)).collect();
        Ok(Subquotient {
            ambient,
            basis,
            solver,
            u: s.u,
            diag,
            keep,
            generators,
        })
    }

    /// Quotient `Z^n / span(relations)`.
    pub fn cokernel_of(relations: &IntMatrix) -> Self {
        Self::new(IntMatrix::identity(relations.rows()), relations)
            .expect("identity basis spans everything")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Invariant factors, units dropped, `0` for each free summand.
    pub fn factors(&self) -> Vec<BigInt> {
        self.keep.iter().map(|&i| self.diag[i].clone()).collect()
    }

    pub fn group(&self) -> AbGroup {
        AbGroup::new(self.factors())
    }

    /// Ambient representatives of the Smith generators, one per factor.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.solver.solve_vec(x).is_some()
    }

    /// Reduced coordinates of an element of the subgroup, `None` if `x` is
    /// outside the span of the basis.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.solver.solve_vec(x)?;
        let c = self.u.mul_vec(&y);
        Some(
            self.keep
                .iter()
                .map(|&i| reduce_mod(&c[i], &self.diag[i]))
                .collect(),
        )
    }

    /// Ambient vector for a coordinate vector.
    pub fn element(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.generators.len());
        let mut out = vec![BigInt::zero(); self.ambient];
        for (g, c) in self.generators.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(g) {
                *o += c * x;
            }
        }
        out
    }
}

pub(crate) fn reduce_mod(x: &BigInt, d: &BigInt) -> BigInt {
    if d.is_zero() {
        x.clone()
    } else {
        x.mod_floor(d)
    }
}

/// `Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_i != 1`; `d_i = 0` is a free summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbGroup {
    factors: Vec<BigInt>,
}

impl AbGroup {
    pub fn new(factors: Vec<BigInt>) -> Self {
        debug_assert!(factors.iter().all(|d| !d.is_one() && !d.is_negative()));
        AbGroup { factors }
    }

    pub fn trivial() -> Self {
        AbGroup { factors: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        AbGroup {
            factors: vec![BigInt::zero(); rank],
        }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.is_finite() {
            Some(self.factors.iter().fold(BigInt::one(), |a, d| a * d))
        } else {
            None
        }
    }

    /// Factors in canonical divisibility form (units dropped).
    pub fn canonical_factors(&self) -> Vec<BigInt> {
        let diag = IntMatrix::diagonal(&self.factors);
        let s = smith_normal_form_with(
            &diag,
            SnfOptions {
                u: false,
                v: false,
                u_inv: false,
                v_inv: false,
            },
        );
        s.diagonal().into_iter().filter(|d| !d.is_one()).collect()
    }

    pub fn is_isomorphic(&self, other: &AbGroup) -> bool {
        self.canonical_factors() == other.canonical_factors()
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .zip(&self.factors)
            .map(|(x, d)| reduce_mod(x, d))
            .collect()
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// All elements of a finite group, in lexicographic order of coordinates.
    /// `None` if the group is infinite or larger than `limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?.to_usize()?;
        if order > limit {
            return None;
        }
        let dims: Vec<usize> = self.factors.iter().map(|d| d.to_usize().unwrap()).collect();
        let mut out = Vec::with_capacity(order);
        let mut cur = vec![0usize; dims.len()];
        loop {
            out.push(cur.iter().map(|&x| BigInt::from(x)).collect());
            let mut i = dims.len();
            loop {
                if i == 0 {
                    return Some(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < dims[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Relation matrix `diag(factors)`.
    pub fn relations(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.factors)
    }

    pub fn direct_sum(groups: &[&AbGroup]) -> AbGroup {
        AbGroup {
            factors: groups.iter().flat_map(|g| g.factors.iter().cloned()).collect(),
        }
    }
}

impl std::fmt::Display for AbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|d| {
                if d.is_zero() {
                    "Z".to_string()
                } else {
                    format!("Z/{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homomorphism of abelian groups in generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    pub source: AbGroup,
    pub target: AbGroup,
    /// `target.ngens() x source.ngens()`, entries reduced modulo the target factors.
    pub matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: AbGroup, target: AbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (target.ngens(), source.ngens()) {
            return Err(Error::Mismatch(format!(
                "homomorphism matrix has shape {:?}, expected {:?}",
                matrix.shape(),
                (target.ngens(), source.ngens())
            )));
        }
        let mut m = matrix;
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let r = reduce_mod(&m[(i, j)], &target.factors[i]);
                m[(i, j)] = r;
            }
        }
        for (j, d) in source.factors.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let col: Vec<BigInt> = m.column(j).iter().map(|x| x * d).collect();
            if !target.is_zero_element(&col) {
                return Err(Error::WellDefined(format!(
                    "generator {j} of order {d} maps to an element of different order"
                )));
            }
        }
        Ok(AbHom {
            source,
            target,
            matrix: m,
        })
    }

    pub fn zero(source: AbGroup, target: AbGroup) -> Self {
        let m = IntMatrix::zeros(target.ngens(), source.ngens());
        AbHom {
            source,
            target,
            matrix: m,
        }
    }

    pub fn identity(g: AbGroup) -> Self {
        let n = g.ngens();
        AbHom {
            source: g.clone(),
            target: g,
            matrix: IntMatrix::identity(n),
        }
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    pub fn compose(&self, first: &AbHom) -> Result<AbHom> {
        if first.target != self.source {
            return Err(Error::Mismatch("composition of incompatible maps".into()));
        }
        AbHom::new(first.source.clone(), self.target.clone(), &self.matrix * &first.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Lattice `{x in Z^s : f(x) = 0}` as a basis of columns; contains the
    /// source relations.
    pub fn kernel_lattice(&self) -> IntMatrix {
        let s = self.source.ngens();
        let w = self.matrix.hstack(&self.target.relations());
        let k = kernel_basis(&w);
        let proj = k.select_rows(&(0..s).collect::<Vec<_>>());
        let with_rel = proj.hstack(&self.source.relations());
        image_basis(&with_rel)
    }

    /// Lattice `f(Z^s) + relations` inside `Z^t`.
    pub fn image_lattice(&self) -> IntMatrix {
        image_basis(&self.matrix.hstack(&self.target.relations()))
    }

    /// Kernel as a subquotient of the source coordinates.
    pub fn kernel(&self) -> Subquotient {
        Subquotient::new(self.kernel_lattice(), &self.source.relations())
            .expect("source relations lie in the kernel lattice")
    }

    pub fn image(&self) -> Subquotient {
        Subquotient::new(self.image_lattice(), &self.target.relations())
            .expect("target relations lie in the image lattice")
    }

    pub fn cokernel(&self) -> Subquotient {
        Subquotient::cokernel_of(&self.matrix.hstack(&self.target.relations()))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Compares `ker(g)` with `im(f)` for `f: A -> B`, `g: B -> C`.
#[derive(Clone, Debug)]
pub struct ExactnessCheck {
    pub composition_zero: bool,
    pub exact: bool,
    /// Homology `ker g / im f`.
    pub homology: AbGroup,
    /// An element of `ker g` outside `im f`, in `B` coordinates.
    pub witness: Option<Vec<BigInt>>,
}

pub fn check_exactness(f: &AbHom, g: &AbHom) -> Result<ExactnessCheck> {
    if f.target != g.source {
        return Err(Error::Mismatch("exactness check on non-composable maps".into()));
    }
    let composition_zero = g.compose(f)?.is_zero();
    if !composition_zero {
        return Ok(ExactnessCheck {
            composition_zero,
            exact: false,
            homology: AbGroup::trivial(),
            witness: None,
        });
    }
    let ker = g.kernel_lattice();
    let im = f.image_lattice();
    let sq = Subquotient::new(ker, &im)?;
    let homology = sq.group();
    let witness = sq.generators().first().map(|v| f.target.reduce(v));
    Ok(ExactnessCheck {
        composition_zero,
        exact: homology.is_trivial(),
        homology,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[i64]) -> AbGroup {
        AbGroup::new(f.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn multiplication_maps_on_z4() {
        let z4 = g(&[4]);
        let two = AbHom::new(z4.clone(), z4.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert!(!two.is_isomorphism());
        assert_eq!(two.kernel().group(), g(&[2]));
        assert_eq!(two.cokernel().group(), g(&[2]));
        let three = AbHom::new(z4.clone(), z4, IntMatrix::from_rows(&[vec![3]])).unwrap();
        assert!(three.is_isomorphism());
    }

    #[test]
    fn ill_defined_map_rejected() {
        let err = AbHom::new(g(&[2]), g(&[3]), IntMatrix::from_rows(&[vec![1]]));
        assert!(matches!(err, Err(Error::WellDefined(_))));
    }

    #[test]
    fn subquotient_coordinates() {
        // span(e1, e2) / span(2 e1, 3 e2) = Z/6
        let sq = Subquotient::new(
            IntMatrix::identity(2),
            &IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]),
        )
        .unwrap();
        assert_eq!(sq.group(), g(&[6]));
        let c = sq.coords(&[BigInt::from(2), BigInt::from(3)]).unwrap();
        assert_eq!(c, vec![BigInt::zero()]);
        assert!(sq.coords(&[BigInt::from(1), BigInt::from(0)]).unwrap()[0] != BigInt::zero());
    }

    #[test]
    fn exactness_of_z_times_two() {
        // Z --2--> Z --> Z/2 is exact in the middle
        let z = g(&[0]);
        let z2 = g(&[2]);
        let f = AbHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let p = AbHom::new(z, z2, IntMatrix::from_rows(&[vec![1]])).unwrap();
        let e = check_exactness(&f, &p).unwrap();
        assert!(e.composition_zero && e.exact);
    }

    #[test]
    fn finite_enumeration() {
        let els = g(&[2, 3]).elements(100).unwrap();
        assert_eq!(els.len(), 6);
        assert!(g(&[0]).elements(100).is_none());
    }
}
