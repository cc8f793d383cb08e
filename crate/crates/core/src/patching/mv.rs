//! Mayer–Vietoris columns over a patching graph, Sha groups, the nine-term
//! report for two-term complexes and the Sha¹/Sha²/cokernel comparison.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::PatchingGraph;
use crate::cohomology::{group_cohomology, hypercohomology, restriction_between, CohomologyGroup};
use crate::complexes::{coflasque_resolution, TwoTermComplex};
use crate::error::{Error, Result};
use crate::groups::Subgroup;
use crate::lattice::linalg::{image_basis, kernel_basis};
use crate::lattice::{check_exactness, AbGroup, AbHom, FgModule, GLattice, IntMatrix, Subquotient};

#[derive(Clone, Copy, Debug)]
pub enum Coefficient<'a> {
    Lattice(&'a GLattice),
    Module(&'a FgModule),
    Complex(&'a TwoTermComplex),
}

impl Coefficient<'_> {
    fn cohomology(&self, h: &Subgroup, r: i32) -> Result<CohomologyGroup> {
        match self {
            Coefficient::Lattice(l) => group_cohomology(h, *l, r),
            Coefficient::Module(m) => group_cohomology(h, *m, r),
            Coefficient::Complex(t) => hypercohomology(h, t, r),
        }
    }

    fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        match self {
            Coefficient::Complex(_) => -1..=1,
            _ => 0..=2,
        }
    }
}

/// `H^r(Γ) -> ∏_i H^r(Γ_i) -> ∏_k H^r(Γ_k)`, the second map being
/// `(η_i) ↦ (η_{l(k)}|_k - η_{r(k)}|_k)`.
#[derive(Clone, Debug)]
pub struct MvColumns {
    pub degree: i32,
    pub global: CohomologyGroup,
    pub vertices: Vec<CohomologyGroup>,
    pub edges: Vec<CohomologyGroup>,
    /// Per vertex, `H^r(Γ) -> H^r(Γ_i)`.
    pub vertex_restrictions: Vec<AbHom>,
    pub restriction: AbHom,
    pub difference: AbHom,
}

impl MvColumns {
    pub fn vertex_product(&self) -> &AbGroup {
        &self.restriction.target
    }

    pub fn edge_product(&self) -> &AbGroup {
        &self.difference.target
    }

    /// `difference ∘ restriction = 0`, as an exact matrix identity.
    pub fn composition_zero(&self) -> bool {
        self.difference
            .compose(&self.restriction)
            .map(|c| c.is_zero())
            .unwrap_or(false)
    }
}

struct Cache<'a> {
    coef: Coefficient<'a>,
    r: i32,
    groups: HashMap<Vec<usize>, CohomologyGroup>,
}

impl Cache<'_> {
    fn get(&mut self, h: &Subgroup) -> Result<CohomologyGroup> {
        if let Some(c) = self.groups.get(h.members()) {
            return Ok(c.clone());
        }
        let c = self.coef.cohomology(h, self.r)?;
        self.groups.insert(h.members().to_vec(), c.clone());
        Ok(c)
    }
}

pub fn mv_columns(graph: &PatchingGraph, coef: Coefficient<'_>, r: i32) -> Result<MvColumns> {
    if !coef.degrees().contains(&r) {
        return Err(Error::UnsupportedDegree {
            degree: r,
            supported: match coef {
                Coefficient::Complex(_) => "-1, 0, 1",
                _ => "0, 1, 2",
            },
        });
    }
    let mut cache = Cache {
        coef,
        r,
        groups: HashMap::new(),
    };
    let global = cache.get(&Subgroup::whole(graph.gamma()))?;
    let vertices = graph.vertices().iter().map(|v| cache.get(v)).collect::<Result<Vec<_>>>()?;
    let edges = graph
        .edges()
        .iter()
        .map(|e| cache.get(&e.subgroup))
        .collect::<Result<Vec<_>>>()?;
    let vgroups: Vec<AbGroup> = vertices.iter().map(CohomologyGroup::group).collect();
    let egroups: Vec<AbGroup> = edges.iter().map(CohomologyGroup::group).collect();
    let vprod = AbGroup::direct_sum(&vgroups.iter().collect::<Vec<_>>());
    let eprod = AbGroup::direct_sum(&egroups.iter().collect::<Vec<_>>());
    let vertex_restrictions = vertices
        .iter()
        .map(|v| restriction_between(&global, v))
        .collect::<Result<Vec<_>>>()?;
    let voff: Vec<usize> = vertices
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += c.group().ngens();
            Some(o)
        })
        .collect();
    let mut res = IntMatrix::zeros(vprod.ngens(), global.group().ngens());
    for (i, h) in vertex_restrictions.iter().enumerate() {
        res.add_block(voff[i], 0, &h.matrix, 1);
    }
    let mut diff = IntMatrix::zeros(eprod.ngens(), vprod.ngens());
    let mut row = 0;
    for (k, e) in graph.edges().iter().enumerate() {
        let l = restriction_between(&vertices[e.head], &edges[k])?;
        let t = restriction_between(&vertices[e.tail], &edges[k])?;
        diff.add_block(row, voff[e.head], &l.matrix, 1);
        diff.add_block(row, voff[e.tail], &t.matrix, -1);
        row += edges[k].group().ngens();
    }
    Ok(MvColumns {
        degree: r,
        restriction: AbHom::new(global.group(), vprod.clone(), res)?,
        difference: AbHom::new(vprod, eprod, diff)?,
        global,
        vertices,
        edges,
        vertex_restrictions,
    })
}

/// Lattice intersection of column spans.
fn intersect(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.rows();
    if a.cols() == 0 || b.cols() == 0 {
        return IntMatrix::zeros(n, 0);
    }
    let k = kernel_basis(&a.hstack(&b.neg()));
    if k.cols() == 0 {
        return IntMatrix::zeros(n, 0);
    }
    let top = k.select_rows(&(0..a.cols()).collect::<Vec<_>>());
    image_basis(&(a * &top))
}

/// `Sha^r = ker(H^r(Γ) -> ∏_i H^r(Γ_i))`, in the generator coordinates of
/// the global group.
#[derive(Clone, Debug)]
pub struct ShaGroup {
    pub degree: i32,
    pub global: CohomologyGroup,
    pub kernel: Subquotient,
}

impl ShaGroup {
    pub fn group(&self) -> AbGroup {
        self.kernel.group()
    }

    /// Cocycle representatives of the Sha generators.
    pub fn cocycles(&self) -> Vec<Vec<BigInt>> {
        self.kernel
            .generators()
            .iter()
            .map(|g| self.global.cocycle(g))
            .collect()
    }
}

/// Intersects the kernels of the individual vertex restrictions.
pub fn sha(graph: &PatchingGraph, coef: Coefficient<'_>, r: i32) -> Result<ShaGroup> {
    let cols = mv_columns(graph, coef, r)?;
    sha_from_columns(&cols)
}

fn sha_from_columns(cols: &MvColumns) -> Result<ShaGroup> {
    let ag = cols.global.group();
    let mut lat = IntMatrix::identity(ag.ngens());
    for h in &cols.vertex_restrictions {
        lat = intersect(&lat, &h.kernel_lattice());
    }
    let lat = image_basis(&lat.hstack(&ag.relations()));
    let lat = if lat.cols() == 0 { IntMatrix::zeros(ag.ngens(), 0) } else { lat };
    Ok(ShaGroup {
        degree: cols.degree,
        global: cols.global.clone(),
        kernel: Subquotient::new(lat, &ag.relations())?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    /// Homology at the junction, with an element of the kernel that is not
    /// in the image.
    NotExact {
        homology: AbGroup,
        witness: Vec<BigInt>,
    },
    NotEvaluated(&'static str),
}

#[derive(Clone, Debug)]
pub struct Junction {
    pub row: i32,
    /// `global`, `vertices` or `edges`.
    pub position: &'static str,
    /// `None` where one of the two maps is a connecting map.
    pub composition_zero: Option<bool>,
    pub exactness: Exactness,
}

#[derive(Clone, Debug)]
pub struct MvReport {
    pub rows: Vec<MvColumns>,
    pub junctions: Vec<Junction>,
    /// `Sha^r` for each row.
    pub sha: Vec<ShaGroup>,
    /// `coker(∏_i -> ∏_k)` for each row.
    pub cokernels: Vec<AbGroup>,
    /// Whether `coker` of row `r` is isomorphic to `Sha^{r+1}`, the two
    /// candidate ends of the missing connecting map.
    pub connecting_candidates_agree: Vec<(i32, bool)>,
}

impl MvReport {
    pub fn all_compositions_zero(&self) -> bool {
        self.rows.iter().all(MvColumns::composition_zero)
    }
}

/// Assembles the rows `ℍ^{-1}`, `ℍ^0`, `ℍ^1` of the nine-term sequence.
/// Connecting maps are not constructed: exactness is evaluated where both
/// neighbouring maps exist, i.e. at `∏_i` in every row and at `ℍ^{-1}(Γ)`.
pub fn nine_term_report(graph: &PatchingGraph, t: &TwoTermComplex) -> Result<MvReport> {
    let coef = Coefficient::Complex(t);
    let rows = (-1..=1).map(|r| mv_columns(graph, coef, r)).collect::<Result<Vec<_>>>()?;
    let mut junctions = vec![];
    for c in &rows {
        let r = c.degree;
        let global = if r == -1 {
            let zero = AbHom::zero(AbGroup::trivial(), c.global.group());
            let e = check_exactness(&zero, &c.restriction)?;
            Junction {
                row: r,
                position: "global",
                composition_zero: Some(true),
                exactness: verdict(&e),
            }
        } else {
            Junction {
                row: r,
                position: "global",
                composition_zero: None,
                exactness: Exactness::NotEvaluated("incoming connecting map"),
            }
        };
        junctions.push(global);
        let e = check_exactness(&c.restriction, &c.difference)?;
        junctions.push(Junction {
            row: r,
            position: "vertices",
            composition_zero: Some(e.composition_zero),
            exactness: verdict(&e),
        });
        junctions.push(Junction {
            row: r,
            position: "edges",
            composition_zero: None,
            exactness: Exactness::NotEvaluated(if r == 1 {
                "end of the sequence"
            } else {
                "outgoing connecting map"
            }),
        });
    }
    let sha = rows.iter().map(sha_from_columns).collect::<Result<Vec<_>>>()?;
    let cokernels: Vec<AbGroup> = rows.iter().map(|c| c.difference.cokernel().group()).collect();
    let connecting_candidates_agree = (0..2)
        .map(|i| (i as i32 - 1, cokernels[i].is_isomorphic(&sha[i + 1].group())))
        .collect();
    Ok(MvReport {
        rows,
        junctions,
        sha,
        cokernels,
        connecting_candidates_agree,
    })
}

fn verdict(e: &crate::lattice::ExactnessCheck) -> Exactness {
    if !e.composition_zero {
        return Exactness::NotExact {
            homology: AbGroup::trivial(),
            witness: vec![],
        };
    }
    match (&e.witness, e.exact) {
        (_, true) => Exactness::Exact,
        (Some(w), false) => Exactness::NotExact {
            homology: e.homology.clone(),
            witness: w.clone(),
        },
        (None, false) => Exactness::NotExact {
            homology: e.homology.clone(),
            witness: vec![],
        },
    }
}

/// The three groups that agree under the patching hypothesis:
/// `Sha^1(𝒯)`, `Sha^2` of the degree -1 lattice of a resolution `[C -> Q]`
/// with `Q` permutation, and `coker(∏_i ℍ^0 -> ∏_k ℍ^0)`.
#[derive(Clone, Debug)]
pub struct RemarkReport {
    pub sha1: AbGroup,
    pub sha2_resolution: AbGroup,
    pub cokernel: AbGroup,
    /// The resolution `[C -> Q]` used for the second group.
    pub resolution: TwoTermComplex,
    /// `F = C°`, the lattice appearing in the flasque resolution of the dual.
    pub dual_lattice: GLattice,
    /// `H^1(Γ', Q) = 0` for `Γ` and every vertex and edge subgroup.
    pub permutation_h1_vanishes: bool,
    pub sha2_permutation: AbGroup,
    /// Pairwise isomorphism: (Sha¹, Sha²), (Sha¹, coker), (Sha², coker).
    pub agreement: [bool; 3],
}

impl RemarkReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.permutation_h1_vanishes && self.sha2_permutation.is_trivial()
    }

    pub fn all_agree(&self) -> bool {
        self.agreement.iter().all(|&b| b)
    }
}

pub fn remark_compare(graph: &PatchingGraph, t: &TwoTermComplex) -> Result<RemarkReport> {
    let sha1 = sha(graph, Coefficient::Complex(t), 1)?.group();
    let cokernel = mv_columns(graph, Coefficient::Complex(t), 0)?
        .difference
        .cokernel()
        .group();
    let res = coflasque_resolution(t)?.resolved;
    let c = res.l1().clone();
    let q = res.l2().clone();
    let sha2_resolution = sha(graph, Coefficient::Lattice(&c), 2)?.group();
    let sha2_permutation = sha(graph, Coefficient::Lattice(&q), 2)?.group();
    let mut subs = vec![Subgroup::whole(graph.gamma())];
    subs.extend(graph.vertices().iter().cloned());
    subs.extend(graph.edges().iter().map(|e| e.subgroup.clone()));
    let mut permutation_h1_vanishes = true;
    for h in &subs {
        if !group_cohomology(h, &q, 1)?.is_trivial() {
            permutation_h1_vanishes = false;
        }
    }
    let agreement = [
        sha1.is_isomorphic(&sha2_resolution),
        sha1.is_isomorphic(&cokernel),
        sha2_resolution.is_isomorphic(&cokernel),
    ];
    Ok(RemarkReport {
        sha1,
        sha2_resolution,
        cokernel,
        dual_lattice: c.dual(),
        resolution: res,
        permutation_h1_vanishes,
        sha2_permutation,
        agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{build_patching_graph, Edge};
    use super::*;
    use crate::groups::named;
    use std::sync::Arc;

    fn sign() -> GLattice {
        GLattice::new(Arc::new(named::cyclic(2)), vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap()
    }

    fn two_vertex(h: Subgroup, e: Subgroup) -> PatchingGraph {
        let g = h.parent().clone();
        build_patching_graph(
            &g,
            vec![h.clone(), h],
            vec![Edge {
                head: 0,
                tail: 1,
                subgroup: e,
            }],
        )
        .unwrap()
    }

    #[test]
    fn single_vertex_has_empty_right_column() {
        let s = sign();
        let g = s.group().clone();
        let graph = PatchingGraph::single(&g, Subgroup::whole(&g)).unwrap();
        let c = mv_columns(&graph, Coefficient::Lattice(&s), 1).unwrap();
        assert_eq!(c.edge_product().ngens(), 0);
        assert!(c.difference.is_zero());
        assert!(c.composition_zero());
        assert!(sha(&graph, Coefficient::Lattice(&s), 1).unwrap().group().is_trivial());
    }

    #[test]
    fn difference_on_identical_groups() {
        let s = sign();
        let g = s.group().clone();
        let w = Subgroup::whole(&g);
        let graph = two_vertex(w.clone(), w);
        let c = mv_columns(&graph, Coefficient::Lattice(&s), 1).unwrap();
        // H^1 = Z/2 at each end, so the difference (1, -1) is (1, 1) mod 2
        assert_eq!(c.difference.target.to_string(), "Z/2");
        let m = &c.difference.matrix;
        assert_eq!((m.rows(), m.cols()), (1, 2));
        assert_eq!(c.difference.kernel().group().to_string(), "Z/2");
        assert!(!c.difference.is_zero());
    }

    #[test]
    fn sha_of_sign_with_trivial_vertices() {
        let s = sign();
        let g = s.group().clone();
        let t = Subgroup::trivial(&g);
        let graph = two_vertex(t.clone(), t);
        let c = mv_columns(&graph, Coefficient::Lattice(&s), 1).unwrap();
        assert!(c.vertex_product().is_trivial());
        let sh = sha(&graph, Coefficient::Lattice(&s), 1).unwrap();
        assert_eq!(sh.group().to_string(), "Z/2");
        assert_eq!(sh.group(), c.restriction.kernel().group());
    }

    #[test]
    fn exactness_counter_model() {
        let s = sign();
        let g = s.group().clone();
        let t = Subgroup::trivial(&g);
        let graph = two_vertex(t.clone(), t);
        let cx = TwoTermComplex::new(GLattice::zero(&g), s, IntMatrix::zeros(1, 0)).unwrap();
        let rep = nine_term_report(&graph, &cx).unwrap();
        assert!(rep.all_compositions_zero());
        let j = rep
            .junctions
            .iter()
            .find(|j| j.row == 0 && j.position == "vertices")
            .unwrap();
        match &j.exactness {
            Exactness::NotExact { witness, .. } => {
                assert_eq!(witness, &vec![BigInt::from(1), BigInt::from(1)])
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn remark_on_sign_fixture() {
        let s = sign();
        let g = s.group().clone();
        let w = Subgroup::whole(&g);
        let graph = two_vertex(w.clone(), w);
        let cx = TwoTermComplex::new(GLattice::zero(&g), s, IntMatrix::zeros(1, 0)).unwrap();
        let rep = remark_compare(&graph, &cx).unwrap();
        assert!(rep.all_agree());
        assert!(rep.sha1.is_trivial());
    }

    #[test]
    fn permutation_hypothesis_failure_is_flagged() {
        let g = Arc::new(named::cyclic(2));
        let t = Subgroup::trivial(&g);
        let graph = two_vertex(t.clone(), t);
        let z = GLattice::trivial(&g, 1);
        let cx = TwoTermComplex::new(GLattice::zero(&g), z, IntMatrix::zeros(1, 0)).unwrap();
        let rep = remark_compare(&graph, &cx).unwrap();
        assert!(!rep.hypotheses_hold());
        assert_eq!(rep.sha2_permutation.to_string(), "Z/2");
    }
}
