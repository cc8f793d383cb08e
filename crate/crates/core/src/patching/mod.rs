//! Finite-group models of factorization inverse systems: a connected graph
//! whose vertices and edges carry subgroups of one finite group `Γ`, with
//! every edge subgroup contained in the subgroups of its two endpoints.

mod crossed_mv;
mod mv;

use std::sync::Arc;

pub use crossed_mv::{crossed_report, CrossedMvReport, CrossedRow};
pub use mv::{
    mv_columns, nine_term_report, remark_compare, sha, Coefficient, Exactness, Junction,
    MvColumns, MvReport, RemarkReport, ShaGroup,
};

use crate::error::{Error, Result};
use crate::groups::{coset_action, FiniteGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub head: usize,
    pub tail: usize,
    pub subgroup: Subgroup,
}

#[derive(Clone, Debug)]
pub struct PatchingGraph {
    gamma: Arc<FiniteGroup>,
    vertices: Vec<Subgroup>,
    edges: Vec<Edge>,
}

impl PartialEq for PatchingGraph {
    fn eq(&self, other: &Self) -> bool {
        *self.gamma == *other.gamma
            && self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .zip(&other.vertices)
                .all(|(a, b)| a.members() == b.members())
            && self.edges.len() == other.edges.len()
            && self.edges.iter().zip(&other.edges).all(|(a, b)| {
                (a.head, a.tail) == (b.head, b.tail) && a.subgroup.members() == b.subgroup.members()
            })
    }
}

/// Validates containments, rejects loops and requires a nonempty connected
/// underlying graph. Multiple edges between the same vertices are allowed.
pub fn build_patching_graph(
    gamma: &Arc<FiniteGroup>,
    vertices: Vec<Subgroup>,
    edges: Vec<Edge>,
) -> Result<PatchingGraph> {
    if vertices.is_empty() {
        return Err(Error::Model("graph has no vertices".into()));
    }
    for (i, v) in vertices.iter().enumerate() {
        if **v.parent() != **gamma {
            return Err(Error::Membership(format!("vertex {i} is not a subgroup of the group")));
        }
    }
    for (k, e) in edges.iter().enumerate() {
        if e.head >= vertices.len() || e.tail >= vertices.len() {
            return Err(Error::Model(format!("edge {k} refers to a missing vertex")));
        }
        if e.head == e.tail {
            return Err(Error::Model(format!("edge {k} is a loop")));
        }
        if **e.subgroup.parent() != **gamma {
            return Err(Error::Membership(format!("edge {k} is not a subgroup of the group")));
        }
        for end in [e.head, e.tail] {
            if !e.subgroup.is_subgroup_of(&vertices[end]) {
                return Err(Error::Model(format!(
                    "edge {k} subgroup is not contained in the subgroup of vertex {end}"
                )));
            }
        }
    }
    let g = PatchingGraph {
        gamma: gamma.clone(),
        vertices,
        edges,
    };
    if !g.is_connected() {
        return Err(Error::Model("graph is not connected".into()));
    }
    Ok(g)
}

impl PatchingGraph {
    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.gamma
    }

    pub fn vertices(&self) -> &[Subgroup] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.head, e.tail), (e.tail, e.head)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// One vertex with subgroup `Γ`.
    pub fn single(gamma: &Arc<FiniteGroup>, subgroup: Subgroup) -> Result<Self> {
        build_patching_graph(gamma, vec![subgroup], vec![])
    }
}

/// A refined graph with bookkeeping: each new vertex (edge) remembers the
/// original vertex (edge) and the least coset of its orbit on `Γ/H`.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub graph: PatchingGraph,
    pub vertex_origin: Vec<(usize, usize)>,
    pub edge_origin: Vec<(usize, usize)>,
    /// Orbit sizes per original vertex; each list sums to `[Γ : H]`.
    pub orbit_sizes: Vec<Vec<usize>>,
}

/// Orbits of `k` on cosets, each as a sorted coset list, ordered by least
/// coset.
fn orbits(cs: &crate::groups::CosetSpace, k: &Subgroup) -> Vec<Vec<usize>> {
    let n = cs.len();
    let mut seen = vec![false; n];
    let mut out = vec![];
    for c in 0..n {
        if seen[c] {
            continue;
        }
        let mut orbit: Vec<usize> = k.members().iter().map(|&x| cs.act(x, c)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &d in &orbit {
            seen[d] = true;
        }
        out.push(orbit);
    }
    out
}

fn stabilizer(cs: &crate::groups::CosetSpace, k: &Subgroup, c: usize) -> Result<Subgroup> {
    let members: Vec<usize> = k.members().iter().copied().filter(|&x| cs.act(x, c) == c).collect();
    Subgroup::from_members(k.parent(), &members)
}

/// Sizes of the orbits of each vertex subgroup on `Γ/H`, in the order used by
/// [`refine_graph`]. Defined even when the refined graph is disconnected.
pub fn refinement_orbit_sizes(graph: &PatchingGraph, h: &Subgroup) -> Result<Vec<Vec<usize>>> {
    let cs = coset_action(&graph.gamma, h)?;
    Ok(graph
        .vertices
        .iter()
        .map(|v| orbits(&cs, v).iter().map(Vec::len).collect())
        .collect())
}

/// Base change along the fixed field of `H`: every vertex splits into the
/// orbits of its subgroup on `Γ/H`, with the stabilizer of the least coset
/// as new subgroup. An edge orbit lies in exactly one orbit at each end; its
/// subgroup is the stabilizer of its least coset intersected with the two
/// endpoint stabilizers, so that containment holds literally.
pub fn refine_graph(graph: &PatchingGraph, h: &Subgroup) -> Result<Refinement> {
    let cs = coset_action(&graph.gamma, h)?;
    let mut vertices = vec![];
    let mut vertex_origin = vec![];
    let mut orbit_sizes = vec![];
    // per original vertex: coset -> new vertex id
    let mut where_is: Vec<Vec<usize>> = vec![];
    for (i, v) in graph.vertices.iter().enumerate() {
        let mut map = vec![0; cs.len()];
        let mut sizes = vec![];
        for o in orbits(&cs, v) {
            let id = vertices.len();
            for &c in &o {
                map[c] = id;
            }
            sizes.push(o.len());
            vertices.push(stabilizer(&cs, v, o[0])?);
            vertex_origin.push((i, o[0]));
        }
        where_is.push(map);
        orbit_sizes.push(sizes);
    }
    let mut edges = vec![];
    let mut edge_origin = vec![];
    for (k, e) in graph.edges.iter().enumerate() {
        for o in orbits(&cs, &e.subgroup) {
            let head = where_is[e.head][o[0]];
            let tail = where_is[e.tail][o[0]];
            let sub = stabilizer(&cs, &e.subgroup, o[0])?
                .intersection(&vertices[head])
                .intersection(&vertices[tail]);
            edges.push(Edge {
                head,
                tail,
                subgroup: sub,
            });
            edge_origin.push((k, o[0]));
        }
    }
    let refined = build_patching_graph(&graph.gamma, vertices, edges)?;
    for e in &refined.edges {
        debug_assert!(e.subgroup.is_subgroup_of(&refined.vertices[e.head]));
        debug_assert!(e.subgroup.is_subgroup_of(&refined.vertices[e.tail]));
    }
    Ok(Refinement {
        graph: refined,
        vertex_origin,
        edge_origin,
        orbit_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named;

    #[test]
    fn construction_checks() {
        let g = Arc::new(named::cyclic(2));
        let w = Subgroup::whole(&g);
        let t = Subgroup::trivial(&g);
        assert!(PatchingGraph::single(&g, w.clone()).is_ok());
        let e = Edge {
            head: 0,
            tail: 1,
            subgroup: w.clone(),
        };
        assert!(build_patching_graph(&g, vec![w.clone(), w.clone()], vec![e.clone()]).is_ok());
        let bad = build_patching_graph(&g, vec![w.clone(), t.clone()], vec![e]);
        assert!(matches!(bad, Err(Error::Model(_))));
        let disconnected = build_patching_graph(&g, vec![w.clone(), w.clone()], vec![]);
        assert!(matches!(disconnected, Err(Error::Model(_))));
        let lp = Edge {
            head: 0,
            tail: 0,
            subgroup: t,
        };
        assert!(build_patching_graph(&g, vec![w], vec![lp]).is_err());
    }

    #[test]
    fn refine_by_whole_group_is_identity() {
        let g = Arc::new(named::symmetric3());
        let a = Subgroup::generated_by(&g, &[g.generators()[0]]).unwrap();
        let graph = build_patching_graph(
            &g,
            vec![a.clone(), Subgroup::whole(&g)],
            vec![Edge {
                head: 0,
                tail: 1,
                subgroup: Subgroup::trivial(&g),
            }],
        )
        .unwrap();
        let r = refine_graph(&graph, &Subgroup::whole(&g)).unwrap();
        assert_eq!(r.graph, graph);
    }

    #[test]
    fn refine_s3_along_a3() {
        let g = Arc::new(named::symmetric3());
        let tau = Subgroup::generated_by(&g, &[g.generators()[0]]).unwrap();
        let a3 = Subgroup::generated_by(&g, &[g.generators()[1]]).unwrap();
        let graph = PatchingGraph::single(&g, tau.clone()).unwrap();
        let r = refine_graph(&graph, &a3).unwrap();
        assert_eq!(r.graph.vertices().len(), 1);
        assert!(r.graph.vertices()[0].is_trivial());
        assert_eq!(r.orbit_sizes, vec![vec![2]]);

        let triv = PatchingGraph::single(&g, Subgroup::trivial(&g)).unwrap();
        let r = refine_graph(&triv, &tau);
        // three singleton orbits and no edges: disconnected
        assert!(matches!(r, Err(Error::Model(_))));
        assert_eq!(refinement_orbit_sizes(&triv, &tau).unwrap(), vec![vec![1, 1, 1]]);
    }
}
