//! The six-term sequence of a finite crossed module over a patching graph,
//! evaluated on explicit elements and classes.

use super::PatchingGraph;
use crate::crossed::{h_minus_one, h_zero_with_limit, FiniteCrossedModule, HZero, ZeroCocycle};
use crate::error::{Error, Result};
use crate::groups::Subgroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedRow {
    pub degree: i32,
    pub global_order: usize,
    pub vertex_orders: Vec<usize>,
    pub edge_orders: Vec<usize>,
    /// Size of the kernel of the global-to-vertices map (preimage of the
    /// neutral tuple).
    pub sha_size: usize,
    /// Tuples on which the two edge restrictions agree, compared with the
    /// image of the global term.
    pub exact_at_vertices: bool,
    /// A compatible tuple not coming from the global term: element ids of
    /// `G` in degree -1, class indices in degree 0.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct CrossedMvReport {
    pub rows: Vec<CrossedRow>,
}

fn restrict_class(from: &HZero, to: &HZero, class: usize) -> Result<usize> {
    let z = &from.representatives[class];
    let alpha = to
        .galois_members
        .iter()
        .map(|s| {
            from.galois_members
                .binary_search(s)
                .map(|i| z.alpha[i])
                .map_err(|_| Error::Membership("restriction to a non-subgroup".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    to.class_of_cocycle(&ZeroCocycle { alpha, h: z.h })
        .ok_or_else(|| Error::Verification("restricted cocycle is not a cocycle".into()))
}

/// `ℍ^{-1}` and `ℍ^0` rows. Degree 0 enumerates all tuples of vertex
/// classes, at most `limit` of them.
pub fn crossed_report(graph: &PatchingGraph, c: &FiniteCrossedModule, limit: u128) -> Result<CrossedMvReport> {
    if **graph.gamma() != *c.galois {
        return Err(Error::Mismatch("graph and crossed module use different groups".into()));
    }
    c.validate()?;
    let whole = Subgroup::whole(graph.gamma());
    let edges = graph.edges();

    // degree -1: subsets of ker ∂, maps are inclusions
    let glob = h_minus_one(c, &whole)?;
    let verts = graph.vertices().iter().map(|v| h_minus_one(c, v)).collect::<Result<Vec<_>>>()?;
    let eds = edges.iter().map(|e| h_minus_one(c, &e.subgroup)).collect::<Result<Vec<_>>>()?;
    // compatible tuples are constant on the connected graph
    let compatible: Vec<usize> = c
        .kernel()
        .into_iter()
        .filter(|x| verts.iter().all(|v| v.elements.binary_search(x).is_ok()))
        .collect();
    let missing = compatible.iter().find(|x| glob.elements.binary_search(x).is_err());
    let row_m1 = CrossedRow {
        degree: -1,
        global_order: glob.elements.len(),
        vertex_orders: verts.iter().map(|v| v.elements.len()).collect(),
        edge_orders: eds.iter().map(|v| v.elements.len()).collect(),
        sha_size: 1,
        exact_at_vertices: missing.is_none(),
        witness: missing.map(|&x| vec![x; verts.len()]),
    };

    // degree 0
    let hg = h_zero_with_limit(c, &whole, limit)?;
    let hv = graph
        .vertices()
        .iter()
        .map(|v| h_zero_with_limit(c, v, limit))
        .collect::<Result<Vec<_>>>()?;
    let he = edges
        .iter()
        .map(|e| h_zero_with_limit(c, &e.subgroup, limit))
        .collect::<Result<Vec<_>>>()?;
    let to_vertex: Vec<Vec<usize>> = hv
        .iter()
        .map(|v| (0..hg.order()).map(|x| restrict_class(&hg, v, x)).collect())
        .collect::<Result<_>>()?;
    let heads: Vec<Vec<usize>> = edges
        .iter()
        .zip(&he)
        .map(|(e, k)| (0..hv[e.head].order()).map(|x| restrict_class(&hv[e.head], k, x)).collect())
        .collect::<Result<_>>()?;
    let tails: Vec<Vec<usize>> = edges
        .iter()
        .zip(&he)
        .map(|(e, k)| (0..hv[e.tail].order()).map(|x| restrict_class(&hv[e.tail], k, x)).collect())
        .collect::<Result<_>>()?;
    let total: u128 = hv.iter().map(|v| v.order() as u128).product();
    if total > limit {
        return Err(Error::SizeLimit {
            what: "tuples of vertex classes",
            needed: total,
            limit,
        });
    }
    let image: std::collections::HashSet<Vec<usize>> = (0..hg.order())
        .map(|x| to_vertex.iter().map(|m| m[x]).collect())
        .collect();
    let neutral_tuple: Vec<usize> = hv.iter().map(|v| v.neutral).collect();
    let sha_size = (0..hg.order())
        .filter(|&x| to_vertex.iter().map(|m| m[x]).collect::<Vec<_>>() == neutral_tuple)
        .count();
    let mut witness = None;
    let mut tuple = vec![0usize; hv.len()];
    'outer: loop {
        let ok = edges
            .iter()
            .enumerate()
            .all(|(k, e)| heads[k][tuple[e.head]] == tails[k][tuple[e.tail]]);
        if ok && !image.contains(&tuple) {
            witness = Some(tuple.clone());
            break;
        }
        let mut i = tuple.len();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < hv[i].order() {
                break;
            }
            tuple[i] = 0;
        }
    }
    let row_0 = CrossedRow {
        degree: 0,
        global_order: hg.order(),
        vertex_orders: hv.iter().map(HZero::order).collect(),
        edge_orders: he.iter().map(HZero::order).collect(),
        sha_size,
        exact_at_vertices: witness.is_none(),
        witness,
    };
    Ok(CrossedMvReport {
        rows: vec![row_m1, row_0],
    })
}

#[cfg(test)]
mod tests {
    use super::super::{build_patching_graph, Edge};
    use super::*;
    use crate::groups::named;
    use std::sync::Arc;

    #[test]
    fn z2_model() {
        let z2 = Arc::new(named::cyclic(2));
        let gamma = Arc::new(named::cyclic(2));
        let t = vec![vec![0, 1]; 2];
        let c = FiniteCrossedModule::abelian(z2.clone(), z2, vec![0, 0], gamma.clone(), t.clone(), t).unwrap();
        let w = Subgroup::whole(&gamma);
        let single = PatchingGraph::single(&gamma, w.clone()).unwrap();
        let rep = crossed_report(&single, &c, 1_000_000).unwrap();
        assert!(rep.rows.iter().all(|r| r.exact_at_vertices));
        assert_eq!(rep.rows[1].global_order, 4);

        let triv = Subgroup::trivial(&gamma);
        let g2 = build_patching_graph(
            &gamma,
            vec![triv.clone(), triv.clone()],
            vec![Edge {
                head: 0,
                tail: 1,
                subgroup: triv,
            }],
        )
        .unwrap();
        let rep = crossed_report(&g2, &c, 1_000_000).unwrap();
        assert!(rep.rows[0].exact_at_vertices);
        // ℍ^0 over the trivial group is H = Z/2 and Hom(Z/2, Z/2) is lost
        assert_eq!(rep.rows[1].vertex_orders, vec![2, 2]);
        assert_eq!(rep.rows[1].sha_size, 2);
        assert!(rep.rows[1].exact_at_vertices);
    }
}
