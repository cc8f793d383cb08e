//! Built-in named objects: small groups, lattices, two-term complexes,
//! patching graphs and crossed modules. Every object is rebuilt on request,
//! so two lookups of the same name give equal values.

use std::fmt;
use std::sync::Arc;

use crate::complexes::TwoTermComplex;
use crate::crossed::FiniteCrossedModule;
use crate::error::{Error, Result};
use crate::groups::{named, FiniteGroup, Subgroup};
use crate::lattice::{make_permutation_lattice, GLattice, IntMatrix};
use crate::patching::{build_patching_graph, Edge, PatchingGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Group,
    Lattice,
    Complex,
    Graph,
    Crossed,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Lattice => "lattice",
            Kind::Complex => "complex",
            Kind::Graph => "graph",
            Kind::Crossed => "crossed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub kind: Kind,
    pub name: &'static str,
    /// Name of the group the object lives over (for crossed modules, `Γ`).
    pub group: &'static str,
    pub summary: String,
    pub description: &'static str,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<8} {:<26} {:<24} {}",
            self.kind.name(),
            self.name,
            self.summary,
            self.description
        )
    }
}

const GROUPS: &[(&str, &str)] = &[
    ("trivial", "trivial group"),
    ("Z2", "cyclic of order 2"),
    ("Z3", "cyclic of order 3"),
    ("Z4", "cyclic of order 4"),
    ("Z6", "cyclic of order 6"),
    ("V4", "Klein four-group Z/2 x Z/2, generators (1 2), (3 4)"),
    ("S3", "symmetric group on 3 letters, generators (1 2), (1 2 3)"),
    ("D4", "dihedral of order 8"),
    ("D6", "dihedral of order 12"),
    ("A4", "alternating group on 4 letters"),
];

pub fn group(name: &str) -> Result<Arc<FiniteGroup>> {
    let g = match name {
        "trivial" => named::trivial(),
        "Z2" => named::cyclic(2),
        "Z3" => named::cyclic(3),
        "Z4" => named::cyclic(4),
        "Z6" => named::cyclic(6),
        "V4" => named::klein_four(),
        "S3" => named::symmetric3(),
        "D4" => named::dihedral(4),
        "D6" => named::dihedral(6),
        "A4" => named::alternating4(),
        _ => return Err(unknown(Kind::Group, name)),
    };
    Ok(Arc::new(g))
}

fn unknown(kind: Kind, name: &str) -> Error {
    Error::Parse(format!("no {} fixture named {name:?}", kind.name()))
}

fn scalar_lattice(g: &Arc<FiniteGroup>, signs: &[i64]) -> GLattice {
    let gens = signs.iter().map(|&s| IntMatrix::from_rows(&[vec![s]])).collect();
    GLattice::new(g.clone(), gens).expect("sign characters are valid")
}

fn perm(g: &Arc<FiniteGroup>, subgroups: &[Subgroup]) -> GLattice {
    make_permutation_lattice(g, subgroups).expect("coset lattices are valid")
}

fn cyclic_sub(g: &Arc<FiniteGroup>, gen: usize) -> Subgroup {
    Subgroup::generated_by(g, &[gen]).expect("element of the group")
}

/// Kernel of the augmentation `Z[G/H] -> Z`, in the basis `e_i - e_{i+1}`.
fn augmentation_ideal(p: &GLattice) -> GLattice {
    let n = p.rank();
    let cols: Vec<Vec<i64>> = (0..n - 1)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            c[i + 1] = -1;
            c
        })
        .collect();
    let basis = IntMatrix::from_rows(&cols).transpose();
    p.sublattice(&basis).expect("augmentation kernel is stable")
}

const LATTICES: &[(&str, &str, &str)] = &[
    ("sign", "Z2", "Z with the generator acting by -1"),
    ("triv-Z2", "Z2", "Z with trivial action"),
    ("triv-Z3", "Z3", "Z with trivial action"),
    ("triv-Z4", "Z4", "Z with trivial action"),
    ("triv-V4", "V4", "Z with trivial action"),
    ("triv-S3", "S3", "Z with trivial action"),
    ("regular-Z2", "Z2", "Z[Z2], the regular permutation lattice"),
    ("regular-Z3", "Z3", "Z[Z3], the regular permutation lattice"),
    ("regular-Z4", "Z4", "Z[Z4], the regular permutation lattice"),
    ("regular-V4", "V4", "Z[V4], the regular permutation lattice"),
    ("regular-S3", "S3", "Z[S3], the regular permutation lattice"),
    ("s3-coset", "S3", "Z[S3/A3], S3 acting through the sign"),
    ("s3-cubic", "S3", "Z[S3/<(1 2)>], the natural permutation lattice"),
    ("s3-root", "S3", "augmentation kernel of Z[S3/<(1 2)>] (root lattice A2)"),
    ("z3-aug", "Z3", "augmentation ideal of Z[Z3]"),
    ("z3-norm-quotient", "Z3", "Z[Z3]/Z*norm, dual of the augmentation ideal"),
    ("z4-rot", "Z4", "Z^2 with the generator acting by rotation by 90 degrees"),
    ("z4-sign", "Z4", "Z with the generator acting by -1"),
    ("z4-coset", "Z4", "Z[Z4/<g^2>]"),
    ("v4-sign-a", "V4", "Z with the first generator acting by -1"),
    ("v4-sign-b", "V4", "Z with the second generator acting by -1"),
    ("v4-sign-ab", "V4", "Z with both generators acting by -1"),
    ("v4-aug", "V4", "augmentation ideal of Z[V4]"),
];

pub fn lattice(name: &str) -> Result<GLattice> {
    let Some(&(_, gname, _)) = LATTICES.iter().find(|e| e.0 == name) else {
        return Err(unknown(Kind::Lattice, name));
    };
    let g = group(gname)?;
    let whole = || Subgroup::whole(&g);
    let triv = || Subgroup::trivial(&g);
    let gens = g.generators().to_vec();
    let l = match name {
        "sign" | "z4-sign" => scalar_lattice(&g, &[-1]),
        "v4-sign-a" => scalar_lattice(&g, &[-1, 1]),
        "v4-sign-b" => scalar_lattice(&g, &[1, -1]),
        "v4-sign-ab" => scalar_lattice(&g, &[-1, -1]),
        n if n.starts_with("triv-") => perm(&g, &[whole()]),
        n if n.starts_with("regular-") => perm(&g, &[triv()]),
        "s3-coset" => perm(&g, &[cyclic_sub(&g, gens[1])]),
        "s3-cubic" => perm(&g, &[cyclic_sub(&g, gens[0])]),
        "s3-root" => augmentation_ideal(&perm(&g, &[cyclic_sub(&g, gens[0])])),
        "z3-aug" => augmentation_ideal(&perm(&g, &[triv()])),
        "z3-norm-quotient" => augmentation_ideal(&perm(&g, &[triv()])).dual(),
        "z4-rot" => GLattice::new(g.clone(), vec![IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]])])?,
        "z4-coset" => perm(&g, &[cyclic_sub(&g, g.mul(gens[0], gens[0]))]),
        "v4-aug" => augmentation_ideal(&perm(&g, &[triv()])),
        _ => unreachable!("every listed lattice is built"),
    };
    Ok(l)
}

fn column(entries: &[i64]) -> IntMatrix {
    IntMatrix::from_rows(&entries.iter().map(|&x| vec![x]).collect::<Vec<_>>())
}

fn complex(l1: GLattice, l2: GLattice, d: IntMatrix) -> TwoTermComplex {
    TwoTermComplex::new(l1, l2, d).expect("fixture differentials are equivariant")
}

fn in_degree_zero(l: GLattice) -> TwoTermComplex {
    let r = l.rank();
    complex(GLattice::zero(l.group()), l, IntMatrix::zeros(r, 0))
}

fn in_degree_minus_one(l: GLattice) -> TwoTermComplex {
    let r = l.rank();
    complex(l.clone(), GLattice::zero(l.group()), IntMatrix::zeros(0, r))
}

/// `[Z -N-> P]` sending 1 to the sum of the basis; its cokernel is the
/// character lattice of a norm-one torus.
fn norm_one(p: GLattice) -> TwoTermComplex {
    let z = GLattice::trivial(p.group(), 1);
    let n = column(&vec![1; p.rank()]);
    complex(z, p, n)
}

/// `[P -ε-> Z]`, the augmentation.
fn augmentation(p: GLattice) -> TwoTermComplex {
    let z = GLattice::trivial(p.group(), 1);
    let e = IntMatrix::from_rows(&[vec![1; p.rank()]]);
    complex(p, z, e)
}

const COMPLEXES: &[(&str, &str, &str)] = &[
    ("sign-deg0", "Z2", "[0 -> sign]"),
    ("sign-deg-1", "Z2", "[sign -> 0]"),
    ("sign-times-two", "Z2", "[sign -2-> sign]"),
    ("norm-one-Z2", "Z2", "[Z -N-> Z[Z2]]"),
    ("norm-one-Z3", "Z3", "[Z -N-> Z[Z3]]"),
    ("norm-one-Z4", "Z4", "[Z -N-> Z[Z4]]"),
    ("norm-one-V4", "V4", "[Z -N-> Z[V4]]"),
    ("norm-one-s3-quad", "S3", "[Z -N-> Z[S3/A3]]"),
    ("norm-one-s3-cubic", "S3", "[Z -N-> Z[S3/<(1 2)>]]"),
    ("aug-Z3", "Z3", "[Z[Z3] -> Z], the augmentation"),
    ("aug-V4", "V4", "[Z[V4] -> Z], the augmentation"),
    ("s3-coset-diff", "S3", "[Z[S3/A3] -> Z[S3/A3]] with differential 1 - swap"),
    ("s3-root-deg0", "S3", "[0 -> s3-root]"),
    ("z3-aug-deg0", "Z3", "[0 -> z3-aug]"),
    ("z3-triv-times-three", "Z3", "[Z -3-> Z], trivial action"),
    ("z4-rot-deg0", "Z4", "[0 -> z4-rot]"),
    ("z4-rot-deg-1", "Z4", "[z4-rot -> 0]"),
    ("z4-sign-into-coset", "Z4", "[z4-sign -> Z[Z4/<g^2>]], 1 -> e0 - e1"),
    ("v4-signs", "V4", "[0 -> v4-sign-a + v4-sign-b]"),
];

pub fn complex_fixture(name: &str) -> Result<TwoTermComplex> {
    if !COMPLEXES.iter().any(|e| e.0 == name) {
        return Err(unknown(Kind::Complex, name));
    }
    let t = match name {
        "sign-deg0" => in_degree_zero(lattice("sign")?),
        "sign-deg-1" => in_degree_minus_one(lattice("sign")?),
        "sign-times-two" => complex(lattice("sign")?, lattice("sign")?, IntMatrix::from_rows(&[vec![2]])),
        "norm-one-Z2" => norm_one(lattice("regular-Z2")?),
        "norm-one-Z3" => norm_one(lattice("regular-Z3")?),
        "norm-one-Z4" => norm_one(lattice("regular-Z4")?),
        "norm-one-V4" => norm_one(lattice("regular-V4")?),
        "norm-one-s3-quad" => norm_one(lattice("s3-coset")?),
        "norm-one-s3-cubic" => norm_one(lattice("s3-cubic")?),
        "aug-Z3" => augmentation(lattice("regular-Z3")?),
        "aug-V4" => augmentation(lattice("regular-V4")?),
        "s3-coset-diff" => {
            let p = lattice("s3-coset")?;
            complex(p.clone(), p, IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]))
        }
        "s3-root-deg0" => in_degree_zero(lattice("s3-root")?),
        "z3-aug-deg0" => in_degree_zero(lattice("z3-aug")?),
        "z3-triv-times-three" => {
            let z = lattice("triv-Z3")?;
            complex(z.clone(), z, IntMatrix::from_rows(&[vec![3]]))
        }
        "z4-rot-deg0" => in_degree_zero(lattice("z4-rot")?),
        "z4-rot-deg-1" => in_degree_minus_one(lattice("z4-rot")?),
        "z4-sign-into-coset" => complex(lattice("z4-sign")?, lattice("z4-coset")?, column(&[1, -1])),
        "v4-signs" => {
            let s = GLattice::direct_sum(&[&lattice("v4-sign-a")?, &lattice("v4-sign-b")?])?;
            in_degree_zero(s)
        }
        _ => unreachable!("every listed complex is built"),
    };
    Ok(t)
}

const GRAPHS: &[(&str, &str, &str)] = &[
    ("single-Z2", "Z2", "one vertex carrying the whole group"),
    ("two-vertex-whole", "Z2", "vertices and edge all carry the whole group"),
    ("two-vertex-trivial-edges", "Z2", "two whole-group vertices, trivial edge"),
    ("two-vertex-trivial", "Z2", "two trivial vertices, trivial edge"),
    ("v4-path", "V4", "the three order-2 subgroups on a path, trivial edges"),
    ("v4-triangle", "V4", "the three order-2 subgroups on a triangle, trivial edges"),
    ("s3-two-vertex", "S3", "vertices <(1 2)> and A3, trivial edge"),
    ("s3-whole-pair", "S3", "two whole-group vertices joined by an edge carrying A3"),
    ("s3-transposition", "S3", "one vertex carrying <(1 2)>"),
];

fn edge(head: usize, tail: usize, subgroup: Subgroup) -> Edge {
    Edge { head, tail, subgroup }
}

pub fn graph(name: &str) -> Result<PatchingGraph> {
    let Some(&(_, gname, _)) = GRAPHS.iter().find(|e| e.0 == name) else {
        return Err(unknown(Kind::Graph, name));
    };
    let g = group(gname)?;
    let w = Subgroup::whole(&g);
    let t = Subgroup::trivial(&g);
    let gens = g.generators().to_vec();
    match name {
        "single-Z2" => PatchingGraph::single(&g, w),
        "two-vertex-whole" => build_patching_graph(&g, vec![w.clone(), w.clone()], vec![edge(0, 1, w)]),
        "two-vertex-trivial-edges" => build_patching_graph(&g, vec![w.clone(), w], vec![edge(0, 1, t)]),
        "two-vertex-trivial" => build_patching_graph(&g, vec![t.clone(), t.clone()], vec![edge(0, 1, t)]),
        "v4-path" | "v4-triangle" => {
            let a = cyclic_sub(&g, gens[0]);
            let b = cyclic_sub(&g, gens[1]);
            let ab = cyclic_sub(&g, g.mul(gens[0], gens[1]));
            let mut edges = vec![edge(0, 1, t.clone()), edge(1, 2, t.clone())];
            if name == "v4-triangle" {
                edges.push(edge(2, 0, t));
            }
            build_patching_graph(&g, vec![a, b, ab], edges)
        }
        "s3-two-vertex" => build_patching_graph(
            &g,
            vec![cyclic_sub(&g, gens[0]), cyclic_sub(&g, gens[1])],
            vec![edge(0, 1, t)],
        ),
        "s3-transposition" => PatchingGraph::single(&g, cyclic_sub(&g, gens[0])),
        "s3-whole-pair" => build_patching_graph(&g, vec![w.clone(), w], vec![edge(0, 1, cyclic_sub(&g, gens[1]))]),
        _ => unreachable!("every listed graph is built"),
    }
}

const CROSSED: &[(&str, &str, &str)] = &[
    ("z2-zero-z2", "Z2", "[Z2 -0-> Z2], all actions trivial"),
    ("z2-id-z2", "Z2", "[Z2 -id-> Z2], all actions trivial"),
    ("s3-conj", "Z2", "[S3 -id-> S3] with conjugation, trivial Galois action"),
    ("s3-galois-z2", "Z2", "[1 -> S3], Galois generator acting by conjugation by (1 2)"),
    ("z3-zero-z3-inv", "Z2", "[Z3 -0-> Z3], Galois generator inverting both terms"),
    ("z4-double", "Z2", "[Z4 -2-> Z4], trivial H-action, Galois generator inverting both terms"),
];

/// `x ↦ x^k` as a table on element ids.
fn power_table(g: &FiniteGroup, k: usize) -> Vec<usize> {
    g.elements()
        .map(|x| (0..k).fold(g.identity(), |acc, _| g.mul(acc, x)))
        .collect()
}

pub fn crossed(name: &str) -> Result<FiniteCrossedModule> {
    if !CROSSED.iter().any(|e| e.0 == name) {
        return Err(unknown(Kind::Crossed, name));
    }
    let gamma = group("Z2")?;
    let identity_tables = |n: usize| vec![(0..n).collect::<Vec<usize>>(); 2];
    let c = match name {
        "z2-zero-z2" => {
            let z2 = group("Z2")?;
            FiniteCrossedModule::abelian(z2.clone(), z2, vec![0, 0], gamma, identity_tables(2), identity_tables(2))?
        }
        "z2-id-z2" => {
            let z2 = group("Z2")?;
            FiniteCrossedModule::abelian(z2.clone(), z2, vec![0, 1], gamma, identity_tables(2), identity_tables(2))?
        }
        "s3-conj" => FiniteCrossedModule::identity_conjugation(group("S3")?, gamma),
        "s3-galois-z2" => {
            let s3 = group("S3")?;
            let one = group("trivial")?;
            let tau = s3.generators()[0];
            let conj: Vec<usize> = s3.elements().map(|x| s3.conjugate(tau, x)).collect();
            FiniteCrossedModule::new(
                one,
                s3.clone(),
                vec![0],
                vec![vec![0]; s3.order()],
                gamma,
                vec![vec![0]; 2],
                vec![(0..s3.order()).collect(), conj],
            )?
        }
        "z3-zero-z3-inv" | "z4-double" => {
            let n = if name == "z4-double" { 4 } else { 3 };
            let z = group(&format!("Z{n}"))?;
            let inv: Vec<usize> = z.elements().map(|x| z.inv(x)).collect();
            let boundary = if n == 4 {
                power_table(&z, 2)
            } else {
                vec![z.identity(); 3]
            };
            let tables = vec![(0..n).collect::<Vec<usize>>(), inv];
            FiniteCrossedModule::abelian(z.clone(), z, boundary, gamma, tables.clone(), tables)?
        }
        _ => unreachable!("every listed crossed module is built"),
    };
    Ok(c)
}

/// The full catalog, grouped by kind in a stable order.
pub fn catalog() -> Vec<Entry> {
    let mut out = vec![];
    for &(name, description) in GROUPS {
        let g = group(name).expect("listed");
        out.push(Entry {
            kind: Kind::Group,
            name,
            group: name,
            summary: format!("order {}", g.order()),
            description,
        });
    }
    for &(name, gname, description) in LATTICES {
        let l = lattice(name).expect("listed");
        out.push(Entry {
            kind: Kind::Lattice,
            name,
            group: gname,
            summary: format!("rank {} over {gname}", l.rank()),
            description,
        });
    }
    for &(name, gname, description) in COMPLEXES {
        let t = complex_fixture(name).expect("listed");
        out.push(Entry {
            kind: Kind::Complex,
            name,
            group: gname,
            summary: format!("ranks {},{} over {gname}", t.l1().rank(), t.l2().rank()),
            description,
        });
    }
    for &(name, gname, description) in GRAPHS {
        let gr = graph(name).expect("listed");
        out.push(Entry {
            kind: Kind::Graph,
            name,
            group: gname,
            summary: format!("{}v {}e over {gname}", gr.vertices().len(), gr.edges().len()),
            description,
        });
    }
    for &(name, gname, description) in CROSSED {
        let c = crossed(name).expect("listed");
        out.push(Entry {
            kind: Kind::Crossed,
            name,
            group: gname,
            summary: format!("|G|={} |H|={} over {gname}", c.g.order(), c.h.order()),
            description,
        });
    }
    out
}

pub fn names(kind: Kind) -> Vec<&'static str> {
    let table: Vec<&'static str> = match kind {
        Kind::Group => GROUPS.iter().map(|e| e.0).collect(),
        Kind::Lattice => LATTICES.iter().map(|e| e.0).collect(),
        Kind::Complex => COMPLEXES.iter().map(|e| e.0).collect(),
        Kind::Graph => GRAPHS.iter().map(|e| e.0).collect(),
        Kind::Crossed => CROSSED.iter().map(|e| e.0).collect(),
    };
    table
}

/// Strips an optional `fixtures:` prefix.
pub fn strip_prefix(reference: &str) -> &str {
    reference.strip_prefix("fixtures:").unwrap_or(reference)
}

/// Group resolver for [`crate::io`] that understands catalog names.
pub fn resolve_group(reference: &str) -> Result<Arc<FiniteGroup>> {
    group(strip_prefix(reference))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io;

    #[test]
    fn every_entry_builds_and_round_trips() {
        let cat = catalog();
        assert!(cat.len() >= 60);
        for name in names(Kind::Lattice) {
            let l = lattice(name).unwrap();
            let back = io::lattice_from_json(&io::lattice_to_json(&l), &resolve_group).unwrap();
            assert_eq!(back, l, "{name}");
        }
        for name in names(Kind::Complex) {
            let t = complex_fixture(name).unwrap();
            assert!(t.l1().rank() <= 4 && t.l2().rank() <= 4, "{name}");
            let back = io::complex_from_json(&io::complex_to_json(&t), &resolve_group).unwrap();
            assert_eq!(back, t, "{name}");
        }
        for name in names(Kind::Graph) {
            let g = graph(name).unwrap();
            let back = io::graph_from_json(&io::graph_to_json(&g), &resolve_group).unwrap();
            assert_eq!(back, g, "{name}");
        }
        for name in names(Kind::Crossed) {
            let c = crossed(name).unwrap();
            c.validate().unwrap();
            let back = io::crossed_from_json(&io::crossed_to_json(&c), &resolve_group).unwrap();
            assert_eq!(back, c, "{name}");
        }
    }

    #[test]
    fn listing_examples() {
        let cat = catalog();
        let find = |n: &str| cat.iter().find(|e| e.name == n).unwrap();
        assert_eq!(find("sign").summary, "rank 1 over Z2");
        assert_eq!(find("s3-coset").summary, "rank 2 over S3");
        assert_eq!(find("two-vertex-trivial-edges").kind, Kind::Graph);
    }

    #[test]
    fn names_are_unique_within_kind() {
        for kind in [Kind::Group, Kind::Lattice, Kind::Complex, Kind::Graph, Kind::Crossed] {
            let mut n = names(kind);
            let len = n.len();
            n.sort_unstable();
            n.dedup();
            assert_eq!(n.len(), len);
        }
    }
}
