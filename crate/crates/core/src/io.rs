//! JSON schemas for every object the workbench reads or writes. Each
//! top-level document carries a `"format"` field naming its schema and
//! version. Integers are JSON numbers when they fit in `i64` and decimal
//! strings otherwise. Group fields accept either an inline group document or
//! a string reference, handed to a caller-supplied resolver.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::complexes::{
    ClassMode, ComplexMap, Direction, Move, MoveKind, ResolutionCertificate, TwoTermComplex, VanishingEntry,
};
use crate::crossed::FiniteCrossedModule;
use crate::error::{Error, Result};
use crate::groups::{build_group_with_limit, parse_cycles, FiniteGroup, Subgroup};
use crate::lattice::{GLattice, IntMatrix};
use crate::patching::{build_patching_graph, Edge, PatchingGraph};

pub const GROUP_FORMAT: &str = "galcoh/group/v1";
pub const LATTICE_FORMAT: &str = "galcoh/lattice/v1";
pub const COMPLEX_FORMAT: &str = "galcoh/complex/v1";
pub const GRAPH_FORMAT: &str = "galcoh/graph/v1";
pub const CROSSED_FORMAT: &str = "galcoh/crossed/v1";
pub const CERTIFICATE_FORMAT: &str = "galcoh/certificate/v1";

/// Largest group accepted from a permutation description.
pub const MAX_GROUP_ORDER: usize = 1 << 12;

/// Resolves a string reference in a group field.
pub type Resolver<'a> = &'a dyn Fn(&str) -> Result<Arc<FiniteGroup>>;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'v>(v: &'v Value, key: &str) -> Result<&'v Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field {key:?}")))
}

fn check_format(v: &Value, expected: &str) -> Result<()> {
    match v.get("format").and_then(Value::as_str) {
        Some(f) if f == expected => Ok(()),
        Some(f) => Err(perr(format!("expected format {expected:?}, found {f:?}"))),
        None => Err(perr(format!("missing \"format\" (expected {expected:?})"))),
    }
}

pub fn bigint_to_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn bigint_from_json(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    if let Some(s) = v.as_str() {
        return s.trim().parse().map_err(|_| perr(format!("bad integer {s:?}")));
    }
    Err(perr(format!("expected an integer, found {v}")))
}

fn usize_from_json(v: &Value) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| perr(format!("expected a nonnegative integer, found {v}")))
}

fn array<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what} must be an array")))
}

fn usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    array(v, what)?.iter().map(usize_from_json).collect()
}

fn usize_table(v: &Value, what: &str) -> Result<Vec<Vec<usize>>> {
    array(v, what)?.iter().map(|r| usize_list(r, what)).collect()
}

/// Row-major list of rows. An empty list is a `0 x cols` matrix, so the
/// column count is passed in for that case.
pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(bigint_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Result<IntMatrix> {
    let rs = array(v, "matrix")?;
    if rs.len() != rows {
        return Err(perr(format!("matrix must have {rows} rows, found {}", rs.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in rs {
        let r = array(r, "matrix row")?;
        if r.len() != cols {
            return Err(perr(format!("matrix rows must have {cols} entries, found {}", r.len())));
        }
        for x in r {
            data.push(bigint_from_json(x)?);
        }
    }
    Ok(IntMatrix::from_vec(rows, cols, data))
}

/// Matrix whose shape is read from the data; `cols` is used only when there
/// are no rows.
fn matrix_from_json_any(v: &Value, cols_if_empty: usize) -> Result<IntMatrix> {
    let rs = array(v, "matrix")?;
    let cols = match rs.first() {
        Some(r) => array(r, "matrix row")?.len(),
        None => cols_if_empty,
    };
    matrix_from_json(v, rs.len(), cols)
}

// ---------------------------------------------------------------- groups

pub fn group_to_json(g: &FiniteGroup) -> Value {
    let mut m = Map::new();
    m.insert("format".into(), json!(GROUP_FORMAT));
    m.insert("order".into(), json!(g.order()));
    match g.permutations() {
        Some(perms) => {
            let degree = perms[0].degree();
            let gens: Vec<String> = g.generators().iter().map(|&s| perms[s].to_cycle_string()).collect();
            m.insert("degree".into(), json!(degree));
            m.insert("permutations".into(), json!(gens));
        }
        None => {
            m.insert("table".into(), json!(g.table()));
            m.insert("generators".into(), json!(g.generators()));
        }
    }
    Value::Object(m)
}

/// Either `{"degree", "permutations": ["(1 2)", ...]}` or
/// `{"table": [[...]], "generators": [...]}`. A string is passed to the resolver.
pub fn group_from_json(v: &Value, resolve: Resolver) -> Result<Arc<FiniteGroup>> {
    if let Some(s) = v.as_str() {
        return resolve(s);
    }
    check_format(v, GROUP_FORMAT)?;
    let g = if let Some(p) = v.get("permutations") {
        let strs = array(p, "permutations")?;
        let degree = match v.get("degree") {
            Some(d) => usize_from_json(d)?,
            None => strs
                .iter()
                .filter_map(Value::as_str)
                .map(crate::groups::max_symbol)
                .max()
                .unwrap_or(0)
                .max(1),
        };
        let perms = strs
            .iter()
            .map(|s| {
                let s = s.as_str().ok_or_else(|| perr("permutations must be strings"))?;
                parse_cycles(s, degree)
            })
            .collect::<Result<Vec<_>>>()?;
        if perms.is_empty() {
            return Err(perr("a permutation group needs at least one generator"));
        }
        build_group_with_limit(&perms, MAX_GROUP_ORDER)?
    } else if let Some(t) = v.get("table") {
        let table = usize_table(t, "table")?;
        let gens = match v.get("generators") {
            Some(x) => Some(usize_list(x, "generators")?),
            None => None,
        };
        FiniteGroup::from_table(table, gens)?
    } else {
        return Err(perr("a group needs \"permutations\" or \"table\""));
    };
    if let Some(o) = v.get("order") {
        if usize_from_json(o)? != g.order() {
            return Err(perr(format!("declared order {o} but the group has order {}", g.order())));
        }
    }
    Ok(Arc::new(g))
}

fn subgroup_from_json(v: &Value, g: &Arc<FiniteGroup>) -> Result<Subgroup> {
    let members = usize_list(v, "subgroup")?;
    if members.iter().any(|&x| x >= g.order()) {
        return Err(Error::Membership(format!("subgroup {members:?} names a missing element")));
    }
    Subgroup::from_members(g, &members)
}

// ---------------------------------------------------------------- lattices

fn lattice_body(l: &GLattice) -> Value {
    let mut m = Map::new();
    m.insert("rank".into(), json!(l.rank()));
    m.insert(
        "generators".into(),
        Value::Array(l.generator_matrices().iter().map(matrix_to_json).collect()),
    );
    if let Some(p) = l.permutation_certificate() {
        m.insert("permutation".into(), json!(p));
    }
    Value::Object(m)
}

fn lattice_from_body(v: &Value, g: &Arc<FiniteGroup>) -> Result<GLattice> {
    let rank = usize_from_json(field(v, "rank")?)?;
    let gens = array(field(v, "generators")?, "generators")?
        .iter()
        .map(|m| matrix_from_json(m, rank, rank))
        .collect::<Result<Vec<_>>>()?;
    let l = GLattice::with_rank(g.clone(), rank, gens)?;
    match v.get("permutation") {
        Some(p) => {
            let cert = usize_table(p, "permutation")?;
            let l = l.with_permutation_certificate(cert);
            if !l.verify_permutation_certificate() {
                return Err(Error::InvalidLattice("permutation certificate does not match the action".into()));
            }
            Ok(l)
        }
        None => Ok(l),
    }
}

/// `{"format", "group", "rank", "generators": [matrix per group generator]}`,
/// optionally with `"permutation"`: the member lists `H_i` of a basis
/// identification with `⊕ Z[G/H_i]`.
pub fn lattice_to_json(l: &GLattice) -> Value {
    let mut v = lattice_body(l);
    v["format"] = json!(LATTICE_FORMAT);
    v["group"] = group_to_json(l.group());
    v
}

pub fn lattice_from_json(v: &Value, resolve: Resolver) -> Result<GLattice> {
    check_format(v, LATTICE_FORMAT)?;
    let g = group_from_json(field(v, "group")?, resolve)?;
    lattice_from_body(v, &g)
}

// ---------------------------------------------------------------- complexes

fn complex_body(t: &TwoTermComplex) -> Value {
    json!({
        "l1": lattice_body(t.l1()),
        "l2": lattice_body(t.l2()),
        "differential": matrix_to_json(t.matrix()),
    })
}

fn complex_from_body(v: &Value, g: &Arc<FiniteGroup>) -> Result<TwoTermComplex> {
    let l1 = lattice_from_body(field(v, "l1")?, g)?;
    let l2 = lattice_from_body(field(v, "l2")?, g)?;
    let d = matrix_from_json(field(v, "differential")?, l2.rank(), l1.rank())?;
    TwoTermComplex::new(l1, l2, d)
}

/// `{"format", "group", "l1": lattice block, "l2": lattice block,
/// "differential": l2.rank x l1.rank matrix}`; lattice blocks omit the group.
pub fn complex_to_json(t: &TwoTermComplex) -> Value {
    let mut v = complex_body(t);
    v["format"] = json!(COMPLEX_FORMAT);
    v["group"] = group_to_json(t.group());
    v
}

pub fn complex_from_json(v: &Value, resolve: Resolver) -> Result<TwoTermComplex> {
    check_format(v, COMPLEX_FORMAT)?;
    let g = group_from_json(field(v, "group")?, resolve)?;
    complex_from_body(v, &g)
}

// ---------------------------------------------------------------- graphs

/// `{"format", "group", "vertices": [member lists], "edges": [{"head",
/// "tail", "subgroup"}]}`.
pub fn graph_to_json(graph: &PatchingGraph) -> Value {
    let vertices: Vec<&[usize]> = graph.vertices().iter().map(Subgroup::members).collect();
    let edges: Vec<Value> = graph
        .edges()
        .iter()
        .map(|e| json!({"head": e.head, "tail": e.tail, "subgroup": e.subgroup.members()}))
        .collect();
    json!({
        "format": GRAPH_FORMAT,
        "group": group_to_json(graph.gamma()),
        "vertices": vertices,
        "edges": edges,
    })
}

pub fn graph_from_json(v: &Value, resolve: Resolver) -> Result<PatchingGraph> {
    check_format(v, GRAPH_FORMAT)?;
    let g = group_from_json(field(v, "group")?, resolve)?;
    let vertices = array(field(v, "vertices")?, "vertices")?
        .iter()
        .map(|x| subgroup_from_json(x, &g))
        .collect::<Result<Vec<_>>>()?;
    let edges = array(field(v, "edges")?, "edges")?
        .iter()
        .map(|e| {
            Ok(Edge {
                head: usize_from_json(field(e, "head")?)?,
                tail: usize_from_json(field(e, "tail")?)?,
                subgroup: subgroup_from_json(field(e, "subgroup")?, &g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    build_patching_graph(&g, vertices, edges)
}

// ---------------------------------------------------------------- crossed modules

/// `{"format", "g", "h", "galois": groups, "boundary": [∂(x) per x],
/// "action": [[h·x per x] per h], "galois_g": [[ˢx per x] per s],
/// "galois_h": [[ˢy per y] per s]}`.
pub fn crossed_to_json(c: &FiniteCrossedModule) -> Value {
    json!({
        "format": CROSSED_FORMAT,
        "g": group_to_json(&c.g),
        "h": group_to_json(&c.h),
        "galois": group_to_json(&c.galois),
        "boundary": c.boundary,
        "action": c.action,
        "galois_g": c.galois_g,
        "galois_h": c.galois_h,
    })
}

pub fn crossed_from_json(v: &Value, resolve: Resolver) -> Result<FiniteCrossedModule> {
    check_format(v, CROSSED_FORMAT)?;
    let g = group_from_json(field(v, "g")?, resolve)?;
    let h = group_from_json(field(v, "h")?, resolve)?;
    let galois = group_from_json(field(v, "galois")?, resolve)?;
    let trivial = |rows: usize, n: usize| vec![(0..n).collect::<Vec<usize>>(); rows];
    let table_or = |key: &str, rows: usize, n: usize| match v.get(key) {
        Some(t) => usize_table(t, key),
        None => Ok(trivial(rows, n)),
    };
    let boundary = usize_list(field(v, "boundary")?, "boundary")?;
    let action = table_or("action", h.order(), g.order())?;
    let galois_g = table_or("galois_g", galois.order(), g.order())?;
    let galois_h = table_or("galois_h", galois.order(), h.order())?;
    FiniteCrossedModule::new(g, h, boundary, action, galois, galois_g, galois_h)
}

// ---------------------------------------------------------------- certificates

fn kind_name(k: MoveKind) -> &'static str {
    match k {
        MoveKind::PushoutMono => "pushout-mono",
        MoveKind::PullbackEpi => "pullback-epi",
        MoveKind::Duality => "duality",
    }
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::Forward => "forward",
        Direction::Backward => "backward",
    }
}

/// Everything needed for an independent replay: input, output, every move
/// with both complexes and both components, and the vanishing table.
pub fn certificate_to_json(c: &ResolutionCertificate) -> Value {
    let moves: Vec<Value> = c
        .moves
        .iter()
        .map(|m| {
            json!({
                "kind": kind_name(m.kind),
                "direction": direction_name(m.direction),
                "dualized": m.dualized,
                "source": complex_body(&m.map.source),
                "target": complex_body(&m.map.target),
                "minus_one": matrix_to_json(&m.map.minus_one),
                "zero": matrix_to_json(&m.map.zero),
            })
        })
        .collect();
    let vanishing: Vec<Value> = c
        .vanishing
        .iter()
        .map(|e| {
            json!({
                "subgroup": e.subgroup,
                "factors": e.factors.iter().map(bigint_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "format": CERTIFICATE_FORMAT,
        "mode": c.mode.name(),
        "group": group_to_json(c.input.group()),
        "input": complex_body(&c.input),
        "output": complex_body(&c.output),
        "moves": moves,
        "vanishing": vanishing,
    })
}

/// Parses without validating the moves, so that a broken certificate can
/// still be loaded and rejected by replay.
pub fn certificate_from_json(v: &Value, resolve: Resolver) -> Result<ResolutionCertificate> {
    check_format(v, CERTIFICATE_FORMAT)?;
    let g = group_from_json(field(v, "group")?, resolve)?;
    let mode = match field(v, "mode")?.as_str() {
        Some("coflasque") => ClassMode::Coflasque,
        Some("flasque") => ClassMode::Flasque,
        _ => return Err(perr("mode must be \"coflasque\" or \"flasque\"")),
    };
    let moves = array(field(v, "moves")?, "moves")?
        .iter()
        .map(|m| {
            let kind = match field(m, "kind")?.as_str() {
                Some("pushout-mono") => MoveKind::PushoutMono,
                Some("pullback-epi") => MoveKind::PullbackEpi,
                Some("duality") => MoveKind::Duality,
                _ => return Err(perr("unknown move kind")),
            };
            let direction = match field(m, "direction")?.as_str() {
                Some("forward") => Direction::Forward,
                Some("backward") => Direction::Backward,
                _ => return Err(perr("unknown move direction")),
            };
            let source = complex_from_body(field(m, "source")?, &g)?;
            let target = complex_from_body(field(m, "target")?, &g)?;
            let minus_one = matrix_from_json(field(m, "minus_one")?, target.l1().rank(), source.l1().rank())?;
            let zero = matrix_from_json(field(m, "zero")?, target.l2().rank(), source.l2().rank())?;
            Ok(Move {
                kind,
                direction,
                dualized: field(m, "dualized")?.as_bool().unwrap_or(false),
                map: ComplexMap {
                    source,
                    target,
                    minus_one,
                    zero,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let vanishing = array(field(v, "vanishing")?, "vanishing")?
        .iter()
        .map(|e| {
            Ok(VanishingEntry {
                subgroup: usize_list(field(e, "subgroup")?, "subgroup")?,
                factors: array(field(e, "factors")?, "factors")?
                    .iter()
                    .map(bigint_from_json)
                    .collect::<Result<Vec<_>>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResolutionCertificate {
        mode,
        input: complex_from_body(field(v, "input")?, &g)?,
        output: complex_from_body(field(v, "output")?, &g)?,
        moves,
        vanishing,
    })
}

/// Reads the `"format"` field of a document.
pub fn format_of(v: &Value) -> Option<&str> {
    v.get("format").and_then(Value::as_str)
}

/// Stable pretty-printed serialization (object keys sorted).
pub fn to_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(e.to_string()))
}

/// A matrix block with unknown shape, for standalone matrix inputs.
pub fn any_matrix_from_json(v: &Value) -> Result<IntMatrix> {
    matrix_from_json_any(v, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::coflasque_resolution;
    use crate::groups::named;

    fn no_refs(s: &str) -> Result<Arc<FiniteGroup>> {
        Err(perr(format!("unexpected reference {s}")))
    }

    #[test]
    fn group_round_trip() {
        for g in [named::cyclic(4), named::symmetric3(), named::trivial(), named::klein_four()] {
            let v = group_to_json(&g);
            assert_eq!(*group_from_json(&v, &no_refs).unwrap(), g);
        }
        let (q, _) = Subgroup::whole(&Arc::new(named::dihedral(4))).to_group();
        let v = group_to_json(&q);
        assert!(v.get("table").is_some());
        assert_eq!(*group_from_json(&v, &no_refs).unwrap(), q);
    }

    #[test]
    fn big_entries_are_strings() {
        let x: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert!(bigint_to_json(&x).is_string());
        assert_eq!(bigint_from_json(&bigint_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn wrong_format_is_rejected() {
        let g = Arc::new(named::cyclic(2));
        let mut v = lattice_to_json(&GLattice::trivial(&g, 1));
        v["format"] = json!("galcoh/lattice/v0");
        assert!(matches!(lattice_from_json(&v, &no_refs), Err(Error::Parse(_))));
    }

    #[test]
    fn certificate_round_trip_replays() {
        let g = Arc::new(named::cyclic(2));
        let sign = GLattice::new(g.clone(), vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap();
        let t = TwoTermComplex::new(GLattice::zero(&g), sign, IntMatrix::zeros(1, 0)).unwrap();
        let r = coflasque_resolution(&t).unwrap();
        let v = certificate_to_json(&r.certificate);
        let back = certificate_from_json(&v, &no_refs).unwrap();
        assert_eq!(back, r.certificate);
        assert!(back.replay().ok());
        assert_eq!(to_string(&certificate_to_json(&back)), to_string(&v));
    }
}
