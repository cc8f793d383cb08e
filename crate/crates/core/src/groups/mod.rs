//! Finite groups given by permutations or multiplication tables, their
//! subgroups and coset actions.

mod coset;
mod perm;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

pub use coset::{coset_action, CosetSpace};
pub use perm::{parse_cycles, Permutation};
pub(crate) use perm::max_symbol;
pub use subgroup::{enumerate_subgroups, sylow_all_cyclic, Subgroup, SubgroupLattice};

use crate::error::{Error, Result};

pub const DEFAULT_GROUP_LIMIT: usize = 64;

/// A finite group with elements `0..order`, stored as a full multiplication
/// table. Elements built from permutations keep their permutation images.
#[derive(Clone)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
    perms: Option<Vec<Permutation>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.identity == other.identity && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup(order {}, generators {:?})",
            self.order(),
            self.generators
        )
    }
}

/// Closure of the given permutations under composition, with the default
/// size limit.
pub fn build_group(generators: &[Permutation]) -> Result<FiniteGroup> {
    build_group_with_limit(generators, DEFAULT_GROUP_LIMIT)
}

/// Elements are numbered breadth-first from the identity; each dequeued
/// element `x` is extended by `s * x` for the generators `s` in the order given.
/// Products compose right to left: `(a * b)(i) = a(b(i))`.
pub fn build_group_with_limit(generators: &[Permutation], limit: usize) -> Result<FiniteGroup> {
    let degree = generators.iter().map(Permutation::degree).max().unwrap_or(0);
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(Error::InvalidGroup(
            "generator permutations act on sets of different sizes".into(),
        ));
    }
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for s in generators {
            let y = s.compose(&elements[x]);
            if !index.contains_key(&y) {
                if elements.len() >= limit {
                    return Err(Error::SizeLimit {
                        what: "group closure",
                        needed: (elements.len() + 1) as u128,
                        limit: limit as u128,
                    });
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    let n = elements.len();
    let mut mul = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            mul[a][b] = index[&elements[a].compose(&elements[b])];
        }
    }
    let gen_ids = generators.iter().map(|g| index[g]).collect();
    let mut group = FiniteGroup::assemble(mul, 0, gen_ids)?;
    group.perms = Some(elements);
    Ok(group)
}

impl FiniteGroup {
    fn assemble(mul: Vec<Vec<usize>>, identity: usize, generators: Vec<usize>) -> Result<Self> {
        let n = mul.len();
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a][b] == identity {
                    inv[a] = b;
                    break;
                }
            }
            if inv[a] == usize::MAX {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        Ok(FiniteGroup {
            mul,
            inv,
            identity,
            generators,
            perms: None,
        })
    }

    /// Group from a full multiplication table, verified exhaustively.
    /// When `generators` is `None` a generating set is chosen greedily in
    /// element order.
    pub fn from_table(table: Vec<Vec<usize>>, generators: Option<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not a square table on 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut g = FiniteGroup::assemble(table, identity, vec![])?;
        for a in 0..n {
            if g.mul[g.inv[a]][a] != identity {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
        }
        match generators {
            Some(gens) => {
                if gens.iter().any(|&x| x >= n) {
                    return Err(Error::InvalidGroup("generator out of range".into()));
                }
                if g.closure(&gens).len() != n {
                    return Err(Error::InvalidGroup("generators do not generate the group".into()));
                }
                g.generators = gens;
            }
            None => {
                let mut gens = vec![];
                let mut span = g.closure(&gens);
                for a in 0..n {
                    if span.len() == n {
                        break;
                    }
                    if !span.contains(&a) {
                        gens.push(a);
                        span = g.closure(&gens);
                    }
                }
                g.generators = gens;
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.perms.as_deref()
    }

    /// `x a x^-1`
    pub fn conjugate(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != self.identity {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// Sorted members of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Human-readable label: cycle notation when available, otherwise the id.
    pub fn label(&self, a: usize) -> String {
        match &self.perms {
            Some(p) => p[a].to_cycle_string(),
            None => format!("g{a}"),
        }
    }

    pub fn into_arc(self) -> Arc<FiniteGroup> {
        Arc::new(self)
    }

    /// Checks the stored table against the group axioms exhaustively.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                return Err(Error::InvalidGroup("identity law fails".into()));
            }
            if self.mul(a, self.inv(a)) != self.identity {
                return Err(Error::InvalidGroup("inverse law fails".into()));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup("associativity fails".into()));
                    }
                }
            }
        }
        if self.closure(&self.generators).len() != n {
            return Err(Error::InvalidGroup("generators do not generate".into()));
        }
        Ok(())
    }
}

/// Standard small groups used by fixtures and tests.
pub mod named {
    use super::*;

    fn cycle(n: usize) -> Permutation {
        Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap()
    }

    pub fn trivial() -> FiniteGroup {
        build_group(&[Permutation::identity(1)]).unwrap()
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        if n == 1 {
            return trivial();
        }
        build_group(&[cycle(n)]).unwrap()
    }

    pub fn klein_four() -> FiniteGroup {
        build_group(&[parse_cycles("(1 2)", 4).unwrap(), parse_cycles("(3 4)", 4).unwrap()]).unwrap()
    }

    pub fn elementary_abelian_2(rank: usize) -> FiniteGroup {
        let d = 2 * rank;
        let gens: Vec<Permutation> = (0..rank)
            .map(|i| {
                let mut img: Vec<usize> = (0..d).collect();
                img.swap(2 * i, 2 * i + 1);
                Permutation::from_images(img).unwrap()
            })
            .collect();
        build_group(&gens).unwrap()
    }

    pub fn symmetric3() -> FiniteGroup {
        build_group(&[parse_cycles("(1 2)", 3).unwrap(), parse_cycles("(1 2 3)", 3).unwrap()]).unwrap()
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> FiniteGroup {
        let r = cycle(n);
        let s = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        build_group(&[r, s]).unwrap()
    }

    /// `Z/m x Z/n` acting on `m + n` points.
    pub fn cyclic_product(m: usize, n: usize) -> FiniteGroup {
        let mut a: Vec<usize> = (0..m + n).collect();
        let mut b = a.clone();
        for i in 0..m {
            a[i] = (i + 1) % m;
        }
        for i in 0..n {
            b[m + i] = m + (i + 1) % n;
        }
        build_group(&[
            Permutation::from_images(a).unwrap(),
            Permutation::from_images(b).unwrap(),
        ])
        .unwrap()
    }

    pub fn alternating4() -> FiniteGroup {
        build_group(&[parse_cycles("(1 2 3)", 4).unwrap(), parse_cycles("(1 2)(3 4)", 4).unwrap()]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_generates_trivial_group() {
        let g = build_group(&[Permutation::identity(3)]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn single_transposition() {
        let g = build_group(&[parse_cycles("(1 2)", 2).unwrap()]).unwrap();
        assert_eq!(g.order(), 2);
        g.verify_axioms().unwrap();
    }

    #[test]
    fn s3_closure() {
        let g = named::symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        g.verify_axioms().unwrap();
        // breadth-first numbering: identity first, then the generators
        assert_eq!(g.identity(), 0);
        assert_eq!(g.generators(), &[1, 2]);
    }

    #[test]
    fn size_limit_reported() {
        let gens = [parse_cycles("(1 2)", 5).unwrap(), parse_cycles("(1 2 3 4 5)", 5).unwrap()];
        let err = build_group_with_limit(&gens, 64).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { .. }));
        assert_eq!(build_group_with_limit(&gens, 120).unwrap().order(), 120);
    }

    #[test]
    fn table_round_trip() {
        let g = named::dihedral(4);
        let h = FiniteGroup::from_table(g.table().to_vec(), None).unwrap();
        assert_eq!(g, h);
        h.verify_axioms().unwrap();
    }

    #[test]
    fn bad_table_rejected() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(t, None).is_err());
    }
}
