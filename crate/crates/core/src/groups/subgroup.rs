use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Subgroup of a finite group, stored as the sorted list of its members.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    mask: Vec<bool>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && *self.parent == *other.parent
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl Subgroup {
    fn from_sorted(parent: Arc<FiniteGroup>, members: Vec<usize>, generators: Vec<usize>) -> Self {
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup {
            parent,
            members,
            mask,
            generators,
        }
    }

    pub fn generated_by(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Result<Self> {
        if gens.iter().any(|&g| g >= parent.order()) {
            return Err(Error::Membership("generator is not an element of the group".into()));
        }
        let members = parent.closure(gens);
        Ok(Self::from_sorted(parent.clone(), members, gens.to_vec()))
    }

    /// Checks that `members` is closed under the group law.
    pub fn from_members(parent: &Arc<FiniteGroup>, members: &[usize]) -> Result<Self> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.iter().any(|&x| x >= parent.order()) {
            return Err(Error::Membership("element outside the group".into()));
        }
        let closed = parent.closure(&m);
        if closed != m {
            return Err(Error::Membership(format!("{members:?} is not a subgroup")));
        }
        let gens = minimal_generators(parent, &m);
        Ok(Self::from_sorted(parent.clone(), m, gens))
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_sorted(
            parent.clone(),
            parent.elements().collect(),
            parent.generators().to_vec(),
        )
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_sorted(parent.clone(), vec![parent.identity()], vec![])
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask.get(g).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// `x H x^-1`
    pub fn conjugate(&self, x: usize) -> Subgroup {
        let g = &self.parent;
        let mut m: Vec<usize> = self.members.iter().map(|&h| g.conjugate(x, h)).collect();
        m.sort_unstable();
        let gens = self.generators.iter().map(|&h| g.conjugate(x, h)).collect();
        Self::from_sorted(g.clone(), m, gens)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let m: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        let gens = minimal_generators(&self.parent, &m);
        Self::from_sorted(self.parent.clone(), m, gens)
    }

    pub fn is_normal(&self) -> bool {
        self.parent
            .generators()
            .iter()
            .all(|&x| self.members.iter().all(|&h| self.contains(self.parent.conjugate(x, h))))
    }

    /// The subgroup as a group in its own right, with the embedding of its
    /// elements into the parent (`embedding[i]` is the parent id of element `i`).
    pub fn to_group(&self) -> (FiniteGroup, Vec<usize>) {
        let pos: HashMap<usize, usize> = self
            .members
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i))
            .collect();
        let g = &self.parent;
        let table: Vec<Vec<usize>> = self
            .members
            .iter()
            .map(|&a| self.members.iter().map(|&b| pos[&g.mul(a, b)]).collect())
            .collect();
        let gens = self.generators.iter().map(|x| pos[x]).collect();
        let sub = FiniteGroup::from_table(table, Some(gens)).expect("subgroup table is a group");
        (sub, self.members.clone())
    }
}

/// Greedy generating set of a subgroup, in increasing element order.
fn minimal_generators(g: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut gens = vec![];
    let mut span = g.closure(&gens);
    for &m in members {
        if span.len() == members.len() {
            break;
        }
        if span.binary_search(&m).is_err() {
            gens.push(m);
            span = g.closure(&gens);
        }
    }
    gens
}

/// All subgroups, sorted by order then by member list, with conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub subgroups: Vec<Subgroup>,
    /// Conjugacy class index of each subgroup.
    pub class_of: Vec<usize>,
    /// Index (into `subgroups`) of the first subgroup of each class.
    pub class_reps: Vec<usize>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Subgroup> {
        self.class_reps.iter().map(|&i| &self.subgroups[i])
    }

    pub fn is_representative(&self, i: usize) -> bool {
        self.class_reps[self.class_of[i]] == i
    }

    pub fn position(&self, h: &Subgroup) -> Option<usize> {
        self.subgroups.iter().position(|s| s.members == h.members)
    }
}

/// Cyclic subgroups first, then joins until no new subgroup appears.
pub fn enumerate_subgroups(g: &Arc<FiniteGroup>) -> SubgroupLattice {
    let mut found: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subs: Vec<Subgroup> = vec![];
    let mut push = |s: Subgroup, subs: &mut Vec<Subgroup>| {
        if !found.contains_key(&s.members) {
            found.insert(s.members.clone(), subs.len());
            subs.push(s);
        }
    };
    push(Subgroup::trivial(g), &mut subs);
    let mut cyclic_gens = vec![];
    for a in g.elements() {
        let s = Subgroup::generated_by(g, &[a]).unwrap();
        let before = subs.len();
        push(s, &mut subs);
        if subs.len() > before {
            cyclic_gens.push(a);
        }
    }
    let mut i = 0;
    while i < subs.len() {
        for &c in &cyclic_gens {
            if subs[i].contains(c) {
                continue;
            }
            let mut gens = subs[i].generators.clone();
            gens.push(c);
            let s = Subgroup::generated_by(g, &gens).unwrap();
            push(s, &mut subs);
        }
        i += 1;
    }
    subs.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    let pos: HashMap<Vec<usize>, usize> = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members.clone(), i))
        .collect();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut class_reps = vec![];
    for i in 0..subs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = class_reps.len();
        class_reps.push(i);
        for x in g.elements() {
            let conj = subs[i].conjugate(x);
            class_of[pos[&conj.members]] = c;
        }
    }
    SubgroupLattice {
        subgroups: subs,
        class_of,
        class_reps,
    }
}

/// Whether every Sylow subgroup of `g` is cyclic. Returns the verdict and,
/// for each prime dividing the order, one Sylow subgroup.
pub fn sylow_all_cyclic(g: &Arc<FiniteGroup>) -> (bool, Vec<(usize, Subgroup)>) {
    let n = g.order();
    let lattice = enumerate_subgroups(g);
    let mut out = vec![];
    let mut all = true;
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            let mut pk = 1;
            while m.is_multiple_of(p) {
                m /= p;
                pk *= p;
            }
            let syl = lattice
                .subgroups
                .iter()
                .find(|s| s.order() == pk)
                .expect("Sylow subgroups exist")
                .clone();
            let cyclic = syl.members.iter().any(|&x| g.element_order(x) == pk);
            all &= cyclic;
            out.push((p, syl));
        }
        p += 1;
    }
    (all, out)
}
