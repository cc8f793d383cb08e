use std::sync::Arc;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Left cosets `xH` with the left multiplication action of the group.
///
/// Coset 0 is `H`; the rest are ordered by their smallest element, which is
/// also the chosen representative (coset 0 is represented by the identity).
#[derive(Clone, Debug)]
pub struct CosetSpace {
    group: Arc<FiniteGroup>,
    subgroup: Subgroup,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    /// `action[g][c]` is the coset `g * c`.
    action: Vec<Vec<usize>>,
}

pub fn coset_action(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<CosetSpace> {
    if **h.parent() != **g {
        return Err(Error::Membership("subgroup belongs to a different group".into()));
    }
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = vec![g.identity()];
    for &m in h.members() {
        coset_of[m] = 0;
    }
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &m in h.members() {
            coset_of[g.mul(x, m)] = c;
        }
    }
    let action = g
        .elements()
        .map(|a| reps.iter().map(|&r| coset_of[g.mul(a, r)]).collect())
        .collect();
    Ok(CosetSpace {
        group: g.clone(),
        subgroup: h.clone(),
        reps,
        coset_of,
        action,
    })
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    pub fn act(&self, g: usize, c: usize) -> usize {
        self.action[g][c]
    }

    /// Members of coset `c`.
    pub fn coset(&self, c: usize) -> Vec<usize> {
        let mut m: Vec<usize> = self
            .subgroup
            .members()
            .iter()
            .map(|&h| self.group.mul(self.reps[c], h))
            .collect();
        m.sort_unstable();
        m
    }

    /// For `g` and coset `c`: the element `h` of `H` with
    /// `g * rep(c) = rep(g c) * h`.
    pub fn cocycle(&self, g: usize, c: usize) -> usize {
        let gr = self.group.mul(g, self.reps[c]);
        let r2 = self.reps[self.action[g][c]];
        self.group.mul(self.group.inv(r2), gr)
    }
}
