//! Finite crossed modules `[G -> H]` with a finite Galois-model group `Γ`
//! acting on both terms, and their cocycle-level `ℍ^{-1}` and `ℍ^0`.

mod h0;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

pub use h0::{h_zero, h_zero_with_limit, HZero, ZeroCocycle, DEFAULT_ENUMERATION_LIMIT};

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};
use crate::lattice::{AbGroup, IntMatrix, Subquotient};

/// `∂: G -> H` with a left action of `H` on `G` and `Γ` acting on both.
/// Tables are indexed by element ids: `action[h][g] = h·g`,
/// `galois_g[s][g] = ˢg`, `galois_h[s][h] = ˢh`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCrossedModule {
    pub g: Arc<FiniteGroup>,
    pub h: Arc<FiniteGroup>,
    pub boundary: Vec<usize>,
    pub action: Vec<Vec<usize>>,
    pub galois: Arc<FiniteGroup>,
    pub galois_g: Vec<Vec<usize>>,
    pub galois_h: Vec<Vec<usize>>,
}

/// The first failing identity and the element ids that break it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

fn trivial_tables(gamma: &FiniteGroup, n: usize) -> Vec<Vec<usize>> {
    vec![(0..n).collect(); gamma.order()]
}

impl FiniteCrossedModule {
    /// Checks table shapes only; the axioms are checked by [`Self::validate`].
    pub fn new(
        g: Arc<FiniteGroup>,
        h: Arc<FiniteGroup>,
        boundary: Vec<usize>,
        action: Vec<Vec<usize>>,
        galois: Arc<FiniteGroup>,
        galois_g: Vec<Vec<usize>>,
        galois_h: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let (ng, nh, ns) = (g.order(), h.order(), galois.order());
        let table_ok = |t: &Vec<Vec<usize>>, rows: usize, n: usize| {
            t.len() == rows && t.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n))
        };
        if boundary.len() != ng || boundary.iter().any(|&x| x >= nh) {
            return Err(Error::Mismatch("boundary table has the wrong shape".into()));
        }
        if !table_ok(&action, nh, ng) {
            return Err(Error::Mismatch("action table has the wrong shape".into()));
        }
        if !table_ok(&galois_g, ns, ng) || !table_ok(&galois_h, ns, nh) {
            return Err(Error::Mismatch("Galois action table has the wrong shape".into()));
        }
        Ok(FiniteCrossedModule {
            g,
            h,
            boundary,
            action,
            galois,
            galois_g,
            galois_h,
        })
    }

    /// `[G -> H]` of abelian groups with trivial `H`-action.
    pub fn abelian(
        g: Arc<FiniteGroup>,
        h: Arc<FiniteGroup>,
        boundary: Vec<usize>,
        galois: Arc<FiniteGroup>,
        galois_g: Vec<Vec<usize>>,
        galois_h: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let action = trivial_tables(&h, g.order());
        Self::new(g, h, boundary, action, galois, galois_g, galois_h)
    }

    /// `[G -id-> G]` with conjugation, `Γ` acting trivially.
    pub fn identity_conjugation(g: Arc<FiniteGroup>, galois: Arc<FiniteGroup>) -> Self {
        let n = g.order();
        let action = (0..n).map(|x| (0..n).map(|y| g.conjugate(x, y)).collect()).collect();
        let t = trivial_tables(&galois, n);
        FiniteCrossedModule {
            boundary: (0..n).collect(),
            g: g.clone(),
            h: g,
            action,
            galois_g: t.clone(),
            galois_h: t,
            galois,
        }
    }

    /// `Γ` acting trivially on both terms.
    pub fn with_trivial_galois(
        g: Arc<FiniteGroup>,
        h: Arc<FiniteGroup>,
        boundary: Vec<usize>,
        action: Vec<Vec<usize>>,
        galois: Arc<FiniteGroup>,
    ) -> Result<Self> {
        let gg = trivial_tables(&galois, g.order());
        let gh = trivial_tables(&galois, h.order());
        Self::new(g, h, boundary, action, galois, gg, gh)
    }

    pub fn act(&self, h: usize, g: usize) -> usize {
        self.action[h][g]
    }

    pub fn d(&self, g: usize) -> usize {
        self.boundary[g]
    }

    pub fn first_violation(&self) -> Option<Violation> {
        let (g, h, s) = (&*self.g, &*self.h, &*self.galois);
        let fail = |axiom, witness: Vec<usize>| Some(Violation { axiom, witness });
        for a in g.elements() {
            for b in g.elements() {
                if self.d(g.mul(a, b)) != h.mul(self.d(a), self.d(b)) {
                    return fail("boundary is a homomorphism", vec![a, b]);
                }
            }
        }
        for x in h.elements() {
            for a in g.elements() {
                for b in g.elements() {
                    if self.act(x, g.mul(a, b)) != g.mul(self.act(x, a), self.act(x, b)) {
                        return fail("H acts by automorphisms", vec![x, a, b]);
                    }
                }
            }
        }
        for a in g.elements() {
            if self.act(h.identity(), a) != a {
                return fail("identity of H acts trivially", vec![a]);
            }
        }
        for x in h.elements() {
            for y in h.elements() {
                for a in g.elements() {
                    if self.act(h.mul(x, y), a) != self.act(x, self.act(y, a)) {
                        return fail("H action is associative", vec![x, y, a]);
                    }
                }
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                if g.conjugate(a, b) != self.act(self.d(a), b) {
                    return fail("g g' g^-1 = d(g).g'", vec![a, b]);
                }
            }
        }
        for x in h.elements() {
            for a in g.elements() {
                if self.d(self.act(x, a)) != h.conjugate(x, self.d(a)) {
                    return fail("d(h.g) = h d(g) h^-1", vec![x, a]);
                }
            }
        }
        for t in s.elements() {
            let (tg, th) = (&self.galois_g[t], &self.galois_h[t]);
            for a in g.elements() {
                for b in g.elements() {
                    if tg[g.mul(a, b)] != g.mul(tg[a], tg[b]) {
                        return fail("Galois acts on G by automorphisms", vec![t, a, b]);
                    }
                }
            }
            for x in h.elements() {
                for y in h.elements() {
                    if th[h.mul(x, y)] != h.mul(th[x], th[y]) {
                        return fail("Galois acts on H by automorphisms", vec![t, x, y]);
                    }
                }
            }
            for a in g.elements() {
                if self.d(tg[a]) != th[self.d(a)] {
                    return fail("boundary is Galois-equivariant", vec![t, a]);
                }
            }
            for x in h.elements() {
                for a in g.elements() {
                    if tg[self.act(x, a)] != self.act(th[x], tg[a]) {
                        return fail("Galois action compatible with H action", vec![t, x, a]);
                    }
                }
            }
            for u in s.elements() {
                let tu = s.mul(t, u);
                if let Some(a) = g.elements().find(|&a| self.galois_g[tu][a] != tg[self.galois_g[u][a]]) {
                    return fail("Galois action on G is an action", vec![t, u, a]);
                }
                if let Some(x) = h.elements().find(|&x| self.galois_h[tu][x] != th[self.galois_h[u][x]]) {
                    return fail("Galois action on H is an action", vec![t, u, x]);
                }
            }
        }
        let e = s.identity();
        if let Some(a) = g.elements().find(|&a| self.galois_g[e][a] != a) {
            return fail("identity of Galois acts trivially on G", vec![a]);
        }
        if let Some(x) = h.elements().find(|&x| self.galois_h[e][x] != x) {
            return fail("identity of Galois acts trivially on H", vec![x]);
        }
        None
    }

    pub fn validate(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some(v) => Err(Error::Precondition(format!(
                "crossed module axiom fails: {} at {:?}",
                v.axiom, v.witness
            ))),
        }
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.g.elements().filter(|&a| self.d(a) == self.h.identity()).collect()
    }

    /// Whether `ker ∂` is central in `G`.
    pub fn kernel_is_central(&self) -> bool {
        let g = &self.g;
        self.kernel()
            .iter()
            .all(|&k| g.elements().all(|a| g.mul(k, a) == g.mul(a, k)))
    }

    fn check_galois_subgroup(&self, sub: &Subgroup) -> Result<()> {
        if **sub.parent() != *self.galois {
            return Err(Error::Membership("subgroup of a different Galois group".into()));
        }
        Ok(())
    }
}

/// Structure of a finite abelian group given by a subset of a group table:
/// exponent vectors over greedy generators, with relations read off from
/// collisions in the box of exponents.
pub fn abelian_invariants(g: &FiniteGroup, members: &[usize]) -> Result<AbGroup> {
    let mut gens: Vec<usize> = vec![];
    let mut reached = vec![g.identity()];
    for &x in members {
        if !reached.contains(&x) {
            gens.push(x);
            reached = g.closure(&gens);
        }
    }
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    if reached != sorted {
        return Err(Error::Precondition("subset is not a subgroup".into()));
    }
    if gens.iter().any(|&a| gens.iter().any(|&b| g.mul(a, b) != g.mul(b, a))) {
        return Err(Error::Precondition("subgroup is not abelian".into()));
    }
    let k = gens.len();
    let orders: Vec<usize> = gens.iter().map(|&a| g.element_order(a)).collect();
    let mut cols: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut v = vec![BigInt::from(0); k];
            v[i] = BigInt::from(orders[i]);
            v
        })
        .collect();
    let mut first: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut exps = vec![0usize; k];
    loop {
        let mut val = g.identity();
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                val = g.mul(val, gens[i]);
            }
        }
        match first.get(&val) {
            Some(prev) => cols.push(
                exps.iter()
                    .zip(prev)
                    .map(|(&a, &b)| BigInt::from(a as i64 - b as i64))
                    .collect(),
            ),
            None => {
                first.insert(val, exps.clone());
            }
        }
        let mut i = 0;
        while i < k {
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    Ok(Subquotient::cokernel_of(&IntMatrix::from_columns(k, &cols)).group())
}

/// `ℍ^{-1} = (ker ∂)^Γ'` for a subgroup `Γ'` of the Galois group.
#[derive(Clone, Debug)]
pub struct HMinusOne {
    /// Element ids in `G`, sorted.
    pub elements: Vec<usize>,
    /// Multiplication table on positions in `elements`.
    pub table: Vec<Vec<usize>>,
    pub structure: AbGroup,
}

pub fn h_minus_one(c: &FiniteCrossedModule, sub: &Subgroup) -> Result<HMinusOne> {
    c.check_galois_subgroup(sub)?;
    let elements: Vec<usize> = c
        .kernel()
        .into_iter()
        .filter(|&a| sub.members().iter().all(|&s| c.galois_g[s][a] == a))
        .collect();
    let pos = |x: usize| elements.binary_search(&x).expect("closed under multiplication");
    let table = elements
        .iter()
        .map(|&a| elements.iter().map(|&b| pos(c.g.mul(a, b))).collect())
        .collect();
    let structure = abelian_invariants(&c.g, &elements)?;
    Ok(HMinusOne {
        elements,
        table,
        structure,
    })
}
