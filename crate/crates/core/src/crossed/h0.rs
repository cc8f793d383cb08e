//! `ℍ^0` of a finite crossed module by exhaustive enumeration of 0-cocycles.

use std::collections::HashMap;

use super::FiniteCrossedModule;
use crate::error::{Error, Result};
use crate::groups::Subgroup;

pub const DEFAULT_ENUMERATION_LIMIT: u128 = 1_000_000;

/// `(α, h)` with `α` listed over the members of the Galois subgroup in
/// increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroCocycle {
    pub alpha: Vec<usize>,
    pub h: usize,
}

#[derive(Clone, Debug)]
pub struct HZero {
    /// Members of the Galois subgroup, the index set of every `alpha`.
    pub galois_members: Vec<usize>,
    /// All 0-cocycles in lexicographic order of `(alpha, h)`.
    pub cocycles: Vec<ZeroCocycle>,
    /// Class index of each cocycle.
    pub class_of: Vec<usize>,
    /// Lexicographically least cocycle of each class.
    pub representatives: Vec<ZeroCocycle>,
    pub neutral: usize,
    pub table: Vec<Vec<usize>>,
    pub coboundaries: Vec<ZeroCocycle>,
}

struct Ctx<'a> {
    c: &'a FiniteCrossedModule,
    members: Vec<usize>,
    pos: HashMap<usize, usize>,
}

impl Ctx<'_> {
    /// `(α, h)(β, h') = ((h·β_s) α_s, h h')`
    fn product(&self, x: &ZeroCocycle, y: &ZeroCocycle) -> ZeroCocycle {
        let g = &self.c.g;
        ZeroCocycle {
            alpha: x
                .alpha
                .iter()
                .zip(&y.alpha)
                .map(|(&a, &b)| g.mul(self.c.act(x.h, b), a))
                .collect(),
            h: self.c.h.mul(x.h, y.h),
        }
    }

    fn inverse(&self, x: &ZeroCocycle) -> ZeroCocycle {
        let hi = self.c.h.inv(x.h);
        ZeroCocycle {
            alpha: x.alpha.iter().map(|&a| self.c.act(hi, self.c.g.inv(a))).collect(),
            h: hi,
        }
    }

    /// `(δg, ∂g)` with `(δg)_s = g ˢg^{-1}`.
    fn coboundary(&self, g: usize) -> ZeroCocycle {
        let gi = self.c.g.inv(g);
        ZeroCocycle {
            alpha: self
                .members
                .iter()
                .map(|&s| self.c.g.mul(g, self.c.galois_g[s][gi]))
                .collect(),
            h: self.c.d(g),
        }
    }

    fn is_cocycle(&self, x: &ZeroCocycle) -> bool {
        let (c, g) = (self.c, &self.c.g);
        for (i, &s) in self.members.iter().enumerate() {
            if c.h.mul(c.d(x.alpha[i]), c.galois_h[s][x.h]) != x.h {
                return false;
            }
            for (j, &t) in self.members.iter().enumerate() {
                let st = self.pos[&c.galois.mul(s, t)];
                if x.alpha[st] != g.mul(x.alpha[i], c.galois_g[s][x.alpha[j]]) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn h_zero(c: &FiniteCrossedModule, sub: &Subgroup) -> Result<HZero> {
    h_zero_with_limit(c, sub, DEFAULT_ENUMERATION_LIMIT)
}

/// Enumerates all maps `α: Γ' -> G` (at most `limit` of them), keeps the
/// 0-cocycles, quotients by coboundaries and verifies the induced group law.
pub fn h_zero_with_limit(c: &FiniteCrossedModule, sub: &Subgroup, limit: u128) -> Result<HZero> {
    c.check_galois_subgroup(sub)?;
    let members = sub.members().to_vec();
    let (ng, k) = (c.g.order(), members.len());
    let needed = (ng as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > limit {
        return Err(Error::SizeLimit {
            what: "0-cochain enumeration",
            needed,
            limit,
        });
    }
    let ctx = Ctx {
        c,
        pos: members.iter().enumerate().map(|(i, &s)| (s, i)).collect(),
        members,
    };
    let mut cocycles = vec![];
    let mut alpha = vec![0usize; k];
    'outer: loop {
        for h in c.h.elements() {
            let z = ZeroCocycle {
                alpha: alpha.clone(),
                h,
            };
            if ctx.is_cocycle(&z) {
                cocycles.push(z);
            }
        }
        let mut i = k;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            alpha[i] += 1;
            if alpha[i] < ng {
                break;
            }
            alpha[i] = 0;
        }
    }
    let index: HashMap<ZeroCocycle, usize> =
        cocycles.iter().cloned().enumerate().map(|(i, z)| (z, i)).collect();
    let coboundaries: Vec<ZeroCocycle> = {
        let mut v: Vec<ZeroCocycle> = c.g.elements().map(|g| ctx.coboundary(g)).collect();
        v.sort();
        v.dedup();
        v
    };
    for b in &coboundaries {
        if !index.contains_key(b) {
            return Err(Error::Verification("coboundary is not a cocycle".into()));
        }
    }
    // Classes are orbits of (α, h) ↦ (g α_s ˢg^{-1}, ∂(g) h), i.e. left
    // multiplication by coboundaries.
    let none = usize::MAX;
    let mut class_of = vec![none; cocycles.len()];
    let mut representatives = vec![];
    for i in 0..cocycles.len() {
        if class_of[i] != none {
            continue;
        }
        let cls = representatives.len();
        representatives.push(cocycles[i].clone());
        for b in &coboundaries {
            let y = ctx.product(b, &cocycles[i]);
            let j = *index
                .get(&y)
                .ok_or_else(|| Error::Verification("cocycles are not closed under coboundaries".into()))?;
            class_of[j] = cls;
        }
    }
    let n = representatives.len();
    let lookup = |z: &ZeroCocycle| -> Result<usize> {
        index
            .get(z)
            .map(|&i| class_of[i])
            .ok_or_else(|| Error::Verification("product of cocycles is not a cocycle".into()))
    };
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            table[a][b] = lookup(&ctx.product(&representatives[a], &representatives[b]))?;
        }
    }
    for (x, &cx) in cocycles.iter().zip(&class_of) {
        for (y, &cy) in cocycles.iter().zip(&class_of) {
            if lookup(&ctx.product(x, y))? != table[cx][cy] {
                return Err(Error::Verification("group law depends on representatives".into()));
            }
        }
        for b in &coboundaries {
            let conj = ctx.product(&ctx.product(x, b), &ctx.inverse(x));
            if coboundaries.binary_search(&conj).is_err() {
                return Err(Error::Verification("coboundaries are not normal".into()));
            }
        }
    }
    let unit = ZeroCocycle {
        alpha: vec![c.g.identity(); k],
        h: c.h.identity(),
    };
    let neutral = lookup(&unit)?;
    let hz = HZero {
        galois_members: ctx.members,
        cocycles,
        class_of,
        representatives,
        neutral,
        table,
        coboundaries,
    };
    hz.verify_group_axioms()?;
    Ok(hz)
}

impl HZero {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_of_cocycle(&self, z: &ZeroCocycle) -> Option<usize> {
        self.cocycles.binary_search(z).ok().map(|i| self.class_of[i])
    }

    /// Class of the product cocycle of the two class representatives.
    pub fn product_class(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn verify_group_axioms(&self) -> Result<()> {
        let n = self.order();
        let t = &self.table;
        let e = self.neutral;
        for a in 0..n {
            if t[e][a] != a || t[a][e] != a {
                return Err(Error::Verification("neutral class is not neutral".into()));
            }
            if !(0..n).any(|b| t[a][b] == e) {
                return Err(Error::Verification(format!("class {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        return Err(Error::Verification("group law is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::z2_zero_z2;
    use super::*;
    use crate::groups::named;
    use std::sync::Arc;

    #[test]
    fn z2_zero_z2_over_z2() {
        let c = z2_zero_z2(named::cyclic(2));
        let hz = h_zero(&c, &Subgroup::whole(&c.galois)).unwrap();
        assert_eq!(hz.order(), 4);
        assert!((0..4).all(|a| hz.product_class(a, a) == hz.neutral));
        assert_eq!(hz.representatives[0], ZeroCocycle { alpha: vec![0, 0], h: 0 });
    }

    #[test]
    fn trivial_galois_gives_coker() {
        let z2 = Arc::new(named::cyclic(2));
        let one = Arc::new(named::trivial());
        let c = FiniteCrossedModule::with_trivial_galois(
            z2.clone(),
            z2,
            vec![0, 1],
            vec![vec![0, 1]; 2],
            one,
        )
        .unwrap();
        assert!(c.first_violation().is_none());
        assert_eq!(h_zero(&c, &Subgroup::whole(&c.galois)).unwrap().order(), 1);

        let s3 = Arc::new(named::symmetric3());
        let c = FiniteCrossedModule::identity_conjugation(s3.clone(), Arc::new(named::cyclic(2)));
        let hz = h_zero(&c, &Subgroup::whole(&c.galois)).unwrap();
        assert_eq!(hz.order(), 1);
    }

    #[test]
    fn degenerate_module_gives_fixed_points() {
        // [1 -> S3] with Γ = Z/2 acting by conjugation with a transposition.
        let s3 = Arc::new(named::symmetric3());
        let one = Arc::new(named::trivial());
        let gamma = Arc::new(named::cyclic(2));
        let tau = s3.generators()[0];
        let conj: Vec<usize> = s3.elements().map(|x| s3.conjugate(tau, x)).collect();
        let c = FiniteCrossedModule::new(
            one,
            s3.clone(),
            vec![0],
            vec![vec![0]; 6],
            gamma.clone(),
            vec![vec![0]; 2],
            vec![(0..6).collect(), conj],
        )
        .unwrap();
        assert!(c.first_violation().is_none());
        let hz = h_zero(&c, &Subgroup::whole(&gamma)).unwrap();
        assert_eq!(hz.order(), 2);
        assert_eq!(h_zero(&c, &Subgroup::trivial(&gamma)).unwrap().order(), 6);
        assert!(!h_zero(&c, &Subgroup::trivial(&gamma)).unwrap().is_abelian());
    }

    #[test]
    fn enumeration_limit() {
        let s3 = Arc::new(named::symmetric3());
        let c = FiniteCrossedModule::identity_conjugation(s3, Arc::new(named::cyclic(4)));
        let r = h_zero_with_limit(&c, &Subgroup::whole(&c.galois), 1000);
        assert!(matches!(r, Err(Error::SizeLimit { needed: 1296, .. })));
    }
}
