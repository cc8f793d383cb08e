//! Oracles shared by the integration tests. They recompute values from
//! definitions (unnormalized cochains, direct set quotients) and use the
//! library only for group tables, lattice actions and Smith normal form.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use galcoh::crossed::FiniteCrossedModule;
use galcoh::groups::{FiniteGroup, Subgroup};
use galcoh::lattice::{invariant_factors, smith_normal_form, AbGroup, GLattice, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Matrix of the unnormalized coboundary `C^n(H, L) -> C^{n+1}(H, L)`,
/// cochains indexed by tuples over `members` (base `|H|`, first entry most
/// significant) times the rank.
pub fn unnormalized_coboundary(g: &FiniteGroup, members: &[usize], l: &GLattice, n: usize) -> IntMatrix {
    let k = members.len();
    let r = l.rank();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let rows = k.pow(n as u32 + 1) * r;
    let cols = k.pow(n as u32) * r;
    let mut d = IntMatrix::zeros(rows, cols);
    let encode = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * k + x);
    for idx in 0..k.pow(n as u32 + 1) {
        let mut t = vec![0; n + 1];
        let mut x = idx;
        for i in (0..=n).rev() {
            t[i] = x % k;
            x /= k;
        }
        // g_1 · φ(g_2, ..., g_{n+1})
        let a = l.action(members[t[0]]);
        let c = encode(&t[1..]);
        for i in 0..r {
            for j in 0..r {
                d[(idx * r + i, c * r + j)] += &a[(i, j)];
            }
        }
        // Σ (-1)^i φ(..., g_i g_{i+1}, ...)
        for i in 0..n {
            let mut s: Vec<usize> = t[..i].to_vec();
            s.push(pos[&g.mul(members[t[i]], members[t[i + 1]])]);
            s.extend_from_slice(&t[i + 2..]);
            let c = encode(&s);
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            for j in 0..r {
                d[(idx * r + j, c * r + j)] += BigInt::from(sign);
            }
        }
        // (-1)^{n+1} φ(g_1, ..., g_n)
        let c = encode(&t[..n]);
        let sign = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
        for j in 0..r {
            d[(idx * r + j, c * r + j)] += BigInt::from(sign);
        }
    }
    d
}

fn rank_and_torsion(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    if m.rows() == 0 || m.cols() == 0 {
        return (0, vec![]);
    }
    let diag = smith_normal_form(m).diagonal();
    let nz: Vec<BigInt> = diag.into_iter().filter(|x| !x.is_zero()).collect();
    let torsion = nz.iter().filter(|x| !x.is_one()).cloned().collect();
    (nz.len(), torsion)
}

/// `H^n(H, L)` from unnormalized cochains. Since `ker d_n` is saturated,
/// the torsion of `ker d_n / im d_{n-1}` is the torsion of `coker d_{n-1}`.
pub fn bar_oracle(h: &Subgroup, l: &GLattice, n: usize) -> AbGroup {
    let g = h.parent();
    let members = h.members();
    let dn = unnormalized_coboundary(g, members, l, n);
    let (rank_n, _) = rank_and_torsion(&dn);
    let (rank_prev, torsion) = if n == 0 {
        (0, vec![])
    } else {
        rank_and_torsion(&unnormalized_coboundary(g, members, l, n - 1))
    };
    let free = dn.cols() - rank_n - rank_prev;
    let mut factors = torsion;
    factors.extend(std::iter::repeat_n(BigInt::zero(), free));
    AbGroup::new(factors)
}

/// `Ĥ^{-1}(H, L) = ker N / I_H L`, with the same saturation argument.
pub fn tate_minus_one_oracle(h: &Subgroup, l: &GLattice) -> AbGroup {
    let r = l.rank();
    let mut norm = IntMatrix::zeros(r, r);
    let mut aug = IntMatrix::zeros(r, 0);
    for &x in h.members() {
        norm = norm.add(l.action(x));
        aug = aug.hstack(&l.action(x).sub(&IntMatrix::identity(r)));
    }
    let (rank_n, _) = rank_and_torsion(&norm);
    let (rank_i, torsion) = rank_and_torsion(&aug);
    let mut factors = torsion;
    factors.extend(std::iter::repeat_n(BigInt::zero(), r - rank_n - rank_i));
    AbGroup::new(factors)
}

pub fn abgroup(factors: &[i64]) -> AbGroup {
    AbGroup::new(factors.iter().map(|&x| BigInt::from(x)).collect())
}

/// The same lattice over another group with an identical multiplication
/// table (element ids coincide, generators may differ).
pub fn transport(l: &GLattice, g: &Arc<FiniteGroup>) -> Option<GLattice> {
    if g.table() != l.group().table() || g.identity() != l.group().identity() {
        return None;
    }
    let gens = g.generators().iter().map(|&s| l.action(s).clone()).collect();
    GLattice::with_rank(g.clone(), l.rank(), gens).ok()
}

/// `Σ_g ρ_2(g) A ρ_1(g)^{-1}`, an equivariant map.
pub fn average(l1: &GLattice, l2: &GLattice, a: &IntMatrix) -> IntMatrix {
    let g = l1.group();
    let mut d = IntMatrix::zeros(l2.rank(), l1.rank());
    for x in g.elements() {
        d = d.add(&(&(l2.action(x) * a) * l1.action(g.inv(x))));
    }
    d
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::from_i64(rows, cols, &data)
}

/// Classes of 0-cocycles of `c` over `sub` by brute force: every map
/// `α: Γ' -> G` and every `h`, the two cocycle identities checked from the
/// definition, and classes formed by searching for a `g` relating two
/// cocycles. Returns the class sizes in first-appearance order.
pub fn h_zero_oracle(c: &FiniteCrossedModule, sub: &Subgroup) -> Vec<usize> {
    let (g, h, gamma) = (&*c.g, &*c.h, &*c.galois);
    let members = sub.members();
    let k = members.len();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut cocycles: Vec<(Vec<usize>, usize)> = vec![];
    let total = g.order().pow(k as u32);
    for code in 0..total {
        let mut alpha = vec![0; k];
        let mut x = code;
        for a in alpha.iter_mut() {
            *a = x % g.order();
            x /= g.order();
        }
        for hh in h.elements() {
            let mut ok = true;
            for (i, &s) in members.iter().enumerate() {
                // ∂(α_s) · ˢh = h
                if h.mul(c.boundary[alpha[i]], c.galois_h[s][hh]) != hh {
                    ok = false;
                }
                for (j, &t) in members.iter().enumerate() {
                    // α_{st} = α_s · ˢα_t
                    let st = pos[&gamma.mul(s, t)];
                    if alpha[st] != g.mul(alpha[i], c.galois_g[s][alpha[j]]) {
                        ok = false;
                    }
                }
            }
            if ok {
                cocycles.push((alpha.clone(), hh));
            }
        }
    }
    let related = |x: &(Vec<usize>, usize), y: &(Vec<usize>, usize)| {
        g.elements().any(|gg| {
            let gi = g.inv(gg);
            h.mul(c.boundary[gg], x.1) == y.1
                && members
                    .iter()
                    .enumerate()
                    .all(|(i, &s)| g.mul(g.mul(gg, x.0[i]), c.galois_g[s][gi]) == y.0[i])
        })
    };
    let mut reps: Vec<usize> = vec![];
    let mut sizes: Vec<usize> = vec![];
    for i in 0..cocycles.len() {
        match reps.iter().position(|&r| related(&cocycles[r], &cocycles[i])) {
            Some(p) => sizes[p] += 1,
            None => {
                reps.push(i);
                sizes.push(1);
            }
        }
    }
    sizes
}

/// Kernel of the stacked restriction `x ↦ (A_v x)_v` computed with one
/// Smith normal form of `[A; R]`-style block matrix: the kernel of
/// `Z^n -> ⊕ Z^{m_v} / R_v` is the projection to the first block of the
/// kernel of `[A | R]`.
pub fn stacked_kernel_order(global: &AbGroup, maps: &[(IntMatrix, AbGroup)]) -> AbGroup {
    let n = global.ngens();
    let m: usize = maps.iter().map(|(a, _)| a.rows()).sum();
    let rels: usize = maps.iter().map(|(_, t)| t.ngens()).sum();
    let mut big = IntMatrix::zeros(m, n + rels);
    let (mut row, mut col) = (0, n);
    for (a, t) in maps {
        big.set_block(row, 0, a);
        for (i, f) in t.factors().iter().enumerate() {
            big[(row + i, col + i)] = f.clone();
        }
        row += a.rows();
        col += t.ngens();
    }
    let kern = galcoh::lattice::linalg::kernel_basis(&big);
    let proj = kern.block(0, 0, n, kern.cols());
    // kernel of the stacked map inside the global group Z^n / diag(factors)
    let rel = global.relations();
    let gens = proj.hstack(&rel);
    if gens.cols() == 0 || n == 0 {
        return AbGroup::trivial();
    }
    // (span(proj) + rel) / rel
    let s = galcoh::lattice::Subquotient::new(galcoh::lattice::linalg::image_basis(&gens), &rel).unwrap();
    s.group()
}

pub fn factors_i64(g: &AbGroup) -> Vec<i64> {
    g.canonical_factors().iter().map(|x| i64::try_from(x).unwrap()).collect()
}

pub fn snf_factors(m: &IntMatrix) -> Vec<BigInt> {
    invariant_factors(m)
}
