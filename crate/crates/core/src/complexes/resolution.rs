//! Flasque and coflasque resolutions of two-term complexes, with replayable
//! certificates made of elementary quasi-isomorphisms.

use num_bigint::BigInt;

use super::cts::{cts_cover_coflasque, cts_embed_coflasque};
use super::invariants::ClassMode;
use super::squares::{pullback_square, pushout_square};
use super::{ComplexMap, TwoTermComplex};
use crate::cohomology::{group_cohomology, tate_cohomology};
use crate::error::{Error, Result};
use crate::groups::enumerate_subgroups;
use crate::lattice::{FgModule, GLattice, LatticeMap};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResolveOptions {
    /// Processing order of the subgroup conjugacy representatives used by
    /// the permutation covers, as a permutation of their indices. `None`
    /// means largest subgroup first.
    pub rep_order: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    PushoutMono,
    PullbackEpi,
    /// Identification of a complex with its double dual.
    Duality,
}

/// Whether a move's map points away from the current complex in the chain
/// (`Forward`) or into it (`Backward`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub direction: Direction,
    /// Set when the move is the dual of a move computed on the dual complex.
    pub dualized: bool,
    pub map: ComplexMap,
}

/// The vanishing group for one subgroup representative: `H^1(H, C)` for
/// coflasque outputs, `Ĥ^{-1}(H, F)` for flasque outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingEntry {
    pub subgroup: Vec<usize>,
    pub factors: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionCertificate {
    pub mode: ClassMode,
    pub input: TwoTermComplex,
    pub output: TwoTermComplex,
    pub moves: Vec<Move>,
    pub vanishing: Vec<VanishingEntry>,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub resolved: TwoTermComplex,
    pub certificate: ResolutionCertificate,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReplayReport {
    /// Each move starts where the previous one ended, from input to output.
    pub chain_ok: bool,
    /// Per move: square commutes and both components are equivariant.
    pub maps_valid: Vec<bool>,
    /// Per move: both induced homology maps are isomorphisms.
    pub quasi_isomorphisms: Vec<bool>,
    pub permutation_ok: bool,
    /// The recomputed table matches the stored one and is all zero.
    pub vanishing_ok: bool,
    pub failures: Vec<String>,
}

impl ReplayReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn vanishing_table(mode: ClassMode, l: &GLattice) -> Result<Vec<VanishingEntry>> {
    let lat = enumerate_subgroups(l.group());
    lat.representatives()
        .map(|h| {
            let c = match mode {
                ClassMode::Coflasque => group_cohomology(h, l, 1)?,
                ClassMode::Flasque => tate_cohomology(h, l, -1)?,
            };
            Ok(VanishingEntry {
                subgroup: h.members().to_vec(),
                factors: c.factors(),
            })
        })
        .collect()
}

impl ResolutionCertificate {
    /// The lattice whose vanishing table certifies the mode, and the
    /// permutation part.
    fn parts(&self) -> (&GLattice, &GLattice) {
        match self.mode {
            ClassMode::Coflasque => (self.output.l1(), self.output.l2()),
            ClassMode::Flasque => (self.output.l2(), self.output.l1()),
        }
    }

    /// Re-verifies every claim from scratch.
    pub fn replay(&self) -> ReplayReport {
        let mut r = ReplayReport {
            chain_ok: true,
            ..ReplayReport::default()
        };
        let mut current = &self.input;
        for (i, mv) in self.moves.iter().enumerate() {
            let (from, to) = match mv.direction {
                Direction::Forward => (&mv.map.source, &mv.map.target),
                Direction::Backward => (&mv.map.target, &mv.map.source),
            };
            if from != current {
                r.chain_ok = false;
                r.failures.push(format!("move {i} does not start at the current complex"));
            }
            current = to;
            let valid = mv.map.validate().is_ok();
            r.maps_valid.push(valid);
            if !valid {
                r.failures.push(format!("move {i} is not a map of complexes"));
            }
            let qi = valid && matches!(mv.map.is_quasi_isomorphism(), Ok(true));
            r.quasi_isomorphisms.push(qi);
            if !qi {
                r.failures.push(format!("move {i} is not a quasi-isomorphism"));
            }
        }
        if current != &self.output {
            r.chain_ok = false;
            r.failures.push("chain does not end at the output".into());
        }
        let (special, perm) = self.parts();
        r.permutation_ok = perm.verify_permutation_certificate();
        if !r.permutation_ok {
            r.failures.push("permutation certificate does not verify".into());
        }
        r.vanishing_ok = match vanishing_table(self.mode, special) {
            Ok(t) => t == self.vanishing && t.iter().all(|e| e.factors.is_empty()),
            Err(_) => false,
        };
        if !r.vanishing_ok {
            r.failures.push("vanishing table does not verify".into());
        }
        r
    }

    /// The certificate of the dual resolution: every move dualized with its
    /// direction reversed, preceded by the double-dual identification.
    pub fn dual(&self) -> Result<ResolutionCertificate> {
        let mode = match self.mode {
            ClassMode::Coflasque => ClassMode::Flasque,
            ClassMode::Flasque => ClassMode::Coflasque,
        };
        let input = self.input.dual();
        let output = self.output.dual();
        let id = ComplexMap::new(
            input.clone(),
            input.clone(),
            crate::lattice::IntMatrix::identity(input.l1().rank()),
            crate::lattice::IntMatrix::identity(input.l2().rank()),
        )?;
        let mut moves = vec![Move {
            kind: MoveKind::Duality,
            direction: Direction::Forward,
            dualized: false,
            map: id,
        }];
        moves.extend(self.moves.iter().map(|m| Move {
            kind: m.kind,
            direction: match m.direction {
                Direction::Forward => Direction::Backward,
                Direction::Backward => Direction::Forward,
            },
            dualized: !m.dualized,
            map: m.map.dual(),
        }));
        let special = match mode {
            ClassMode::Coflasque => output.l1(),
            ClassMode::Flasque => output.l2(),
        };
        let vanishing = vanishing_table(mode, special)?;
        Ok(ResolutionCertificate {
            mode,
            input,
            output,
            moves,
            vanishing,
        })
    }
}

/// `[C -> Q]` quasi-isomorphic to `t`, with `C` coflasque and `Q` permutation.
pub fn coflasque_resolution(t: &TwoTermComplex) -> Result<Resolution> {
    coflasque_resolution_with(t, &ResolveOptions::default())
}

pub fn coflasque_resolution_with(t: &TwoTermComplex, opts: &ResolveOptions) -> Result<Resolution> {
    let emb = cts_embed_coflasque(t.l1(), opts)?;
    let iota = LatticeMap::new(t.l1().clone(), emb.c1.clone(), emb.inclusion.clone())?;
    let push = pushout_square(&iota, t.differential())?;
    let (m, push_map) = match (push.lattice, push.map) {
        (Some(q), Some(map)) => (q.lattice, map),
        _ => return Err(Error::Verification("pushout of the embedding has torsion".into())),
    };
    let cover = cts_cover_coflasque(&FgModule::from_lattice(&m), opts)?;
    let q_to_m = LatticeMap::new(cover.q.clone(), m.clone(), cover.projection.clone())?;
    let pull = pullback_square(&q_to_m, push_map.target.differential())?;
    let resolved = pull.complex().clone();
    let vanishing = vanishing_table(ClassMode::Coflasque, resolved.l1())?;
    if vanishing.iter().any(|e| !e.factors.is_empty()) {
        return Err(Error::Verification("resolved lattice is not coflasque".into()));
    }
    if !resolved.l2().verify_permutation_certificate() {
        return Err(Error::Verification("resolved lattice is not permutation".into()));
    }
    let moves = vec![
        Move {
            kind: MoveKind::PushoutMono,
            direction: Direction::Forward,
            dualized: false,
            map: push_map,
        },
        Move {
            kind: MoveKind::PullbackEpi,
            direction: Direction::Backward,
            dualized: false,
            map: pull.map,
        },
    ];
    Ok(Resolution {
        resolved: resolved.clone(),
        certificate: ResolutionCertificate {
            mode: ClassMode::Coflasque,
            input: t.clone(),
            output: resolved,
            moves,
            vanishing,
        },
    })
}

/// `[P -> F]` quasi-isomorphic to `t`, with `P` permutation and `F` flasque:
/// the dual of the coflasque resolution of the dual complex.
pub fn flasque_resolution(t: &TwoTermComplex) -> Result<Resolution> {
    flasque_resolution_with(t, &ResolveOptions::default())
}

pub fn flasque_resolution_with(t: &TwoTermComplex, opts: &ResolveOptions) -> Result<Resolution> {
    let co = coflasque_resolution_with(&t.dual(), opts)?;
    let certificate = co.certificate.dual()?;
    if certificate.vanishing.iter().any(|e| !e.factors.is_empty()) {
        return Err(Error::Verification("resolved lattice is not flasque".into()));
    }
    Ok(Resolution {
        resolved: certificate.output.clone(),
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::homology;
    use crate::groups::{named, Subgroup};
    use crate::lattice::{make_permutation_lattice, IntMatrix};
    use std::sync::Arc;

    fn sign() -> GLattice {
        GLattice::new(Arc::new(named::cyclic(2)), vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap()
    }

    #[test]
    fn coflasque_of_sign_in_degree_zero() {
        let s = sign();
        let zero = GLattice::zero(s.group());
        let t = TwoTermComplex::new(zero, s, IntMatrix::zeros(1, 0)).unwrap();
        let r = coflasque_resolution(&t).unwrap();
        assert_eq!(r.resolved.l1().rank(), 1);
        assert!(r.resolved.l1().is_trivial_action());
        assert_eq!(r.resolved.l2().rank(), 2);
        let h = homology(&r.resolved).unwrap();
        assert_eq!(h.h_minus1.rank(), 0);
        assert!(r.certificate.replay().ok());
    }

    #[test]
    fn flasque_of_sign_in_degree_minus_one() {
        let s = sign();
        let zero = GLattice::zero(s.group());
        let t = TwoTermComplex::new(s, zero, IntMatrix::zeros(0, 1)).unwrap();
        let r = flasque_resolution(&t).unwrap();
        assert_eq!(r.resolved.l1().rank(), 2);
        assert_eq!(r.resolved.l2().rank(), 1);
        let h = homology(&r.resolved).unwrap();
        assert_eq!(h.h_minus1.rank(), 1);
        assert!(!h.h_minus1.is_trivial_action());
        assert!(h.h0.structure().is_trivial());
        let rep = r.certificate.replay();
        assert!(rep.ok(), "{:?}", rep.failures);
        assert_eq!(r.certificate.moves[0].kind, MoveKind::Duality);
    }

    #[test]
    fn acyclic_input_stays_acyclic() {
        let g = Arc::new(named::symmetric3());
        let l = make_permutation_lattice(&g, &[Subgroup::generated_by(&g, &[1]).unwrap()]).unwrap();
        let t = TwoTermComplex::from_map(LatticeMap::identity(&l));
        let r = coflasque_resolution(&t).unwrap();
        let h = homology(&r.resolved).unwrap();
        assert_eq!(h.h_minus1.rank(), 0);
        assert!(h.h0.structure().is_trivial());
        assert!(r.certificate.replay().ok());
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let s = sign();
        let zero = GLattice::zero(s.group());
        let t = TwoTermComplex::new(zero, s, IntMatrix::zeros(1, 0)).unwrap();
        let mut cert = coflasque_resolution(&t).unwrap().certificate;
        cert.moves[1].map.zero = cert.moves[1].map.zero.scale(&BigInt::from(2));
        assert!(!cert.replay().ok());
        let mut cert = coflasque_resolution(&t).unwrap().certificate;
        cert.moves.swap(0, 1);
        assert!(!cert.replay().chain_ok);
    }

    #[test]
    fn zero_complex() {
        let g = Arc::new(named::cyclic(3));
        let r = flasque_resolution(&TwoTermComplex::zero(&g)).unwrap();
        assert_eq!((r.resolved.l1().rank(), r.resolved.l2().rank()), (0, 0));
    }
}
