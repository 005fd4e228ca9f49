//! Integer presentations and their reductions modulo primes.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::PrimeChar;
use crate::monomial::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};
use crate::ring::RingPresentation;

/// Prime used as a stand-in for the generic (characteristic zero) fiber.
pub const GENERIC_PROXY_PRIME: u64 = 2_147_483_647;

/// A polynomial with integer coefficients: (exponents, coefficient) pairs.
pub type IntPoly = Vec<(Vec<u32>, i64)>;

/// A graded presentation over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPresentation {
    pub names: Vec<String>,
    pub weights: Vec<u32>,
    pub relations: Vec<IntPoly>,
    pub domain: bool,
}

impl IntegerPresentation {
    /// Homogeneity is checked over the integers, before any reduction.
    pub fn check_grading(&self) -> Result<()> {
        for (i, rel) in self.relations.iter().enumerate() {
            let degs: Vec<u64> = rel
                .iter()
                .filter(|(_, c)| *c != 0)
                .map(|(e, _)| e.iter().zip(&self.weights).map(|(&a, &w)| a as u64 * w as u64).sum())
                .collect();
            if degs.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::GradingError { relation: i + 1 });
            }
        }
        Ok(())
    }

    /// The fiber over F_p, with relations reduced mod p (vanishing ones kept
    /// as zero polynomials so indices stay aligned).
    pub fn reduce_mod(&self, ch: PrimeChar, order: Option<MonomialOrder>) -> (alloc::sync::Arc<PolyRing>, Vec<Polynomial>) {
        let order = order.unwrap_or_else(|| MonomialOrder::grevlex(self.names.len()));
        let poly = PolyRing::new(ch, self.names.clone(), self.weights.clone(), order);
        let rels = self.relations.iter().map(|r| Polynomial::from_int_terms(&poly, r)).collect();
        (poly, rels)
    }
}

/// Why a prime was not used as a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkipReason {
    NotPrime,
    /// Every coefficient of this relation (1-based) is divisible by p.
    RelationVanishes { relation: usize },
    /// The Jacobian ideal vanishes although the generic fiber is smooth.
    JacobianDegenerate,
    /// The relations generate the unit ideal mod p.
    ZeroRing,
}

impl SkipReason {
    pub fn code(&self) -> &'static str {
        match self {
            SkipReason::NotPrime => "not-prime",
            SkipReason::RelationVanishes { .. } => "relation-vanishes",
            SkipReason::JacobianDegenerate => "jacobian-degenerate",
            SkipReason::ZeroRing => "zero-ring",
        }
    }
}

/// Observations recorded on retained fibers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberFlag {
    /// All Jacobian candidates vanish, but the fiber is kept because no domain
    /// assumption makes the degeneration disqualifying.
    JacobianDrop,
}

impl FiberFlag {
    pub fn code(&self) -> &'static str {
        match self {
            FiberFlag::JacobianDrop => "jacobian-drop",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Fiber {
    Retained { p: u64, ring: RingPresentation, flags: Vec<FiberFlag> },
    Skipped { p: u64, reason: SkipReason },
}

impl Fiber {
    pub fn prime(&self) -> u64 {
        match self {
            Fiber::Retained { p, .. } | Fiber::Skipped { p, .. } => *p,
        }
    }
}

/// One fiber per requested prime, in the order given.
#[derive(Clone, Debug)]
pub struct ModelFamily {
    pub presentation: IntegerPresentation,
    pub fibers: Vec<Fiber>,
    /// Whether the generic-fiber proxy has a nonvanishing Jacobian ideal.
    pub generic_smooth: bool,
}

impl ModelFamily {
    pub fn retained(&self) -> impl Iterator<Item = (u64, &RingPresentation, &[FiberFlag])> {
        self.fibers.iter().filter_map(|f| match f {
            Fiber::Retained { p, ring, flags } => Some((*p, ring, flags.as_slice())),
            Fiber::Skipped { .. } => None,
        })
    }

    pub fn skipped(&self) -> impl Iterator<Item = (u64, &SkipReason)> {
        self.fibers.iter().filter_map(|f| match f {
            Fiber::Skipped { p, reason } => Some((*p, reason)),
            Fiber::Retained { .. } => None,
        })
    }
}

/// Reduces an integer presentation at each prime. Fibers where a relation
/// vanishes or the relations become the unit ideal are skipped; fibers whose
/// Jacobian ideal degenerates are skipped for asserted domains with a smooth
/// generic fiber, and retained with a flag otherwise.
pub fn reduce_model_family(pres: &IntegerPresentation, primes: &[u64]) -> Result<ModelFamily> {
    if primes.is_empty() {
        return Err(Error::EmptyFamily);
    }
    pres.check_grading()?;
    let generic_smooth = match fiber_ring(pres, PrimeChar::new(GENERIC_PROXY_PRIME)?) {
        Ok(ring) => ring.jacobian_test_candidates().is_ok(),
        Err(_) => false,
    };
    let mut fibers = Vec::with_capacity(primes.len());
    for &p in primes {
        fibers.push(reduce_one(pres, p, generic_smooth));
    }
    Ok(ModelFamily { presentation: pres.clone(), fibers, generic_smooth })
}

fn fiber_ring(pres: &IntegerPresentation, ch: PrimeChar) -> Result<RingPresentation> {
    let (poly, rels) = pres.reduce_mod(ch, None);
    RingPresentation::new(&poly, rels, pres.domain)
}

fn reduce_one(pres: &IntegerPresentation, p: u64, generic_smooth: bool) -> Fiber {
    let Ok(ch) = PrimeChar::new(p) else {
        return Fiber::Skipped { p, reason: SkipReason::NotPrime };
    };
    let (poly, rels) = pres.reduce_mod(ch, None);
    if let Some(i) = rels.iter().position(|r| r.is_zero()) {
        return Fiber::Skipped { p, reason: SkipReason::RelationVanishes { relation: i + 1 } };
    }
    let ring = match RingPresentation::new(&poly, rels, pres.domain) {
        Ok(r) => r,
        Err(_) => return Fiber::Skipped { p, reason: SkipReason::ZeroRing },
    };
    let mut flags = Vec::new();
    if let Err(Error::SingularEverywhere) = ring.jacobian_test_candidates() {
        if pres.domain && generic_smooth {
            return Fiber::Skipped { p, reason: SkipReason::JacobianDegenerate };
        }
        flags.push(FiberFlag::JacobianDrop);
    }
    Fiber::Retained { p, ring, flags }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat_z(domain: bool) -> IntegerPresentation {
        IntegerPresentation {
            names: alloc::vec!["x".into(), "y".into(), "z".into()],
            weights: alloc::vec![1, 1, 1],
            relations: alloc::vec![alloc::vec![
                (alloc::vec![3, 0, 0], 1),
                (alloc::vec![0, 3, 0], 1),
                (alloc::vec![0, 0, 3], -1)
            ]],
            domain,
        }
    }

    #[test]
    fn fermat_family_skips_three() {
        let fam = reduce_model_family(&fermat_z(true), &[2, 3, 5, 7]).unwrap();
        let kept: Vec<u64> = fam.retained().map(|(p, _, _)| p).collect();
        assert_eq!(kept, [2, 5, 7]);
        let skipped: Vec<_> = fam.skipped().collect();
        assert_eq!(skipped, [(3, &SkipReason::JacobianDegenerate)]);
        assert_eq!(fam.fibers.len(), 4);
    }

    #[test]
    fn sum_of_squares_in_char_two_is_flagged() {
        let pres = IntegerPresentation {
            names: alloc::vec!["x".into(), "y".into()],
            weights: alloc::vec![1, 1],
            relations: alloc::vec![alloc::vec![(alloc::vec![2, 0], 1), (alloc::vec![0, 2], 1)]],
            domain: false,
        };
        let fam = reduce_model_family(&pres, &[2]).unwrap();
        let (p, _, flags) = fam.retained().next().unwrap();
        assert_eq!(p, 2);
        assert_eq!(flags, &[FiberFlag::JacobianDrop]);
    }

    #[test]
    fn vanishing_relation_and_errors() {
        let pres = IntegerPresentation {
            names: alloc::vec!["x".into(), "y".into()],
            weights: alloc::vec![1, 1],
            relations: alloc::vec![alloc::vec![(alloc::vec![3, 0], 5)]],
            domain: false,
        };
        let fam = reduce_model_family(&pres, &[5, 4]).unwrap();
        let skipped: Vec<_> = fam.skipped().map(|(p, r)| (p, r.code())).collect();
        assert_eq!(skipped, [(5, "relation-vanishes"), (4, "not-prime")]);
        assert_eq!(reduce_model_family(&pres, &[]).unwrap_err(), Error::EmptyFamily);
    }
}
