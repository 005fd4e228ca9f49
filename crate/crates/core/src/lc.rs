//! Graded top local cohomology H^{d+1}_m(S) through Čech fractions [z/x^t].
//!
//! Parameters x_0..x_d are a full system of degree-one elements, and a
//! fraction [z/x^t] stands for z / (x_0⋯x_d)^t. It vanishes iff
//! x^s z ∈ (x_0^{t+s}, …, x_d^{t+s}) for some s; when the parameters form a
//! regular sequence s = 0 suffices.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::closure::{tc_hull_with, BatchMembership, ClosureConfig, ClosureContext, ClosureVerdict, Status};
use crate::error::{Error, Result};
use crate::poly::{same_ring, Polynomial};
use crate::ring::{ParameterSystem, RingIdeal, RingPresentation};

#[derive(Clone, Debug)]
pub struct CechFraction {
    params: ParameterSystem,
    numerator: Polynomial,
    t: u64,
    degree: i64,
}

impl CechFraction {
    pub fn ring(&self) -> &RingPresentation {
        self.params.ring()
    }

    pub fn parameters(&self) -> &ParameterSystem {
        &self.params
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// deg z − t·(d+1)
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// The ideal (x_0^t, …, x_d^t).
    pub fn bracket_ideal(&self) -> Result<RingIdeal> {
        power_ideal(&self.params, self.t)
    }

    /// [x·z / x^{t+1}] with x the product of the parameters: the same class.
    pub fn expand(&self) -> Result<CechFraction> {
        let ring = self.ring();
        let z = ring.element(&self.numerator)?.mul(&ring.element(&param_product(&self.params, 1)?)?)?;
        Ok(CechFraction { params: self.params.clone(), numerator: z.rep().clone(), t: self.t + 1, degree: self.degree })
    }
}

impl fmt::Display for CechFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} / (", self.numerator)?;
        for (i, x) in self.params.elements().iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")^{}]", self.t)
    }
}

fn param_product(params: &ParameterSystem, s: u64) -> Result<Polynomial> {
    let ring = params.ring();
    let mut acc = ring.one();
    for x in params.elements() {
        acc = acc.mul(&ring.element(x)?.pow(s)?)?;
    }
    Ok(acc.rep().clone())
}

fn power_ideal(params: &ParameterSystem, t: u64) -> Result<RingIdeal> {
    let ring = params.ring();
    let gens =
        params.elements().iter().map(|x| ring.element(x)?.pow(t).map(|e| e.rep().clone())).collect::<Result<Vec<_>>>()?;
    ring.ideal(&gens)
}

/// Checks that `params` is a full system of degree-one elements.
pub fn degree_one_parameters(ring: &RingPresentation, params: &[Polynomial]) -> Result<ParameterSystem> {
    let xs = ParameterSystem::full(ring, params)?;
    if xs.elements().iter().any(|x| !x.is_homogeneous() || x.degree() != Some(1)) {
        return Err(Error::ParameterError(String::from("parameters must be homogeneous of degree 1")));
    }
    Ok(xs)
}

pub fn lc_fraction(params: &ParameterSystem, z: &Polynomial, t: u64) -> Result<CechFraction> {
    let ring = params.ring();
    if !params.is_full() {
        return Err(Error::ParameterError(String::from("a verified full parameter system is required")));
    }
    if params.elements().iter().any(|x| x.degree() != Some(1) || !x.is_homogeneous()) {
        return Err(Error::ParameterError(String::from("parameters must be homogeneous of degree 1")));
    }
    if t == 0 {
        return Err(Error::Precondition(String::from("t must be at least 1")));
    }
    if !same_ring(z.ring(), ring.poly_ring()) {
        return Err(Error::RingMismatch);
    }
    let z = ring.reduce(z);
    if !z.is_homogeneous() {
        return Err(Error::Precondition(String::from("numerator must be homogeneous")));
    }
    let deg = z.degree().unwrap_or(0) as i64;
    let degree = deg - (t as i64) * params.len() as i64;
    Ok(CechFraction { params: params.clone(), numerator: z, t, degree })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcStatus {
    /// x^s z ∈ (x_i^{t+s})
    Zero { s: u64 },
    NonzeroProved,
    /// No s ≤ bound works.
    NonzeroUpTo { bound: u64 },
}

impl LcStatus {
    pub fn code(self) -> &'static str {
        match self {
            LcStatus::Zero { .. } => "ZERO",
            LcStatus::NonzeroProved => "NONZERO_PROVED",
            LcStatus::NonzeroUpTo { .. } => "NONZERO_UP_TO",
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, LcStatus::Zero { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcMethod {
    CohenMacaulay,
    Search,
}

impl LcMethod {
    pub fn code(self) -> &'static str {
        match self {
            LcMethod::CohenMacaulay => "cohen-macaulay",
            LcMethod::Search => "search",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LcZeroVerdict {
    pub status: LcStatus,
    pub method: LcMethod,
}

pub fn lc_zero_test(eta: &CechFraction, s_max: u64) -> Result<LcZeroVerdict> {
    let z = &eta.numerator;
    if eta.params.certifies_cohen_macaulay() {
        let status = if eta.bracket_ideal()?.contains(z) { LcStatus::Zero { s: 0 } } else { LcStatus::NonzeroProved };
        return Ok(LcZeroVerdict { status, method: LcMethod::CohenMacaulay });
    }
    let ring = eta.ring();
    for s in 0..=s_max {
        let lhs = ring.element(z)?.mul(&ring.element(&param_product(&eta.params, s)?)?)?;
        if power_ideal(&eta.params, eta.t + s)?.contains(lhs.rep()) {
            return Ok(LcZeroVerdict { status: LcStatus::Zero { s }, method: LcMethod::Search });
        }
    }
    Ok(LcZeroVerdict { status: LcStatus::NonzeroUpTo { bound: s_max }, method: LcMethod::Search })
}

/// [z^q / x^{tq}], q = p^e.
pub fn lc_frobenius(eta: &CechFraction, e: u32) -> Result<CechFraction> {
    let ring = eta.ring();
    let q = (ring.p() as u64).checked_pow(e).ok_or(Error::ExponentOverflow { bound: u64::MAX })?;
    let z = ring.reduce(&eta.numerator.frobenius_q(q)?);
    let t = eta.t.checked_mul(q).ok_or(Error::ExponentOverflow { bound: u64::MAX })?;
    let degree = eta.degree.checked_mul(q as i64).ok_or(Error::ExponentOverflow { bound: u64::MAX })?;
    Ok(CechFraction { params: eta.params.clone(), numerator: z, t, degree })
}

/// η ∈ 0* iff z ∈ (x_0^t, …, x_d^t)*.
pub fn zero_star_test(eta: &CechFraction, cfg: &ClosureConfig) -> Result<ClosureVerdict> {
    ClosureContext::new(&eta.bracket_ideal()?, cfg)?.membership(&eta.numerator)
}

/// Top degree of H^{dim S}_m(S), from the Hilbert series of a ring certified
/// Cohen-Macaulay on a parameter system found among the variables.
pub fn a_invariant(ring: &RingPresentation) -> Result<i64> {
    let Some(xs) = ParameterSystem::find_among_variables(ring) else {
        return Err(Error::NotComputed(String::from(
            "no system of parameters among the variables; supply a presentation with one",
        )));
    };
    if !xs.certifies_cohen_macaulay() {
        return Err(Error::NotComputed(String::from(
            "ring is not certified Cohen-Macaulay on its parameters; a-invariant needs the fast path",
        )));
    }
    let num = ring.relation_ideal().hilbert_numerator();
    let deg = num.len() as i64 - 1;
    let w: i64 = ring.poly_ring().weights().iter().map(|&w| w as i64).sum();
    Ok(deg - w)
}

#[derive(Clone, Debug)]
pub struct FujitaClass {
    pub numerator: Polynomial,
    /// A multiplier of degree n−d−1 with nonzero product, if one exists.
    pub multiplier: Option<Polynomial>,
    /// Run only when every multiple vanishes.
    pub zero_star: Option<ClosureVerdict>,
}

#[derive(Clone, Debug)]
pub struct FujitaReport {
    pub degree: i64,
    pub t: u64,
    pub classes: Vec<FujitaClass>,
}

impl FujitaReport {
    pub fn all_have_multiple(&self) -> bool {
        self.classes.iter().all(|c| c.multiplier.is_some())
    }

    /// Classes whose multiples all vanish test non-OUT in 0*.
    pub fn consistent(&self) -> bool {
        self.classes.iter().all(|c| match &c.zero_star {
            Some(v) => v.status != Status::OutEvidence,
            None => c.multiplier.is_some(),
        })
    }
}

/// For each basis class η of degree −n, looks for a multiplier of degree
/// n−d−1 with a nonzero product.
pub fn fujita_probe(params: &ParameterSystem, n: u64, t: u64, cfg: &ClosureConfig) -> Result<FujitaReport> {
    let ring = params.ring();
    let d1 = params.len() as u64;
    if n <= d1 {
        return Err(Error::Precondition(String::from("degree must be below −(d+1)")));
    }
    if t * d1 < n {
        return Err(Error::Precondition(String::from("t·(d+1) must be at least n")));
    }
    if !params.certifies_cohen_macaulay() {
        return Err(Error::NotComputed(String::from("exact zero tests need a Cohen-Macaulay parameter system")));
    }
    let _ = lc_fraction(params, &Polynomial::one(ring.poly_ring()), t)?;
    let bracket = power_ideal(params, t)?;
    let multipliers = ring.relation_ideal().degree_slice_basis(n - d1);
    let mut classes = Vec::new();
    for m in bracket.lift().degree_slice_basis(t * d1 - n) {
        let z = Polynomial::from_monomial(ring.poly_ring(), m, 1);
        let mut found = None;
        for g in &multipliers {
            let prod = ring.reduce(&z.mul_term(g, 1));
            if !bracket.contains(&prod) {
                found = Some(Polynomial::from_monomial(ring.poly_ring(), g.clone(), 1));
                break;
            }
        }
        let zero_star = match found {
            Some(_) => None,
            None => Some(zero_star_test(&lc_fraction(params, &z, t)?, cfg)?),
        };
        classes.push(FujitaClass { numerator: z, multiplier: found, zero_star });
    }
    Ok(FujitaReport { degree: -(n as i64), t, classes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaSlice {
    pub degree: u64,
    /// dim (S / Σ right)_n
    pub right_codim: usize,
    /// dim (S / (left + Σ right))_n
    pub joint_codim: usize,
}

impl KodairaSlice {
    pub fn contained(&self) -> bool {
        self.right_codim == self.joint_codim
    }
}

#[derive(Clone, Debug)]
pub struct KodairaReport {
    pub a_invariant: i64,
    pub floor: u64,
    pub left: Vec<Polynomial>,
    pub right: Vec<Polynomial>,
    pub slices: Vec<KodairaSlice>,
    /// Hulls are cut at a degree bound.
    pub heuristic: bool,
}

impl KodairaReport {
    pub fn holds(&self) -> bool {
        self.slices.iter().all(|s| s.contained())
    }
}

/// (x_0..x_k)* ⊆ Σ_i (x_0..x̂_i..x_k)* + S_{≥D}, D = Σ deg x_i, checked on
/// the slices below D with closures replaced by hulls at degree D−1.
pub fn kodaira_tc_check(
    ring: &RingPresentation,
    xs: &[Polynomial],
    cfg: &ClosureConfig,
    batch: BatchMembership<'_>,
) -> Result<KodairaReport> {
    let a = a_invariant(ring)?;
    for (i, x) in xs.iter().enumerate() {
        let deg = x.degree().unwrap_or(0);
        if !x.is_homogeneous() || deg as i64 <= a {
            return Err(Error::DegreeTooSmall { index: i + 1, degree: deg, a_invariant: a });
        }
    }
    if xs.is_empty() || !ring.is_parameter_system(xs) {
        return Err(Error::ParameterError(String::from("elements are not part of a system of parameters")));
    }
    let floor: u64 = xs.iter().filter_map(|x| x.degree()).sum();
    let bound = floor.saturating_sub(1);
    let hull = |gens: &[Polynomial]| -> Result<Vec<Polynomial>> {
        if gens.is_empty() {
            return Ok(Vec::new());
        }
        let ideal = ring.ideal(gens)?;
        Ok(tc_hull_with(&ideal, bound.max(ideal.max_generator_degree()), cfg, batch)?.polynomials())
    };
    let left = hull(xs)?;
    let mut right = Vec::new();
    for i in 0..xs.len() {
        let rest: Vec<Polynomial> = xs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
        for g in hull(&rest)? {
            if !right.contains(&g) {
                right.push(g);
            }
        }
    }
    let right_ideal = ring.ideal(&right)?;
    let joint = right_ideal.with_generators(&left)?;
    let slices = (0..floor)
        .map(|n| KodairaSlice {
            degree: n,
            right_codim: right_ideal.lift().degree_slice_basis(n).len(),
            joint_codim: joint.lift().degree_slice_basis(n).len(),
        })
        .collect();
    Ok(KodairaReport { a_invariant: a, floor, left, right, slices, heuristic: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::sequential_batch;
    use crate::field::PrimeChar;
    use crate::ring::tests::{fermat, polyring};
    use alloc::string::ToString;

    fn mono(r: &RingPresentation, e: &[u32]) -> Polynomial {
        Polynomial::from_monomial(r.poly_ring(), r.poly_ring().monomial(e), 1)
    }

    fn plane() -> (RingPresentation, ParameterSystem) {
        let r = polyring(5, &["x", "y"]);
        let xs = degree_one_parameters(&r, &[mono(&r, &[1, 0]), mono(&r, &[0, 1])]).unwrap();
        (r, xs)
    }

    #[test]
    fn fractions_and_degrees() {
        let (r, xs) = plane();
        let eta = lc_fraction(&xs, &Polynomial::one(r.poly_ring()), 1).unwrap();
        assert_eq!(eta.degree(), -2);
        assert_eq!(eta.to_string(), "[1 / (x*y)^1]");
        let f = lc_frobenius(&eta, 1).unwrap();
        assert_eq!((f.degree(), f.t()), (-10, 5));
        assert_eq!(lc_frobenius(&eta, 0).unwrap().degree(), -2);
        let fe = fermat(7, true);
        let fx = degree_one_parameters(&fe, &[mono(&fe, &[1, 0, 0]), mono(&fe, &[0, 1, 0])]).unwrap();
        let eta = lc_fraction(&fx, &mono(&fe, &[0, 0, 2]), 1).unwrap();
        assert_eq!(eta.degree(), 0);
        let eta = lc_fraction(&fx, &mono(&fe, &[0, 0, 1]), 1).unwrap();
        assert_eq!(eta.degree(), -1);
        let f = lc_frobenius(&eta, 1).unwrap();
        assert_eq!((f.degree(), f.numerator().to_string().as_str()), (-7, "z^7"));
        assert!(lc_fraction(&fx, &mono(&fe, &[0, 0, 2]), 0).is_err());
    }

    #[test]
    fn zero_tests() {
        let (r, xs) = plane();
        let eta = lc_fraction(&xs, &mono(&r, &[1, 0]), 1).unwrap();
        assert_eq!(lc_zero_test(&eta, 0).unwrap().status, LcStatus::Zero { s: 0 });
        let eta = lc_fraction(&xs, &Polynomial::one(r.poly_ring()), 1).unwrap();
        assert_eq!(lc_zero_test(&eta, 0).unwrap().status, LcStatus::NonzeroProved);
        assert_eq!(lc_zero_test(&eta.expand().unwrap(), 0).unwrap().status, LcStatus::NonzeroProved);
        let v = zero_star_test(&eta, &ClosureConfig::default()).unwrap();
        assert_eq!(v.status, Status::OutEvidence);
        let fe = fermat(7, true);
        let fx = degree_one_parameters(&fe, &[mono(&fe, &[1, 0, 0]), mono(&fe, &[0, 1, 0])]).unwrap();
        let eta = lc_fraction(&fx, &mono(&fe, &[0, 0, 2]), 1).unwrap();
        assert_eq!(lc_zero_test(&eta, 0).unwrap().status, LcStatus::NonzeroProved);
        assert!(zero_star_test(&eta, &ClosureConfig::default()).unwrap().status.is_in());
    }

    #[test]
    fn a_invariants() {
        let r = polyring(5, &["x0", "x1", "x2"]);
        assert_eq!(a_invariant(&r).unwrap(), -3);
        assert_eq!(a_invariant(&fermat(7, true)).unwrap(), 0);
        let cusp = RingPresentation::with_names(
            PrimeChar::new(5).unwrap(),
            &["a", "b"],
            &[2, 3],
            &[&[(&[0, 2], 1), (&[3, 0], -1)]],
            true,
        )
        .unwrap();
        assert_eq!(a_invariant(&cusp).unwrap(), 1);
        let sg = crate::ring::tests::semigroup(5);
        assert!(matches!(a_invariant(&sg), Err(Error::NotComputed(_))));
    }

    #[test]
    fn fujita() {
        let cfg = ClosureConfig::default();
        let (_, xs) = plane();
        let rep = fujita_probe(&xs, 3, 2, &cfg).unwrap();
        assert!(!rep.classes.is_empty() && rep.all_have_multiple());
        assert!(fujita_probe(&xs, 2, 2, &cfg).is_err());
        let fe = fermat(7, true);
        let fx = degree_one_parameters(&fe, &[mono(&fe, &[1, 0, 0]), mono(&fe, &[0, 1, 0])]).unwrap();
        let rep = fujita_probe(&fx, 3, 2, &cfg).unwrap();
        assert!(rep.all_have_multiple());
    }

    #[test]
    fn kodaira() {
        let cfg = ClosureConfig::default();
        let r = polyring(5, &["x", "y", "z"]);
        let rep = kodaira_tc_check(&r, &[mono(&r, &[2, 0, 0]), mono(&r, &[0, 2, 0])], &cfg, &sequential_batch).unwrap();
        assert_eq!((rep.a_invariant, rep.floor), (-3, 4));
        assert!(rep.holds());
        let fe = fermat(7, true);
        let rep =
            kodaira_tc_check(&fe, &[mono(&fe, &[2, 0, 0]), mono(&fe, &[0, 2, 0])], &cfg, &sequential_batch).unwrap();
        assert!(rep.holds());
        let p = polyring(5, &["x", "y"]);
        let rep = kodaira_tc_check(&p, &[mono(&p, &[1, 0])], &cfg, &sequential_batch).unwrap();
        assert!(rep.holds());
        let cusp = RingPresentation::with_names(
            PrimeChar::new(5).unwrap(),
            &["a", "b"],
            &[2, 3],
            &[&[(&[0, 2], 1), (&[3, 0], -1)]],
            true,
        )
        .unwrap();
        let err = kodaira_tc_check(&cusp, &[mono(&cusp, &[0, 0])], &cfg, &sequential_batch).unwrap_err();
        assert_eq!(err, Error::DegreeTooSmall { index: 1, degree: 0, a_invariant: 1 });
    }
}
