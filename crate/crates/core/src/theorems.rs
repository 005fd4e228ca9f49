//! Checkable instances of the standard tight-closure theorems: colon
//! capturing, monomial colons, Briançon-Skoda, Mather's Jacobian bound and
//! F-regularity / F-rationality probes.

use alloc::string::String;
use alloc::vec::Vec;

use crate::closure::{tc_hull_with, BatchMembership, ClosureConfig, ClosureContext, ClosureVerdict, Status};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::AmbientIdeal;
use crate::newton;
use crate::poly::Polynomial;
use crate::ring::{ParameterSystem, RingIdeal, RingPresentation};

fn worst<'a>(it: impl Iterator<Item = &'a ClosureVerdict>) -> Option<Status> {
    it.map(|v| v.status).max()
}

#[derive(Clone, Debug)]
pub struct ColonEntry {
    pub generator: Polynomial,
    pub verdict: ClosureVerdict,
}

/// (x_1..x_i) : x_{i+1} and the closure verdicts of its generators that
/// are not already in (x_1..x_i).
#[derive(Clone, Debug)]
pub struct ColonCaptureReport {
    pub parameters: Vec<Polynomial>,
    pub index: usize,
    pub colon: Vec<Polynomial>,
    pub outside: Vec<ColonEntry>,
}

impl ColonCaptureReport {
    pub fn worst(&self) -> Option<Status> {
        worst(self.outside.iter().map(|e| &e.verdict))
    }

    /// No generator received OUT_EVIDENCE.
    pub fn captured(&self) -> bool {
        self.outside.iter().all(|e| e.verdict.status != Status::OutEvidence)
    }
}

pub fn colon_capture_report(xs: &ParameterSystem, i: usize, cfg: &ClosureConfig) -> Result<ColonCaptureReport> {
    if !xs.is_verified() {
        return Err(Error::ParameterError(String::from("parameter system is not verified")));
    }
    let ring = xs.ring();
    let mut report =
        ColonCaptureReport { parameters: xs.elements().to_vec(), index: i, colon: Vec::new(), outside: Vec::new() };
    if i >= xs.len() {
        return Ok(report);
    }
    let base = ring.ideal(&xs.elements()[..i])?;
    let colon = base.colon(&xs.elements()[i])?;
    report.colon = colon.generators().to_vec();
    let outside: Vec<Polynomial> = colon.generators().iter().filter(|g| !base.contains(g)).cloned().collect();
    if !outside.is_empty() {
        let ctx = ClosureContext::new(&base, cfg)?;
        for g in outside {
            let verdict = ctx.membership(&g)?;
            report.outside.push(ColonEntry { generator: g, verdict });
        }
    }
    Ok(report)
}

/// (x_1^t, …, x_d^t) : x_1⋯x_d checked against (x_1^{t−1}, …, x_d^{t−1})*.
#[derive(Clone, Debug)]
pub struct MonomialColonReport {
    pub t: u32,
    pub colon: Vec<Polynomial>,
    pub target: Vec<Polynomial>,
    pub entries: Vec<ColonEntry>,
    /// Set when the colon was taken of a hull rather than the ideal itself.
    pub heuristic: bool,
}

impl MonomialColonReport {
    pub fn worst(&self) -> Option<Status> {
        worst(self.entries.iter().map(|e| &e.verdict))
    }
}

fn powers(xs: &ParameterSystem, t: u32) -> Result<Vec<Polynomial>> {
    xs.elements().iter().map(|x| xs.ring().element(x)?.pow(t as u64).map(|e| e.rep().clone())).collect()
}

fn product(xs: &ParameterSystem) -> Result<Polynomial> {
    let ring = xs.ring();
    let mut acc = ring.one();
    for x in xs.elements() {
        acc = acc.mul(&ring.element(x)?)?;
    }
    Ok(acc.rep().clone())
}

fn check_monomial_colon_pre(xs: &ParameterSystem, t: u32) -> Result<()> {
    if t < 2 {
        return Err(Error::Precondition(String::from("t must be at least 2")));
    }
    if !xs.is_full() {
        return Err(Error::ParameterError(String::from("a verified full parameter system is required")));
    }
    Ok(())
}

pub fn monomial_colon_check(xs: &ParameterSystem, t: u32, cfg: &ClosureConfig) -> Result<MonomialColonReport> {
    check_monomial_colon_pre(xs, t)?;
    let ring = xs.ring();
    let big = ring.ideal(&powers(xs, t)?)?;
    let colon = big.colon(&product(xs)?)?;
    let target = ring.ideal(&powers(xs, t - 1)?)?;
    let ctx = ClosureContext::new(&target, cfg)?;
    let mut entries = Vec::new();
    for g in colon.generators() {
        entries.push(ColonEntry { generator: g.clone(), verdict: ctx.membership(g)? });
    }
    Ok(MonomialColonReport {
        t,
        colon: colon.generators().to_vec(),
        target: target.generators().to_vec(),
        entries,
        heuristic: false,
    })
}

/// The stronger form (x^t)* : x_1⋯x_d ⊆ (x^{t−1})*, with both closures
/// replaced by hulls at `bound`; the result is labeled heuristic.
pub fn monomial_colon_hull_check(
    xs: &ParameterSystem,
    t: u32,
    bound: u64,
    cfg: &ClosureConfig,
    batch: BatchMembership<'_>,
) -> Result<MonomialColonReport> {
    check_monomial_colon_pre(xs, t)?;
    let ring = xs.ring();
    let big = ring.ideal(&powers(xs, t)?)?;
    let hull_big = tc_hull_with(&big, bound.max(big.max_generator_degree()), cfg, batch)?;
    let colon = ring.ideal(&hull_big.polynomials())?.colon(&product(xs)?)?;
    let small = ring.ideal(&powers(xs, t - 1)?)?;
    let hull_small = tc_hull_with(&small, bound.max(small.max_generator_degree()), cfg, batch)?;
    let target = ring.ideal(&hull_small.polynomials())?;
    let ctx = ClosureContext::new(&target, cfg)?;
    let mut entries = Vec::new();
    for g in colon.generators() {
        entries.push(ColonEntry { generator: g.clone(), verdict: ctx.membership(g)? });
    }
    Ok(MonomialColonReport {
        t,
        colon: colon.generators().to_vec(),
        target: target.generators().to_vec(),
        entries,
        heuristic: true,
    })
}

/// Integral closure of I^μ against I in a polynomial ring.
#[derive(Clone, Debug)]
pub struct BrianconSkodaReport {
    pub mu: usize,
    pub closure: Vec<Polynomial>,
    pub violators: Vec<Polynomial>,
}

impl BrianconSkodaReport {
    pub fn holds(&self) -> bool {
        self.violators.is_empty()
    }
}

pub fn briancon_skoda_check(ideal: &AmbientIdeal) -> Result<BrianconSkodaReport> {
    let mu = newton::minimal_generator_count(ideal)?;
    let ring = ideal.ring();
    let minimal: Vec<Polynomial> = newton::monomial_exponents(ideal)?
        .iter()
        .map(|e| Polynomial::from_monomial(ring, ring.monomial(e), 1))
        .collect();
    let base = AmbientIdeal::new(ring, minimal)?;
    let closure = newton::monomial_integral_closure(&base.power(mu as u32)?)?;
    let violators = closure.generators().iter().filter(|g| !ideal.contains(g)).cloned().collect();
    Ok(BrianconSkodaReport { mu, closure: closure.generators().to_vec(), violators })
}

/// f^n ∈ (∂f/∂x_1, …, ∂f/∂x_n) in a polynomial ring in n variables.
#[derive(Clone, Debug)]
pub struct MatherReport {
    pub power: u32,
    pub jacobian: Vec<Polynomial>,
    pub holds: bool,
    /// Reduction steps used by the membership test.
    pub trace_steps: u64,
    /// p exceeds deg f, so the reduction is in the usual good-prime range.
    pub good_prime: bool,
}

pub fn mather_check(f: &Polynomial) -> Result<MatherReport> {
    if f.is_constant() {
        return Err(Error::Precondition(String::from("f must be nonconstant")));
    }
    let ring = f.ring();
    let n = ring.nvars();
    let jacobian: Vec<Polynomial> = (0..n).map(|i| f.derivative(i)).filter(|d| !d.is_zero()).collect();
    if jacobian.is_empty() {
        return Err(Error::DegenerateJacobian);
    }
    let gb = GroebnerBasis::compute(&jacobian, ring)?;
    let (nf, steps) = gb.normal_form_traced(&f.pow(n as u64)?);
    let deg = f.degree().unwrap_or(0);
    Ok(MatherReport {
        power: n as u32,
        jacobian,
        holds: nf.is_zero(),
        trace_steps: steps,
        good_prime: ring.p() as u64 > deg,
    })
}

#[derive(Clone, Debug)]
pub struct ProbeEntry {
    pub ideal: Vec<Polynomial>,
    pub closed: bool,
    /// Generators the hull added, with their verdicts.
    pub extras: Vec<ColonEntry>,
    pub fixed_point: bool,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub bound: u64,
    pub entries: Vec<ProbeEntry>,
}

impl ProbeReport {
    pub fn all_closed(&self) -> bool {
        self.entries.iter().all(|e| e.closed)
    }

    pub fn headline(&self) -> &'static str {
        if self.all_closed() {
            "no counterexample found among samples"
        } else if self.entries.iter().flat_map(|e| &e.extras).any(|x| x.verdict.status == Status::InProved) {
            "counterexample found (proved)"
        } else {
            "counterexample found (likely)"
        }
    }
}

fn probe(samples: &[RingIdeal], bound: u64, cfg: &ClosureConfig, batch: BatchMembership<'_>) -> Result<ProbeReport> {
    let mut entries = Vec::with_capacity(samples.len());
    for s in samples {
        let h = tc_hull_with(s, bound.max(s.max_generator_degree()), cfg, batch)?;
        let extras: Vec<ColonEntry> = h
            .additions()
            .map(|g| ColonEntry { generator: g.generator.clone(), verdict: g.verdict.clone().unwrap() })
            .collect();
        entries.push(ProbeEntry { ideal: s.generators().to_vec(), closed: extras.is_empty(), extras, fixed_point: h.fixed_point });
    }
    Ok(ProbeReport { bound, entries })
}

/// Hulls of sample ideals; any addition is evidence against weak F-regularity.
pub fn f_regular_probe(
    samples: &[RingIdeal],
    bound: u64,
    cfg: &ClosureConfig,
    batch: BatchMembership<'_>,
) -> Result<ProbeReport> {
    probe(samples, bound, cfg, batch)
}

/// As [`f_regular_probe`], restricted to parameter ideals.
pub fn f_rational_probe(
    ring: &RingPresentation,
    samples: &[RingIdeal],
    bound: u64,
    cfg: &ClosureConfig,
    batch: BatchMembership<'_>,
) -> Result<ProbeReport> {
    for (i, s) in samples.iter().enumerate() {
        if s.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if !ring.is_parameter_system(s.generators()) {
            return Err(Error::ParameterError(alloc::format!("sample {} is not a parameter ideal", i + 1)));
        }
    }
    probe(samples, bound, cfg, batch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::sequential_batch;
    use crate::ring::tests::{fermat, polyring, semigroup};
    use alloc::string::ToString;

    fn mono(r: &RingPresentation, e: &[u32]) -> Polynomial {
        Polynomial::from_monomial(r.poly_ring(), r.poly_ring().monomial(e), 1)
    }

    fn strings(v: &[Polynomial]) -> Vec<String> {
        v.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn colon_capturing() {
        let cfg = ClosureConfig::default();
        let r = polyring(5, &["x", "y"]);
        let xs = ParameterSystem::full(&r, &[mono(&r, &[1, 0]), mono(&r, &[0, 1])]).unwrap();
        assert!(colon_capture_report(&xs, 1, &cfg).unwrap().outside.is_empty());
        let f = fermat(7, true);
        let xs = ParameterSystem::full(&f, &[mono(&f, &[1, 0, 0]), mono(&f, &[0, 1, 0])]).unwrap();
        assert!(colon_capture_report(&xs, 1, &cfg).unwrap().outside.is_empty());
        assert!(colon_capture_report(&xs, 2, &cfg).unwrap().colon.is_empty());
        let sg = semigroup(2);
        let xs = ParameterSystem::full(&sg, &[mono(&sg, &[1, 0, 0, 0]), mono(&sg, &[0, 0, 0, 1])]).unwrap();
        let rep = colon_capture_report(&xs, 1, &cfg).unwrap();
        assert!(!rep.outside.is_empty());
        assert!(rep.outside.iter().all(|e| e.verdict.status.is_in()));
    }

    #[test]
    fn monomial_colons() {
        let cfg = ClosureConfig::default();
        let r = polyring(5, &["x", "y"]);
        let xs = ParameterSystem::full(&r, &[mono(&r, &[1, 0]), mono(&r, &[0, 1])]).unwrap();
        let rep = monomial_colon_check(&xs, 2, &cfg).unwrap();
        assert_eq!(strings(&rep.colon), ["x", "y"]);
        assert_eq!(rep.worst(), Some(Status::InProved));
        let r = polyring(7, &["x", "y", "z"]);
        let xs = ParameterSystem::full(&r, &[mono(&r, &[1, 0, 0]), mono(&r, &[0, 1, 0]), mono(&r, &[0, 0, 1])]).unwrap();
        let rep = monomial_colon_check(&xs, 3, &cfg).unwrap();
        let mut c = strings(&rep.colon);
        c.sort();
        assert_eq!(c, ["x^2", "y^2", "z^2"]);
        let f = fermat(7, true);
        let xs = ParameterSystem::full(&f, &[mono(&f, &[1, 0, 0]), mono(&f, &[0, 1, 0])]).unwrap();
        let rep = monomial_colon_check(&xs, 2, &cfg).unwrap();
        assert_ne!(rep.worst(), Some(Status::OutEvidence));
        assert!(monomial_colon_check(&xs, 1, &cfg).is_err());
    }

    #[test]
    fn briancon_skoda_examples() {
        let r = polyring(5, &["x", "y"]);
        for gens in [&[&[3u32, 0][..], &[0, 3]][..], &[&[1, 0]], &[&[1, 0], &[0, 1]]] {
            let i = AmbientIdeal::new(r.poly_ring(), gens.iter().map(|e| mono(&r, e)).collect()).unwrap();
            let rep = briancon_skoda_check(&i).unwrap();
            assert!(rep.holds());
            assert_eq!(rep.mu, gens.len());
        }
    }

    #[test]
    fn mather_examples() {
        let r = polyring(7, &["x", "y"]);
        let f = &mono(&r, &[3, 0]) + &mono(&r, &[0, 3]);
        let rep = mather_check(&f).unwrap();
        assert!(rep.holds && rep.good_prime);
        let r3 = polyring(7, &["x", "y", "z"]);
        let f = &(&mono(&r3, &[3, 0, 0]) + &mono(&r3, &[0, 3, 0])) + &mono(&r3, &[0, 0, 3]);
        assert!(mather_check(&f).unwrap().holds);
        let r1 = polyring(5, &["x"]);
        assert_eq!(mather_check(&mono(&r1, &[5])).unwrap_err(), Error::DegenerateJacobian);
    }

    #[test]
    fn probes() {
        let cfg = ClosureConfig::default();
        let f = fermat(7, true);
        let i = f.ideal(&[mono(&f, &[1, 0, 0]), mono(&f, &[0, 1, 0])]).unwrap();
        let rep = f_rational_probe(&f, &[i], 3, &cfg, &sequential_batch).unwrap();
        assert!(!rep.all_closed());
        assert_eq!(rep.entries[0].extras[0].generator.to_string(), "z^2");
        let cusp = RingPresentation::with_names(
            crate::field::PrimeChar::new(5).unwrap(),
            &["a", "b"],
            &[2, 3],
            &[&[(&[0, 2], 1), (&[3, 0], -1)]],
            true,
        )
        .unwrap();
        let i = cusp.ideal(&[mono(&cusp, &[1, 0])]).unwrap();
        let rep = f_regular_probe(&[i], 3, &cfg, &sequential_batch).unwrap();
        assert!(rep.entries[0].extras.iter().any(|e| e.generator.to_string() == "b"));
    }
}
