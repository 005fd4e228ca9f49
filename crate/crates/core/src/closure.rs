//! Bracket powers, tight-closure certificates, membership verdicts and hulls.
//!
//! Tight closure quantifies over all large e and an unknown multiplier c,
//! so only some outcomes are proofs. `IN_PROVED` is reserved for routes that
//! can be replayed (plain membership, Briançon-Skoda on monomial ideals, the
//! degree bound for parameter ideals, plus-closure witnesses). A colon chain
//! that stabilizes gives `LIKELY_IN`; failure of every Jacobian candidate up
//! to a power gives `OUT_EVIDENCE`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::AmbientIdeal;
use crate::linalg;
use crate::monomial::{Monomial, MonomialOrder};
use crate::newton::{self, NewtonRegion};
use crate::poly::{same_ring, Polynomial};
use crate::ring::{ParameterSystem, RingIdeal, RingPresentation};

/// The ideal generated by the q-th powers of the generators, q = p^e.
#[derive(Clone, Debug)]
pub struct BracketPower {
    pub e: u32,
    pub q: u64,
    /// Frobenius powers of the generators of I.
    pub generators: Vec<Polynomial>,
    /// I^[q] + J in the ambient ring.
    pub lift: AmbientIdeal,
}

pub fn bracket_power(ideal: &RingIdeal, e: u32) -> Result<BracketPower> {
    let ring = ideal.ring();
    let q = (ring.p() as u64).checked_pow(e).ok_or(Error::ExponentOverflow { bound: u64::MAX })?;
    let generators = ideal.generators().iter().map(|g| g.frobenius_q(q)).collect::<Result<Vec<_>>>()?;
    let mut all = generators.clone();
    all.extend(ring.relation_basis().generators().iter().cloned());
    let lift = AmbientIdeal::new(ring.poly_ring(), all)?;
    Ok(BracketPower { e, q, generators, lift })
}

/// A monomial order suited to the bracket powers of `gens`: variables with
/// no small pure power among the generators get the highest priority, so
/// relations are led by them and the powers x_i^q stay coprime to the
/// relation leads where possible.
pub fn working_order(ring: &RingPresentation, gens: &[Polynomial]) -> MonomialOrder {
    let primary = ring.poly_ring().order();
    let n = ring.nvars();
    let mut key = alloc::vec![u32::MAX; n];
    for g in gens {
        if g.is_monomial() {
            let m = g.leading_monomial().unwrap();
            if m.support_len() == 1 {
                let (i, &e) = m.exps().iter().enumerate().find(|(_, &e)| e > 0).unwrap();
                key[i] = key[i].min(e);
            }
        }
    }
    let mut priority = primary.priority().to_vec();
    priority.sort_by(|a, b| key[*b].cmp(&key[*a]));
    MonomialOrder::with_priority(primary.kind(), priority)
}

/// The bracket powers 𝔞_e = I^[p^e] + J for e = 0..=max_e, computed
/// iteratively (𝔞_e is generated by J and the p-th powers of any generating
/// set of 𝔞_{e−1}) in a working order chosen by [`working_order`].
pub struct BracketTower {
    primary: RingPresentation,
    work: RingPresentation,
    gens_work: Vec<Polynomial>,
    levels: Vec<OnceBox<Result<GroebnerBasis>>>,
}

impl BracketTower {
    pub fn new(ideal: &RingIdeal, max_e: u32) -> Result<Self> {
        let primary = ideal.ring().clone();
        let work = primary.with_order(working_order(&primary, ideal.generators()))?;
        let gens_work = ideal.generators().iter().map(|g| g.to_ring(work.poly_ring())).collect();
        let levels = (0..=max_e).map(|_| OnceBox::new()).collect();
        Ok(BracketTower { primary, work, gens_work, levels })
    }

    pub fn max_e(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn work_ring(&self) -> &RingPresentation {
        &self.work
    }

    pub fn to_work(&self, f: &Polynomial) -> Polynomial {
        f.to_ring(self.work.poly_ring())
    }

    pub fn to_primary(&self, f: &Polynomial) -> Polynomial {
        f.to_ring(self.primary.poly_ring())
    }

    /// Gröbner basis of I^[p^e] + J in the working order.
    pub fn level(&self, e: u32) -> Result<&GroebnerBasis> {
        let cell = self
            .levels
            .get(e as usize)
            .ok_or_else(|| Error::Precondition(alloc::format!("e = {e} is beyond the computed range")))?;
        let res = cell.get_or_init(|| Box::new(self.compute_level(e)));
        res.as_ref().map_err(|e| e.clone())
    }

    fn compute_level(&self, e: u32) -> Result<GroebnerBasis> {
        let jb = self.work.relation_basis().generators();
        let mut gens: Vec<Polynomial> = jb.to_vec();
        if e == 0 {
            gens.extend(self.gens_work.iter().cloned());
        } else {
            let p = self.work.p() as u64;
            for g in self.level(e - 1)?.generators() {
                let f = self.work.reduce(&g.frobenius_q(p)?);
                if !f.is_zero() {
                    gens.push(f);
                }
            }
        }
        GroebnerBasis::compute(&gens, self.work.poly_ring())
    }

    /// Residues w_e ≡ f^(p^e) modulo 𝔞_e for e = 0..=e_max (working ring).
    pub fn frobenius_residues(&self, f: &Polynomial, e_max: u32) -> Result<Vec<Polynomial>> {
        let p = self.work.p() as u64;
        let mut out = Vec::with_capacity(e_max as usize + 1);
        let mut w = self.level(0)?.normal_form(f);
        out.push(w.clone());
        for e in 1..=e_max {
            w = self.level(e)?.normal_form(&w.frobenius_q(p)?);
            out.push(w.clone());
        }
        Ok(out)
    }
}

/// Configuration of the membership cascade.
#[derive(Clone, Debug)]
pub struct ClosureConfig {
    pub e_max: u32,
    /// Largest power of a Jacobian candidate tried when refuting; `None` means p.
    pub k_power: Option<u32>,
    pub window: u32,
    /// Degree cap for colon-chain certificates; `None` means the largest
    /// Jacobian candidate degree (at least 1).
    pub certificate_degree: Option<u64>,
    /// A user-asserted test element, used with power 1 instead of the candidates.
    pub asserted_test_element: Option<Polynomial>,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig { e_max: 5, k_power: None, window: 2, certificate_degree: None, asserted_test_element: None }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Status {
    InProved,
    LikelyIn,
    Undetermined,
    OutEvidence,
}

impl Status {
    pub fn code(self) -> &'static str {
        match self {
            Status::InProved => "IN_PROVED",
            Status::LikelyIn => "LIKELY_IN",
            Status::Undetermined => "UNDETERMINED",
            Status::OutEvidence => "OUT_EVIDENCE",
        }
    }

    pub fn is_in(self) -> bool {
        matches!(self, Status::InProved | Status::LikelyIn)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Route {
    Zero,
    UnitIdeal,
    Member,
    BrianconSkoda,
    DegreeBound,
    PlusClosure,
    CertificateStabilization,
    TestCandidateFailure,
    AssertedTestElement,
    Exhausted,
}

impl Route {
    pub fn code(self) -> &'static str {
        match self {
            Route::Zero => "zero",
            Route::UnitIdeal => "unit-ideal",
            Route::Member => "member",
            Route::BrianconSkoda => "briancon-skoda",
            Route::DegreeBound => "degree-bound",
            Route::PlusClosure => "plus-closure",
            Route::CertificateStabilization => "certificate-stabilization",
            Route::TestCandidateFailure => "test-candidate-failure",
            Route::AssertedTestElement => "asserted-test-element",
            Route::Exhausted => "exhausted",
        }
    }
}

/// Assumptions and caveats attached to a verdict.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Note {
    DomainAssumed,
    DomainNotAsserted,
    /// Jacobian candidates are test elements only up to an unknown power.
    TestElementPowerUnknown,
    /// The chain intersects K_e over all e ≤ E rather than a tail.
    FullIntersectionChain,
    /// Certificates were searched in degrees up to this bound.
    DegreeTruncated(u64),
    AssertedTestElement,
    NoTestCandidates,
}

impl Note {
    pub fn code(self) -> &'static str {
        match self {
            Note::DomainAssumed => "domain-assumed",
            Note::DomainNotAsserted => "domain-not-asserted",
            Note::TestElementPowerUnknown => "test-element-power-unknown",
            Note::FullIntersectionChain => "full-intersection-chain",
            Note::DegreeTruncated(_) => "degree-truncated",
            Note::AssertedTestElement => "asserted-test-element",
            Note::NoTestCandidates => "no-test-candidates",
        }
    }
}

/// dim D_E in each degree 0..=δ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub e: u32,
    pub dims: Vec<usize>,
}

/// For a candidate c: the first e with c^power · z^(p^e) outside 𝔞_e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub candidate: Polynomial,
    pub power: u64,
    pub failing_e: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct ClosureVerdict {
    pub status: Status,
    pub route: Route,
    pub element: Polynomial,
    pub certificate: Option<Polynomial>,
    pub e_range: Option<(u32, u32)>,
    pub chain: Vec<ChainStep>,
    pub stabilized_at: Option<u32>,
    pub refutations: Vec<Refutation>,
    pub notes: Vec<Note>,
}

impl ClosureVerdict {
    fn simple(status: Status, route: Route, element: &Polynomial, notes: Vec<Note>) -> Self {
        ClosureVerdict {
            status,
            route,
            element: element.clone(),
            certificate: None,
            e_range: None,
            chain: Vec::new(),
            stabilized_at: None,
            refutations: Vec::new(),
            notes,
        }
    }
}

/// Everything needed to test many elements against one ideal.
pub struct ClosureContext {
    ideal: RingIdeal,
    cfg: ClosureConfig,
    tower: BracketTower,
    candidates: Result<Vec<Polynomial>>,
    delta: u64,
    bs: Option<(NewtonRegion, usize)>,
    degree_floor: Option<u64>,
}

impl ClosureContext {
    pub fn new(ideal: &RingIdeal, cfg: &ClosureConfig) -> Result<Self> {
        let ring = ideal.ring();
        if let Some(c) = &cfg.asserted_test_element {
            if !same_ring(c.ring(), ring.poly_ring()) {
                return Err(Error::RingMismatch);
            }
        }
        let tower = BracketTower::new(ideal, cfg.e_max)?;
        let candidates: Result<Vec<Polynomial>> =
            ring.jacobian_test_candidates().map(|v| v.iter().map(|c| c.rep().clone()).collect());
        let delta = cfg.certificate_degree.unwrap_or_else(|| {
            let m = match &candidates {
                Ok(v) => v.iter().filter_map(|c: &Polynomial| c.degree()).max().unwrap_or(0),
                Err(_) => 0,
            };
            m.max(1)
        });
        let bs = if ideal.is_monomial() && ring.nvars() <= newton::MAX_NEWTON_VARS && !ideal.generators().is_empty() {
            let amb = AmbientIdeal::new(ring.poly_ring(), ideal.generators().to_vec())?;
            let pts = newton::monomial_exponents(&amb)?;
            let mu = pts.len();
            Some((NewtonRegion::new(&pts, ring.nvars())?, mu))
        } else {
            None
        };
        let degree_floor = match ParameterSystem::full(ring, ideal.generators()) {
            Ok(s) if ring.dim() > 0 => Some(s.elements().iter().filter_map(|x| x.degree()).sum()),
            _ => None,
        };
        Ok(ClosureContext { ideal: ideal.clone(), cfg: cfg.clone(), tower, candidates, delta, bs, degree_floor })
    }

    pub fn ideal(&self) -> &RingIdeal {
        &self.ideal
    }

    pub fn config(&self) -> &ClosureConfig {
        &self.cfg
    }

    pub fn tower(&self) -> &BracketTower {
        &self.tower
    }

    /// Degree cap δ used for colon-chain certificates.
    pub fn certificate_degree(&self) -> u64 {
        self.delta
    }

    /// Smallest degree proved to lie in I* by the parameter degree bound.
    pub fn degree_floor(&self) -> Option<u64> {
        self.degree_floor
    }

    fn base_notes(&self) -> Vec<Note> {
        if self.ideal.ring().is_domain() {
            alloc::vec![Note::DomainAssumed]
        } else {
            alloc::vec![Note::DomainNotAsserted]
        }
    }

    /// Runs the decision cascade for z ∈ I*.
    pub fn membership(&self, z: &Polynomial) -> Result<ClosureVerdict> {
        let ring = self.ideal.ring();
        if !same_ring(z.ring(), ring.poly_ring()) {
            return Err(Error::RingMismatch);
        }
        let z = ring.reduce(z);
        let mut notes = self.base_notes();
        if z.is_zero() {
            return Ok(ClosureVerdict::simple(Status::InProved, Route::Zero, &z, notes));
        }
        if self.ideal.is_unit() {
            return Ok(ClosureVerdict::simple(Status::InProved, Route::UnitIdeal, &z, notes));
        }
        if self.ideal.contains(&z) {
            return Ok(ClosureVerdict::simple(Status::InProved, Route::Member, &z, notes));
        }
        let mut proved = None;
        if let Some((region, mu)) = &self.bs {
            let scaled_in = |v: &[u32]| {
                region.facets().iter().all(|(w, b)| {
                    let s: i128 = w.iter().zip(v).map(|(&a, &x)| a as i128 * x as i128).sum();
                    s >= *b as i128 * *mu as i128
                })
            };
            if z.terms().iter().all(|(m, _)| scaled_in(m.exps())) {
                proved = Some(Route::BrianconSkoda);
            }
        }
        if let Some(floor) = self.degree_floor {
            if proved.is_none() && z.is_homogeneous() && z.degree().unwrap_or(0) >= floor {
                proved = Some(Route::DegreeBound);
            }
        }

        let e_max = self.cfg.e_max;
        let zw = self.tower.to_work(&z);
        let residues = self.tower.frobenius_residues(&zw, e_max)?;
        let (chain, kernel) = self.colon_chain(&residues)?;
        notes.push(Note::DegreeTruncated(self.delta));
        let last = chain.last().map(|s| s.dims.clone()).unwrap_or_default();
        let stabilized_at = chain.iter().find(|s| s.dims == last).map(|s| s.e);
        let window = self.cfg.window.max(1);
        let stable = e_max + 1 >= window
            && chain[(e_max + 1 - window) as usize..].iter().all(|s| s.dims == last)
            && last.iter().any(|&d| d > 0);
        if let Some(route) = proved {
            // the chain is kept as supporting evidence; the route is the proof
            return Ok(ClosureVerdict {
                status: Status::InProved,
                route,
                element: z,
                certificate: if stable { kernel } else { None },
                e_range: Some((0, e_max)),
                chain,
                stabilized_at: if stable { stabilized_at } else { None },
                refutations: Vec::new(),
                notes,
            });
        }
        if stable {
            notes.push(Note::FullIntersectionChain);
            return Ok(ClosureVerdict {
                status: Status::LikelyIn,
                route: Route::CertificateStabilization,
                element: z,
                certificate: kernel,
                e_range: Some((0, e_max)),
                chain,
                stabilized_at,
                refutations: Vec::new(),
                notes,
            });
        }

        let (route, tests): (Route, Vec<(Polynomial, u64)>) = match &self.cfg.asserted_test_element {
            Some(c) => {
                notes.push(Note::AssertedTestElement);
                (Route::AssertedTestElement, alloc::vec![(c.clone(), 1)])
            }
            None => match &self.candidates {
                Ok(cands) => {
                    let k = self.cfg.k_power.map(u64::from).unwrap_or(ring.p() as u64);
                    notes.push(Note::TestElementPowerUnknown);
                    (Route::TestCandidateFailure, cands.iter().map(|c| (c.clone(), k)).collect())
                }
                Err(_) => {
                    notes.push(Note::NoTestCandidates);
                    (Route::TestCandidateFailure, Vec::new())
                }
            },
        };
        let mut refutations = Vec::with_capacity(tests.len());
        for (c, k) in tests {
            let ck = ring.element(&c)?.pow(k)?;
            let ckw = self.tower.to_work(ck.rep());
            let mut failing = None;
            if !ck.is_zero() {
                for (e, w) in residues.iter().enumerate() {
                    let prod = self.tower.level(e as u32)?.normal_form(&ckw.mul_unchecked(w));
                    if !prod.is_zero() {
                        failing = Some(e as u32);
                        break;
                    }
                }
            }
            refutations.push(Refutation { candidate: c, power: k, failing_e: failing });
        }
        let refuted = !refutations.is_empty() && refutations.iter().all(|r| r.failing_e.is_some());
        Ok(ClosureVerdict {
            status: if refuted { Status::OutEvidence } else { Status::Undetermined },
            route: if refuted { route } else { Route::Exhausted },
            element: z,
            certificate: None,
            e_range: Some((0, e_max)),
            chain,
            stabilized_at: None,
            refutations,
            notes,
        })
    }

    /// D_E = ∩_{e ≤ E} (𝔞_e : z^(p^e)) in degrees 0..=δ, by linear algebra on
    /// the standard-monomial basis of each graded piece of R. Returns the
    /// chain and a sparsest lowest-degree element of D_{e_max}.
    fn colon_chain(&self, residues: &[Polynomial]) -> Result<(Vec<ChainStep>, Option<Polynomial>)> {
        let ring = self.ideal.ring();
        let ch = ring.ch();
        let wring = self.tower.work_ring().poly_ring().clone();
        let degrees = self.delta as usize + 1;
        let cols: Vec<Vec<Monomial>> =
            (0..degrees).map(|d| ring.relation_ideal().degree_slice_basis(d as u64)).collect();
        let cols_w: Vec<Vec<Monomial>> = cols
            .iter()
            .map(|ms| ms.iter().map(|m| Monomial::new(m.exps(), wring.weights())).collect())
            .collect();
        let mut mats: Vec<Vec<Vec<u32>>> = alloc::vec![Vec::new(); degrees];
        let mut chain = Vec::with_capacity(residues.len());
        for (e, w) in residues.iter().enumerate() {
            let level = self.tower.level(e as u32)?;
            let mut dims = Vec::with_capacity(degrees);
            for d in 0..degrees {
                let ncols = cols_w[d].len();
                let mut rows: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
                for (j, m) in cols_w[d].iter().enumerate() {
                    let prod = level.normal_form(&w.mul_term(m, 1));
                    for (t, c) in prod.terms() {
                        rows.entry(t.exps().to_vec()).or_insert_with(|| alloc::vec![0; ncols])[j] = *c;
                    }
                }
                mats[d].extend(rows.into_values());
                let pivots = linalg::rref(&mut mats[d], ncols, ch);
                dims.push(ncols - pivots.len());
            }
            chain.push(ChainStep { e: e as u32, dims });
        }
        let mut cert = None;
        for d in 0..degrees {
            let ncols = cols[d].len();
            let ker = linalg::kernel(&mats[d], ncols, ch);
            if let Some(v) = ker.iter().min_by_key(|v| v.iter().filter(|&&x| x != 0).count()) {
                let terms = cols[d].iter().zip(v).filter(|(_, &c)| c != 0).map(|(m, &c)| (m.clone(), c)).collect();
                cert = Some(Polynomial::from_terms(ring.poly_ring(), terms).monic());
                break;
            }
        }
        Ok((chain, cert))
    }
}

/// z ∈ I* by the decision cascade (see [`ClosureContext::membership`]).
pub fn tc_membership(ideal: &RingIdeal, z: &Polynomial, cfg: &ClosureConfig) -> Result<ClosureVerdict> {
    ClosureContext::new(ideal, cfg)?.membership(z)
}

/// Rows (e, c·z^(p^e) ∈ I^[p^e] + J) of a certificate check.
#[derive(Clone, Debug)]
pub struct CertificateTable {
    pub ring: RingPresentation,
    pub ideal: Vec<Polynomial>,
    pub element: Polynomial,
    pub certificate: Polynomial,
    pub rows: Vec<(u32, bool)>,
}

impl CertificateTable {
    pub fn all_true(&self) -> bool {
        self.rows.iter().all(|r| r.1)
    }
}

pub fn tc_certificate_check(
    ideal: &RingIdeal,
    z: &Polynomial,
    c: &Polynomial,
    e_range: core::ops::RangeInclusive<u32>,
) -> Result<CertificateTable> {
    let ring = ideal.ring();
    let cr = ring.element(c)?;
    if cr.is_zero() {
        return Err(Error::ZeroCertificate);
    }
    if e_range.is_empty() {
        return Err(Error::Precondition(String::from("empty e range")));
    }
    let z = ring.element(z)?;
    let tower = BracketTower::new(ideal, *e_range.end())?;
    let residues = tower.frobenius_residues(&tower.to_work(z.rep()), *e_range.end())?;
    let cw = tower.to_work(cr.rep());
    let mut rows = Vec::new();
    for e in e_range {
        let nf = tower.level(e)?.normal_form(&cw.mul_unchecked(&residues[e as usize]));
        rows.push((e, nf.is_zero()));
    }
    Ok(CertificateTable {
        ring: ring.clone(),
        ideal: ideal.generators().to_vec(),
        element: z.rep().clone(),
        certificate: cr.rep().clone(),
        rows,
    })
}

/// Re-checks a certificate table in R/(h).
pub fn persistence_pushforward(table: &CertificateTable, h: &[Polynomial]) -> Result<CertificateTable> {
    let target = if h.iter().all(|f| table.ring.reduce(f).is_zero()) {
        table.ring.clone()
    } else {
        table.ring.quotient(h)?
    };
    if target.reduce(&table.certificate).is_zero() {
        return Err(Error::CertificateKilled);
    }
    let ideal = target.ideal(&table.ideal)?;
    let (lo, hi) = match (table.rows.first(), table.rows.last()) {
        (Some(a), Some(b)) => (a.0, b.0),
        _ => return Err(Error::Precondition(String::from("empty table"))),
    };
    tc_certificate_check(&ideal, &table.element, &table.certificate, lo..=hi)
}

/// Plus-closure data: a finite extension S, images of R's variables in S,
/// and coefficients a_i in S with φ(z) = Σ a_i φ(y_i).
#[derive(Clone, Debug)]
pub struct PlusWitness {
    pub extension: RingPresentation,
    pub images: Vec<Polynomial>,
    pub coefficients: Vec<Polynomial>,
}

pub fn plus_closure_witness_check(ideal: &RingIdeal, z: &Polynomial, w: &PlusWitness) -> Result<bool> {
    let ring = ideal.ring();
    let s = &w.extension;
    if s.p() != ring.p() {
        return Err(Error::CharMismatch { left: ring.p(), right: s.p() });
    }
    if w.images.len() != ring.nvars() {
        return Err(Error::Precondition(String::from("one image per variable is required")));
    }
    if w.coefficients.len() != ideal.generators().len() {
        return Err(Error::Precondition(String::from("one coefficient per generator is required")));
    }
    for (i, rel) in ring.relations().iter().enumerate() {
        let img = rel.compose(&w.images, s.poly_ring())?;
        if !s.reduce(&img).is_zero() {
            return Err(Error::MapError { relation: i + 1 });
        }
    }
    let mut rhs = Polynomial::zero(s.poly_ring());
    for (a, y) in w.coefficients.iter().zip(ideal.generators()) {
        if !same_ring(a.ring(), s.poly_ring()) {
            return Err(Error::RingMismatch);
        }
        rhs = rhs.add_scaled(&a.mul_unchecked(&y.compose(&w.images, s.poly_ring())?), 1);
    }
    let lhs = z.compose(&w.images, s.poly_ring())?;
    Ok(s.reduce(&lhs.add_scaled(&rhs, s.ch().neg(1))).is_zero())
}

/// IN_PROVED via a plus-closure witness when it checks, else the cascade.
pub fn tc_membership_with_witness(
    ctx: &ClosureContext,
    z: &Polynomial,
    w: &PlusWitness,
) -> Result<(bool, ClosureVerdict)> {
    let ok = plus_closure_witness_check(ctx.ideal(), z, w)?;
    let verdict = if ok {
        let z = ctx.ideal().ring().reduce(z);
        ClosureVerdict::simple(Status::InProved, Route::PlusClosure, &z, ctx.base_notes())
    } else {
        ctx.membership(z)?
    };
    Ok((ok, verdict))
}

#[derive(Clone, Debug)]
pub struct HullGenerator {
    pub generator: Polynomial,
    /// `None` for generators of the input ideal.
    pub verdict: Option<ClosureVerdict>,
}

#[derive(Clone, Debug)]
pub struct HullResult {
    pub input: Vec<Polynomial>,
    pub degree_bound: u64,
    pub generators: Vec<HullGenerator>,
    pub sweeps: u32,
    pub fixed_point: bool,
}

impl HullResult {
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.generator.clone()).collect()
    }

    /// Generators adjoined to the input.
    pub fn additions(&self) -> impl Iterator<Item = &HullGenerator> {
        self.generators.iter().filter(|g| g.verdict.is_some())
    }
}

/// Evaluates membership for a batch of elements against one context; lets
/// callers supply a parallel map.
pub type BatchMembership<'a> = &'a (dyn Fn(&ClosureContext, &[Polynomial]) -> Vec<Result<ClosureVerdict>> + Sync);

pub fn sequential_batch(ctx: &ClosureContext, zs: &[Polynomial]) -> Vec<Result<ClosureVerdict>> {
    zs.iter().map(|z| ctx.membership(z)).collect()
}

/// Fixed-point sweep adjoining standard monomials of degree ≤ bound that
/// test IN_PROVED or LIKELY_IN.
pub fn tc_hull(ideal: &RingIdeal, degree_bound: u64, cfg: &ClosureConfig) -> Result<HullResult> {
    tc_hull_with(ideal, degree_bound, cfg, &sequential_batch)
}

pub fn tc_hull_with(
    ideal: &RingIdeal,
    degree_bound: u64,
    cfg: &ClosureConfig,
    batch: BatchMembership<'_>,
) -> Result<HullResult> {
    if !ideal.is_homogeneous() {
        return Err(Error::Precondition(String::from("hull requires a homogeneous ideal")));
    }
    if degree_bound < ideal.max_generator_degree() {
        return Err(Error::Precondition(String::from("degree bound is below a generator degree")));
    }
    let ring = ideal.ring();
    let mut generators: Vec<HullGenerator> =
        ideal.generators().iter().map(|g| HullGenerator { generator: g.clone(), verdict: None }).collect();
    let mut current = ideal.clone();
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let ctx = ClosureContext::new(&current, cfg)?;
        let mut tests: Vec<Polynomial> = Vec::new();
        for n in 0..=degree_bound {
            for m in current.lift().degree_slice_basis(n) {
                tests.push(Polynomial::from_monomial(ring.poly_ring(), m, 1));
            }
        }
        let verdicts = batch(&ctx, &tests);
        let mut added = Vec::new();
        for (z, v) in tests.into_iter().zip(verdicts) {
            let v = v?;
            if v.status.is_in() {
                added.push(HullGenerator { generator: z, verdict: Some(v) });
            }
        }
        if added.is_empty() {
            return Ok(HullResult {
                input: ideal.generators().to_vec(),
                degree_bound,
                generators,
                sweeps,
                fixed_point: true,
            });
        }
        let extra: Vec<Polynomial> = added.iter().map(|g| g.generator.clone()).collect();
        current = current.with_generators(&extra)?;
        generators.extend(added);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::tests::{fermat, polyring, semigroup};
    use alloc::string::ToString;

    fn mono(r: &RingPresentation, e: &[u32]) -> Polynomial {
        Polynomial::from_monomial(r.poly_ring(), r.poly_ring().monomial(e), 1)
    }

    #[test]
    fn bracket_power_examples() {
        let f = fermat(7, true);
        let i = f.ideal(&[mono(&f, &[1, 0, 0]), mono(&f, &[0, 1, 0])]).unwrap();
        let b = bracket_power(&i, 1).unwrap();
        let s: Vec<_> = b.generators.iter().map(|g| g.to_string()).collect();
        assert_eq!(s, ["x^7", "y^7"]);
        let b0 = bracket_power(&i, 0).unwrap();
        assert!(b0.lift.same_ideal(i.lift()));
        let r = polyring(2, &["x", "y"]);
        let sum = &mono(&r, &[1, 0]) + &mono(&r, &[0, 1]);
        let b = bracket_power(&r.ideal(&[sum]).unwrap(), 1).unwrap();
        assert_eq!(b.generators[0].to_string(), "x^2+y^2");
    }

    #[test]
    fn fermat_certificates() {
        let f = fermat(7, true);
        let i = f.ideal(&[mono(&f, &[1, 0, 0]), mono(&f, &[0, 1, 0])]).unwrap();
        let t = tc_certificate_check(&i, &mono(&f, &[0, 0, 2]), &mono(&f, &[1, 0, 0]), 1..=5).unwrap();
        assert!(t.all_true());
        let t = tc_certificate_check(&i, &mono(&f, &[0, 0, 1]), &mono(&f, &[1, 0, 0]), 1..=5).unwrap();
        assert!(!t.all_true());
        let zero = Polynomial::zero(f.poly_ring());
        assert_eq!(tc_certificate_check(&i, &zero, &zero, 1..=2).unwrap_err(), Error::ZeroCertificate);
    }

    #[test]
    fn fermat_membership() {
        let f = fermat(7, true);
        let i = f.ideal(&[mono(&f, &[1, 0, 0]), mono(&f, &[0, 1, 0])]).unwrap();
        let cfg = ClosureConfig::default();
        let v = tc_membership(&i, &mono(&f, &[0, 0, 2]), &cfg).unwrap();
        assert_eq!((v.status, v.route), (Status::InProved, Route::DegreeBound));
        assert_eq!(v.certificate.unwrap().to_string(), "x");
        let v = tc_membership(&i, &mono(&f, &[0, 0, 1]), &cfg).unwrap();
        assert_eq!(v.status, Status::OutEvidence);
        let v = tc_membership(&i, &mono(&f, &[1, 1, 0]), &cfg).unwrap();
        assert_eq!((v.status, v.route), (Status::InProved, Route::Member));
    }

    #[test]
    fn fermat_hull() {
        for p in [2, 5, 7, 11, 13] {
            let f = fermat(p, true);
            let i = f.ideal(&[mono(&f, &[1, 0, 0]), mono(&f, &[0, 1, 0])]).unwrap();
            let h = tc_hull(&i, 3, &ClosureConfig::default()).unwrap();
            let s: Vec<_> = h.polynomials().iter().map(|g| g.to_string()).collect();
            assert_eq!(s, ["x", "y", "z^2"], "p = {p}");
            assert!(h.fixed_point);
        }
    }

    #[test]
    fn regular_ring_is_tightly_closed() {
        let r = polyring(5, &["x", "y"]);
        let i = r.ideal(&[mono(&r, &[2, 0]), mono(&r, &[0, 2])]).unwrap();
        let h = tc_hull(&i, 4, &ClosureConfig::default()).unwrap();
        assert_eq!(h.generators.len(), 2);
        let v = tc_membership(&i, &mono(&r, &[1, 1]), &ClosureConfig::default()).unwrap();
        assert_eq!(v.status, Status::OutEvidence);
    }

    #[test]
    fn semigroup_colon_element() {
        let sg = semigroup(2);
        let i = sg.ideal(&[mono(&sg, &[1, 0, 0, 0])]).unwrap();
        let v = tc_membership(&i, &mono(&sg, &[0, 2, 0, 0]), &ClosureConfig::default()).unwrap();
        assert_eq!((v.status, v.route), (Status::LikelyIn, Route::CertificateStabilization));
        assert_eq!(v.certificate.unwrap().to_string(), "a");
        assert_eq!(v.stabilized_at, Some(0));
    }

    #[test]
    fn plus_closure_cusp() {
        let cusp = RingPresentation::with_names(
            crate::field::PrimeChar::new(5).unwrap(),
            &["a", "b"],
            &[2, 3],
            &[&[(&[0, 2], 1), (&[3, 0], -1)]],
            true,
        )
        .unwrap();
        let s = polyring(5, &["t"]);
        let t = |e: u32| mono(&s, &[e]);
        let i = cusp.ideal(&[mono(&cusp, &[1, 0])]).unwrap();
        let b = mono(&cusp, &[0, 1]);
        let w = PlusWitness { extension: s.clone(), images: alloc::vec![t(2), t(3)], coefficients: alloc::vec![t(1)] };
        assert!(plus_closure_witness_check(&i, &b, &w).unwrap());
        let bad = PlusWitness { coefficients: alloc::vec![t(2)], ..w.clone() };
        assert!(!plus_closure_witness_check(&i, &b, &bad).unwrap());
        let not_map = PlusWitness { images: alloc::vec![t(1), t(1)], ..w };
        assert_eq!(plus_closure_witness_check(&i, &b, &not_map).unwrap_err(), Error::MapError { relation: 1 });
    }

    #[test]
    fn persistence() {
        let r = polyring(5, &["x", "y", "z"]);
        let i = r.ideal(&[mono(&r, &[1, 0, 0]), mono(&r, &[0, 1, 0])]).unwrap();
        let one = Polynomial::one(r.poly_ring());
        let t = tc_certificate_check(&i, &mono(&r, &[1, 0, 0]), &one, 0..=3).unwrap();
        let pushed = persistence_pushforward(&t, &[mono(&r, &[0, 0, 1])]).unwrap();
        assert!(pushed.all_true());
        let f = fermat(7, true);
        let fi = f.ideal(&[mono(&f, &[1, 0, 0]), mono(&f, &[0, 1, 0])]).unwrap();
        let x = mono(&f, &[1, 0, 0]);
        let t = tc_certificate_check(&fi, &mono(&f, &[0, 0, 2]), &x, 1..=3).unwrap();
        let same = persistence_pushforward(&t, &[]).unwrap();
        assert_eq!(same.rows, t.rows);
        assert_eq!(persistence_pushforward(&t, &[x]).unwrap_err(), Error::CertificateKilled);
    }
}
