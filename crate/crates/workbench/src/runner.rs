//! Task dispatch: resolves script names in a concrete ring (or in every
//! fiber of an integer ring) and calls into the core.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;

use tightclosure_core::closure::{
    bracket_power, persistence_pushforward, tc_certificate_check, tc_hull_with, tc_membership_with_witness,
    BatchMembership, ClosureConfig, ClosureContext, ClosureVerdict, PlusWitness, Status,
};
use tightclosure_core::hk::{hk_compare, hk_table, hs_table};
use tightclosure_core::lc::{
    a_invariant, degree_one_parameters, fujita_probe, kodaira_tc_check, lc_fraction, lc_frobenius, lc_zero_test,
    zero_star_test, CechFraction, LcStatus,
};
use tightclosure_core::models::{reduce_model_family, Fiber, IntegerPresentation, SkipReason};
use tightclosure_core::newton::{self, describe_facets, monomial_integral_closure, NewtonRegion};
use tightclosure_core::theorems::{
    briancon_skoda_check, colon_capture_report, f_rational_probe, f_regular_probe, mather_check,
    monomial_colon_check, monomial_colon_hull_check, ColonEntry, ProbeReport,
};
use tightclosure_core::{
    AmbientIdeal, MonomialOrder, ParameterSystem, PolyRing, Polynomial, PrimeChar, RingIdeal, RingPresentation,
};

use crate::doc::*;
use crate::render::render_task;
use crate::script::{Characteristic, OptKey, RingDecl, TaskDecl, TaskKind, WorkbenchScript};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OrderChoice {
    #[default]
    Grevlex,
    Lex,
}

impl OrderChoice {
    pub fn name(self) -> &'static str {
        match self {
            OrderChoice::Grevlex => "grevlex",
            OrderChoice::Lex => "lex",
        }
    }

    fn order(self, n: usize) -> MonomialOrder {
        match self {
            OrderChoice::Grevlex => MonomialOrder::grevlex(n),
            OrderChoice::Lex => MonomialOrder::lex(n),
        }
    }
}

/// Command-line settings. Options written in a task take precedence.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub emax: Option<u32>,
    pub kpow: Option<u32>,
    pub bound: Option<u64>,
    pub smax: Option<u64>,
    pub order: OrderChoice,
    pub primes: Option<Vec<u64>>,
    pub assert_test_element: Option<String>,
    pub timing: bool,
}

impl RunConfig {
    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            order: self.order.name(),
            emax: self.emax,
            kpow: self.kpow,
            bound: self.bound,
            smax: self.smax,
            primes: self.primes.clone(),
            assert_test_element: self.assert_test_element.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TaskError {
    #[error(transparent)]
    Core(#[from] tightclosure_core::Error),
    #[error("{0}")]
    Config(String),
}

impl TaskError {
    pub fn code(&self) -> &'static str {
        match self {
            TaskError::Core(e) => e.code(),
            TaskError::Config(_) => "invalid-config",
        }
    }

    fn doc(&self) -> ErrorDoc {
        ErrorDoc { code: self.code().into(), message: self.to_string() }
    }
}

type TaskResultT<T> = Result<T, TaskError>;

fn config_err<T>(msg: impl Into<String>) -> TaskResultT<T> {
    Err(TaskError::Config(msg.into()))
}

/// Membership tests of a batch run in parallel on the current rayon pool;
/// results keep the input order.
pub fn parallel_batch(ctx: &ClosureContext, zs: &[Polynomial]) -> Vec<tightclosure_core::Result<ClosureVerdict>> {
    zs.par_iter().map(|z| ctx.membership(z)).collect()
}

const BATCH: BatchMembership<'static> = &parallel_batch;

fn integer_presentation(r: &RingDecl) -> IntegerPresentation {
    IntegerPresentation {
        names: r.vars.clone(),
        weights: r.weights_or_default(),
        relations: r.relations.clone(),
        domain: r.domain,
    }
}

fn build_ring(r: &RingDecl, p: u64, order: OrderChoice) -> tightclosure_core::Result<RingPresentation> {
    let ch = PrimeChar::new(p)?;
    let poly = PolyRing::new(ch, r.vars.clone(), r.weights_or_default(), order.order(r.vars.len()));
    let rels = r.relations.iter().map(|t| Polynomial::from_int_terms(&poly, t)).collect();
    RingPresentation::new(&poly, rels, r.domain)
}

/// Script names resolved at one characteristic.
struct Env<'a> {
    script: &'a WorkbenchScript,
    rings: HashMap<String, tightclosure_core::Result<RingPresentation>>,
}

impl<'a> Env<'a> {
    fn ring(&self, name: &str) -> TaskResultT<&RingPresentation> {
        match self.rings.get(name) {
            Some(Ok(r)) => Ok(r),
            Some(Err(e)) => Err(e.clone().into()),
            None => config_err(format!("ring `{name}` is not available here")),
        }
    }

    fn element(&self, name: &str) -> TaskResultT<Polynomial> {
        let e = self.script.element(name).ok_or_else(|| TaskError::Config(format!("`{name}` is not an element")))?;
        let ring = self.ring(&e.ring)?;
        Ok(Polynomial::from_int_terms(ring.poly_ring(), &e.value))
    }

    fn gens(&self, name: &str) -> TaskResultT<Vec<Polynomial>> {
        let i = self.script.ideal(name).ok_or_else(|| TaskError::Config(format!("`{name}` is not an ideal")))?;
        let ring = self.ring(&i.ring)?;
        Ok(i.generators.iter().map(|g| Polynomial::from_int_terms(ring.poly_ring(), g)).collect())
    }

    fn ideal(&self, name: &str) -> TaskResultT<RingIdeal> {
        let i = self.script.ideal(name).ok_or_else(|| TaskError::Config(format!("`{name}` is not an ideal")))?;
        Ok(self.ring(&i.ring)?.ideal(&self.gens(name)?)?)
    }
}

pub struct Runner<'a> {
    script: &'a WorkbenchScript,
    cfg: RunConfig,
    prime_rings: HashMap<String, tightclosure_core::Result<RingPresentation>>,
}

impl<'a> Runner<'a> {
    pub fn new(script: &'a WorkbenchScript, cfg: RunConfig) -> Self {
        let mut prime_rings = HashMap::new();
        for d in &script.decls {
            if let crate::script::Decl::Ring(r) = d {
                if let Characteristic::Prime(p) = r.characteristic {
                    prime_rings.insert(r.name.clone(), build_ring(r, p, cfg.order));
                }
            }
        }
        Runner { script, cfg, prime_rings }
    }

    pub fn run_all(&self) -> ResultDocument {
        self.run_selected(|_, _| true)
    }

    /// Runs the tasks accepted by `keep(index, task)` (1-based index).
    pub fn run_selected(&self, keep: impl Fn(usize, &TaskDecl) -> bool) -> ResultDocument {
        let mut tasks = Vec::new();
        for (i, (pos, t)) in self.script.tasks().enumerate() {
            if keep(i + 1, t) {
                tasks.push(self.run_task(i + 1, pos.line, t));
            }
        }
        let exit_code = exit_code(&tasks);
        ResultDocument { schema: SCHEMA_ID, tool: Tool::default(), config: self.cfg.echo(), tasks, exit_code }
    }

    pub fn run_task(&self, index: usize, line: usize, task: &TaskDecl) -> TaskResult {
        let start = Instant::now();
        let res = if task.models {
            self.run_models(task)
        } else {
            let env = Env { script: self.script, rings: self.prime_rings.clone() };
            self.exec(task, &env)
        };
        let timing_ms = self.cfg.timing.then(|| start.elapsed().as_millis() as u64);
        let mut notes = Vec::new();
        if self.script.ring(&task.ring).is_some_and(|r| !r.domain) {
            notes.push("domain-not-asserted".to_string());
        }
        let (outcome, result, error) = match res {
            Ok(p) => {
                for v in p.verdicts() {
                    for n in &v.notes {
                        if !notes.contains(n) {
                            notes.push(n.clone());
                        }
                    }
                }
                let o = if p.is_undetermined() { Outcome::Undetermined } else { Outcome::Ok };
                (o, Some(p), None)
            }
            Err(e) => (Outcome::Error, None, Some(e.doc())),
        };
        TaskResult { index, line, echo: render_task(task), kind: task.kind.name(), outcome, result, error, notes, timing_ms }
    }

    fn closure_config(&self, task: &TaskDecl, env: &Env<'_>) -> TaskResultT<ClosureConfig> {
        let d = ClosureConfig::default();
        let asserted = match &self.cfg.assert_test_element {
            Some(name) => {
                let e = self
                    .script
                    .element(name)
                    .ok_or_else(|| TaskError::Config(format!("--assert-test-element: `{name}` is not an element")))?;
                if e.ring != task.ring {
                    return config_err(format!("--assert-test-element: `{name}` is not in ring `{}`", task.ring));
                }
                Some(env.element(name)?)
            }
            None => None,
        };
        Ok(ClosureConfig {
            e_max: task.option(OptKey::Emax).map(|v| v as u32).or(self.cfg.emax).unwrap_or(d.e_max),
            k_power: task.option(OptKey::Kpow).map(|v| v as u32).or(self.cfg.kpow),
            window: task.option(OptKey::Window).map(|v| v as u32).unwrap_or(d.window),
            certificate_degree: task.option(OptKey::Degree),
            asserted_test_element: asserted,
        })
    }

    fn hull_bound(&self, task: &TaskDecl, ideals: &[&RingIdeal]) -> u64 {
        let top = ideals.iter().map(|i| i.max_generator_degree()).max().unwrap_or(0);
        task.option(OptKey::Bound).or(self.cfg.bound).unwrap_or(top + 1).max(top)
    }

    fn exec(&self, task: &TaskDecl, env: &Env<'_>) -> TaskResultT<Payload> {
        let ring = env.ring(&task.ring)?;
        let a = &task.args;
        let opt = |k: OptKey| task.option(k);
        Ok(match task.kind {
            TaskKind::TcHull => {
                let i = env.ideal(&a[0])?;
                let cfg = self.closure_config(task, env)?;
                let bound = self.hull_bound(task, &[&i]);
                Payload::Hull(HullDoc::from(&tc_hull_with(&i, bound, &cfg, BATCH)?))
            }
            TaskKind::TcMembership => {
                let i = env.ideal(&a[0])?;
                let z = env.element(&a[1])?;
                let cfg = self.closure_config(task, env)?;
                Payload::Verdict(VerdictDoc::from(&ClosureContext::new(&i, &cfg)?.membership(&z)?))
            }
            TaskKind::Certificate => {
                let i = env.ideal(&a[0])?;
                let (lo, hi) = self.e_range(task);
                let t = tc_certificate_check(&i, &env.element(&a[1])?, &env.element(&a[2])?, lo..=hi)?;
                Payload::Certificate(CertificateDoc::from(&t))
            }
            TaskKind::Persistence => {
                let i = env.ideal(&a[0])?;
                let (lo, hi) = self.e_range(task);
                let t = tc_certificate_check(&i, &env.element(&a[1])?, &env.element(&a[2])?, lo..=hi)?;
                let h = env.gens(&a[3])?;
                let pushed = persistence_pushforward(&t, &h)?;
                let preserved = t.rows.iter().zip(&pushed.rows).all(|(s, d)| !s.1 || d.1);
                Payload::Persistence(PersistenceDoc {
                    quotient_by: polys(&h),
                    source: CertificateDoc::from(&t),
                    target: CertificateDoc::from(&pushed),
                    preserved,
                })
            }
            TaskKind::PlusWitness => {
                let i = env.ideal(&a[0])?;
                let z = env.element(&a[1])?;
                let ext = env.ring(&a[2])?.clone();
                let w = PlusWitness { extension: ext, images: env.gens(&a[3])?, coefficients: env.gens(&a[4])? };
                let ctx = ClosureContext::new(&i, &self.closure_config(task, env)?)?;
                let (holds, v) = tc_membership_with_witness(&ctx, &z, &w)?;
                Payload::PlusWitness(PlusWitnessDoc { holds, verdict: VerdictDoc::from(&v) })
            }
            TaskKind::Bracket => {
                let i = env.ideal(&a[0])?;
                let b = bracket_power(&i, opt(OptKey::E).unwrap_or(1) as u32)?;
                Payload::Bracket(BracketDoc {
                    e: b.e,
                    q: b.q,
                    generators: polys(&b.generators),
                    groebner_basis: polys(b.lift.groebner().generators()),
                })
            }
            TaskKind::Jacobian => {
                let c = ring.jacobian_test_candidates()?;
                Payload::Jacobian(c.iter().map(|e| e.rep().to_string()).collect())
            }
            TaskKind::Parameters => {
                let xs = ParameterSystem::new(ring, &env.gens(&a[0])?)?;
                let regular = if xs.is_verified() { xs.regular_sequence_check().to_vec() } else { Vec::new() };
                Payload::Parameters(ParametersDoc {
                    elements: polys(xs.elements()),
                    dimension: ring.dim(),
                    parameter_system: xs.is_verified(),
                    full: xs.is_full(),
                    regular_sequence: regular,
                    cohen_macaulay: xs.certifies_cohen_macaulay(),
                })
            }
            TaskKind::ColonCapture => {
                let xs = ParameterSystem::new(ring, &env.gens(&a[0])?)?;
                let cfg = self.closure_config(task, env)?;
                let indices: Vec<usize> = match opt(OptKey::Index) {
                    Some(i) => vec![i as usize],
                    None => (1..xs.len()).collect(),
                };
                let mut out = Vec::new();
                for i in indices {
                    let r = colon_capture_report(&xs, i, &cfg)?;
                    out.push(ColonCaptureDoc {
                        index: i,
                        colon: polys(&r.colon),
                        outside: entries(&r.outside),
                        captured: r.captured(),
                        worst: r.worst().map(|s| s.code()),
                    });
                }
                Payload::ColonCapture(out)
            }
            TaskKind::MonomialColon => {
                let xs = ParameterSystem::new(ring, &env.gens(&a[0])?)?;
                let cfg = self.closure_config(task, env)?;
                let t = opt(OptKey::T).unwrap_or(2) as u32;
                let r = match opt(OptKey::Bound).or(self.cfg.bound) {
                    Some(b) => monomial_colon_hull_check(&xs, t, b, &cfg, BATCH)?,
                    None => monomial_colon_check(&xs, t, &cfg)?,
                };
                Payload::MonomialColon(MonomialColonDoc {
                    t: r.t,
                    colon: polys(&r.colon),
                    target: polys(&r.target),
                    entries: entries(&r.entries),
                    worst: r.worst().map(|s| s.code()),
                    heuristic: r.heuristic,
                })
            }
            TaskKind::IntegralClosure => {
                let gens = env.gens(&a[0])?;
                let amb = AmbientIdeal::new(ring.poly_ring(), gens)?;
                let c = monomial_integral_closure(&amb)?;
                let region = NewtonRegion::new(&newton::monomial_exponents(&amb)?, ring.nvars())?;
                Payload::IntegralClosure(IntegralClosureDoc {
                    generators: polys(c.generators()),
                    facets: describe_facets(&region, ring.poly_ring().names()),
                    ambient: !ring.is_polynomial_ring(),
                })
            }
            TaskKind::BrianconSkoda => {
                require_polynomial_ring(ring, task.kind)?;
                let amb = AmbientIdeal::new(ring.poly_ring(), env.gens(&a[0])?)?;
                let r = briancon_skoda_check(&amb)?;
                Payload::BrianconSkoda(BrianconSkodaDoc {
                    mu: r.mu,
                    closure: polys(&r.closure),
                    violators: polys(&r.violators),
                    holds: r.holds(),
                })
            }
            TaskKind::Mather => {
                require_polynomial_ring(ring, task.kind)?;
                let r = mather_check(&env.element(&a[0])?)?;
                Payload::Mather(MatherDoc {
                    power: r.power,
                    jacobian: polys(&r.jacobian),
                    holds: r.holds,
                    trace_steps: r.trace_steps,
                    good_prime: r.good_prime,
                })
            }
            TaskKind::FRegular | TaskKind::FRational => {
                let ideals = a.iter().map(|n| env.ideal(n)).collect::<TaskResultT<Vec<_>>>()?;
                let cfg = self.closure_config(task, env)?;
                let bound = self.hull_bound(task, &ideals.iter().collect::<Vec<_>>());
                let r = if task.kind == TaskKind::FRegular {
                    f_regular_probe(&ideals, bound, &cfg, BATCH)?
                } else {
                    f_rational_probe(ring, &ideals, bound, &cfg, BATCH)?
                };
                Payload::Probe(probe_doc(&r, task.kind == TaskKind::FRational))
            }
            TaskKind::Hk => {
                let i = env.ideal(&a[0])?;
                let t = hk_table(&i, opt(OptKey::Emin).unwrap_or(1) as u32, self.hk_emax(task))?;
                let interval = t.multiplicity_interval().map(|(lo, hi)| [RationalDoc::from(&lo), RationalDoc::from(&hi)]);
                Payload::Hk(HkDoc {
                    ideal: polys(&t.ideal),
                    dim: t.dim,
                    rows: t
                        .rows
                        .iter()
                        .map(|r| HkRowDoc { e: r.e, q: r.q, length: r.length, normalized: (&r.normalized).into() })
                        .collect(),
                    trend: t.trend().code(),
                    monotone: t.is_monotone(),
                    last_delta: t.last_delta().as_ref().map(RationalDoc::from),
                    multiplicity_interval: interval,
                })
            }
            TaskKind::Hs => {
                let i = env.ideal(&a[0])?;
                let t = hs_table(&i, opt(OptKey::N).unwrap_or(4) as u32)?;
                Payload::Hs(HsDoc {
                    ideal: polys(&t.ideal),
                    dim: t.dim,
                    rows: t
                        .rows
                        .iter()
                        .map(|r| HsRowDoc { n: r.n, length: r.length, normalized: (&r.normalized).into() })
                        .collect(),
                    monotone: t.is_monotone(),
                })
            }
            TaskKind::HkCompare => {
                let (s, b) = (env.ideal(&a[0])?, env.ideal(&a[1])?);
                let c = hk_compare(&s, &b, opt(OptKey::Emin).unwrap_or(1) as u32, self.hk_emax(task))?;
                Payload::HkCompare(HkCompareDoc {
                    smaller: polys(&c.smaller),
                    bigger: polys(&c.bigger),
                    rows: c
                        .rows
                        .iter()
                        .map(|r| CompareRowDoc { e: r.e, q: r.q, smaller: r.smaller, bigger: r.bigger, equal: r.equal() })
                        .collect(),
                    all_equal: c.all_equal(),
                })
            }
            TaskKind::LcZero => {
                let eta = self.fraction(task, env, ring)?;
                let smax = opt(OptKey::Smax).or(self.cfg.smax).unwrap_or(3);
                let v = lc_zero_test(&eta, smax)?;
                let (s, bound) = match v.status {
                    LcStatus::Zero { s } => (Some(s), None),
                    LcStatus::NonzeroProved => (None, None),
                    LcStatus::NonzeroUpTo { bound } => (None, Some(bound)),
                };
                Payload::LcZero(LcZeroDoc { fraction: fraction_doc(&eta), status: v.status.code(), s, bound, method: v.method.code() })
            }
            TaskKind::LcFrobenius => {
                let eta = self.fraction(task, env, ring)?;
                let e = opt(OptKey::E).unwrap_or(1) as u32;
                let img = lc_frobenius(&eta, e)?;
                Payload::LcFrobenius(LcFrobeniusDoc { e, source: fraction_doc(&eta), image: fraction_doc(&img) })
            }
            TaskKind::ZeroStar => {
                let eta = self.fraction(task, env, ring)?;
                let v = zero_star_test(&eta, &self.closure_config(task, env)?)?;
                Payload::ZeroStar(ZeroStarDoc { fraction: fraction_doc(&eta), verdict: VerdictDoc::from(&v) })
            }
            TaskKind::AInvariant => Payload::AInvariant(a_invariant(ring)?),
            TaskKind::Fujita => {
                let xs = degree_one_parameters(ring, &env.gens(&a[0])?)?;
                let len = xs.len() as u64;
                let n = opt(OptKey::N).unwrap_or(len + 1);
                let t = opt(OptKey::T).unwrap_or(n.div_ceil(len.max(1)));
                let r = fujita_probe(&xs, n, t, &self.closure_config(task, env)?)?;
                Payload::Fujita(FujitaDoc {
                    degree: r.degree,
                    t: r.t,
                    multiplier_degree: n as i64 - len as i64,
                    classes: r
                        .classes
                        .iter()
                        .map(|c| FujitaClassDoc {
                            class: lc_fraction(&xs, &c.numerator, t).map(|f| f.to_string()).unwrap_or_default(),
                            multiplier: c.multiplier.as_ref().map(|m| m.to_string()),
                            zero_star: c.zero_star.as_ref().map(VerdictDoc::from),
                        })
                        .collect(),
                    all_have_multiple: r.all_have_multiple(),
                    consistent: r.consistent(),
                })
            }
            TaskKind::Kodaira => {
                let r = kodaira_tc_check(ring, &env.gens(&a[0])?, &self.closure_config(task, env)?, BATCH)?;
                Payload::Kodaira(KodairaDoc {
                    a_invariant: r.a_invariant,
                    floor: r.floor,
                    left: polys(&r.left),
                    right: polys(&r.right),
                    slices: r
                        .slices
                        .iter()
                        .map(|s| KodairaSliceDoc {
                            degree: s.degree,
                            right_codim: s.right_codim,
                            joint_codim: s.joint_codim,
                            contained: s.contained(),
                        })
                        .collect(),
                    holds: r.holds(),
                    heuristic: r.heuristic,
                })
            }
        })
    }

    fn e_range(&self, task: &TaskDecl) -> (u32, u32) {
        let hi = task.option(OptKey::To).map(|v| v as u32).or(self.cfg.emax).unwrap_or(ClosureConfig::default().e_max);
        (task.option(OptKey::From).unwrap_or(1) as u32, hi)
    }

    fn hk_emax(&self, task: &TaskDecl) -> u32 {
        task.option(OptKey::Emax).map(|v| v as u32).or(self.cfg.emax).unwrap_or(3)
    }

    fn fraction(&self, task: &TaskDecl, env: &Env<'_>, ring: &RingPresentation) -> TaskResultT<CechFraction> {
        let xs = degree_one_parameters(ring, &env.gens(&task.args[0])?)?;
        Ok(lc_fraction(&xs, &env.element(&task.args[1])?, task.option(OptKey::T).unwrap_or(1))?)
    }

    fn env_at(&self, p: u64) -> Env<'a> {
        let mut rings = HashMap::new();
        for d in &self.script.decls {
            if let crate::script::Decl::Ring(r) = d {
                if r.characteristic == Characteristic::Integers {
                    rings.insert(r.name.clone(), build_ring(r, p, self.cfg.order));
                }
            }
        }
        Env { script: self.script, rings }
    }

    fn run_models(&self, task: &TaskDecl) -> TaskResultT<Payload> {
        let ring = self.script.ring(&task.ring).ok_or_else(|| TaskError::Config(format!("unknown ring `{}`", task.ring)))?;
        let primes: Vec<u64> = match task.list_option(OptKey::Primes) {
            Some(p) => p.to_vec(),
            None => self.cfg.primes.clone().unwrap_or_default(),
        };
        let family = reduce_model_family(&integer_presentation(ring), &primes)?;
        let retained: Vec<(u64, Vec<&'static str>)> =
            family.retained().map(|(p, _, flags)| (p, flags.iter().map(|f| f.code()).collect())).collect();
        let fibers: Vec<FiberDoc> = retained
            .into_par_iter()
            .map(|(p, flags)| {
                let env = self.env_at(p);
                match self.exec(task, &env) {
                    Ok(payload) => FiberDoc {
                        p,
                        flags,
                        outcome: if payload.is_undetermined() { Outcome::Undetermined } else { Outcome::Ok },
                        summary: summary(&payload),
                        result: Some(Box::new(payload)),
                        error: None,
                    },
                    Err(e) => FiberDoc {
                        p,
                        flags,
                        outcome: Outcome::Error,
                        summary: format!("error: {}", e.code()),
                        result: None,
                        error: Some(e.doc()),
                    },
                }
            })
            .collect();
        let skipped = family
            .fibers
            .iter()
            .filter_map(|f| match f {
                Fiber::Skipped { p, reason } => Some(SkipDoc {
                    p: *p,
                    reason: reason.code(),
                    relation: match reason {
                        SkipReason::RelationVanishes { relation } => Some(*relation),
                        _ => None,
                    },
                }),
                Fiber::Retained { .. } => None,
            })
            .collect();
        let mut groups: BTreeMap<&str, Vec<u64>> = BTreeMap::new();
        for f in &fibers {
            groups.entry(&f.summary).or_default().push(f.p);
        }
        let (agreement, consensus, disagreements) = match groups.len() {
            0 => ("no fibers", None, Vec::new()),
            1 => ("all fibers agree", groups.keys().next().map(|s| s.to_string()), Vec::new()),
            _ => (
                "fibers disagree",
                None,
                groups.into_iter().map(|(s, primes)| DisagreementDoc { summary: s.to_string(), primes }).collect(),
            ),
        };
        Ok(Payload::Models(ModelsDoc {
            inner: task.kind.name(),
            primes,
            generic_smooth: family.generic_smooth,
            fibers,
            skipped,
            agreement,
            consensus,
            disagreements,
        }))
    }
}

fn require_polynomial_ring(ring: &RingPresentation, kind: TaskKind) -> TaskResultT<()> {
    if ring.is_polynomial_ring() {
        Ok(())
    } else {
        Err(tightclosure_core::Error::Precondition(format!("{kind} needs a polynomial ring (no relations)")).into())
    }
}

fn entries(es: &[ColonEntry]) -> Vec<ColonEntryDoc> {
    es.iter().map(|e| ColonEntryDoc { generator: e.generator.to_string(), verdict: VerdictDoc::from(&e.verdict) }).collect()
}

fn probe_doc(r: &ProbeReport, parameter_ideals: bool) -> ProbeDoc {
    ProbeDoc {
        parameter_ideals,
        bound: r.bound,
        headline: r.headline(),
        entries: r
            .entries
            .iter()
            .map(|e| ProbeEntryDoc { ideal: polys(&e.ideal), closed: e.closed, extras: entries(&e.extras), fixed_point: e.fixed_point })
            .collect(),
    }
}

fn fraction_doc(f: &CechFraction) -> FractionDoc {
    FractionDoc { fraction: f.to_string(), numerator: f.numerator().to_string(), t: f.t(), degree: f.degree() }
}

fn verdict_class(v: &VerdictDoc) -> &'static str {
    match v.status {
        s if s == Status::InProved.code() || s == Status::LikelyIn.code() => "IN",
        s if s == Status::OutEvidence.code() => "OUT_EVIDENCE",
        _ => "UNDETERMINED",
    }
}

/// Short per-fiber key used to decide agreement across primes.
pub fn summary(p: &Payload) -> String {
    match p {
        Payload::Hull(h) => format!("({})", h.generators.iter().map(|g| g.generator.as_str()).collect::<Vec<_>>().join(", ")),
        Payload::Verdict(v) => verdict_class(v).into(),
        Payload::ZeroStar(z) => verdict_class(&z.verdict).into(),
        Payload::PlusWitness(w) => format!("witness {}; {}", if w.holds { "holds" } else { "fails" }, verdict_class(&w.verdict)),
        Payload::Certificate(c) => format!("all rows {}", if c.all_true { "true" } else { "not true" }),
        Payload::Hk(h) => format!("lengths {:?}", h.rows.iter().map(|r| r.length).collect::<Vec<_>>()),
        Payload::Hs(h) => format!("lengths {:?}", h.rows.iter().map(|r| r.length).collect::<Vec<_>>()),
        Payload::HkCompare(c) => format!("all equal: {}", c.all_equal),
        Payload::Probe(pr) => pr.headline.into(),
        Payload::LcZero(l) => l.status.into(),
        Payload::AInvariant(a) => format!("a = {a}"),
        Payload::Jacobian(c) => format!("{} candidates", c.len()),
        other => serde_json::to_string(other).unwrap_or_default(),
    }
}

/// 1 if any task failed, else 2 if any verdict is UNDETERMINED, else 0.
pub fn exit_code(tasks: &[TaskResult]) -> i32 {
    if tasks.iter().any(|t| t.outcome == Outcome::Error) {
        1
    } else if tasks.iter().any(|t| t.outcome == Outcome::Undetermined) {
        2
    } else {
        0
    }
}
