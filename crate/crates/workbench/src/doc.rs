//! The result document: one object per run, one entry per task.
//!
//! Field order is fixed by the struct definitions, so serialization is
//! byte-stable for a fixed input. Timing is only emitted on request.

use serde::Serialize;

use tightclosure_core::closure::{CertificateTable, ClosureVerdict, HullResult, Note, Status};
use tightclosure_core::hk::Rational;
use tightclosure_core::Polynomial;

use crate::num;

pub const SCHEMA_ID: &str = "tcw-result-document/1";

#[derive(Clone, Debug, Serialize)]
pub struct ResultDocument {
    pub schema: &'static str,
    pub tool: Tool,
    pub config: ConfigEcho,
    pub tasks: Vec<TaskResult>,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for Tool {
    fn default() -> Self {
        Tool { name: "tcw", version: env!("CARGO_PKG_VERSION") }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConfigEcho {
    pub order: &'static str,
    pub emax: Option<u32>,
    pub kpow: Option<u32>,
    pub bound: Option<u64>,
    pub smax: Option<u64>,
    pub primes: Option<Vec<u64>>,
    pub assert_test_element: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Ok,
    Undetermined,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskResult {
    pub index: usize,
    pub line: usize,
    pub echo: String,
    pub kind: &'static str,
    pub outcome: Outcome,
    pub result: Option<Payload>,
    pub error: Option<ErrorDoc>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorDoc {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalDoc {
    pub exact: String,
    pub decimal: String,
}

impl From<&Rational> for RationalDoc {
    fn from(r: &Rational) -> Self {
        RationalDoc { exact: num::exact(r), decimal: num::decimal(r, 6) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainDoc {
    pub e: u32,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefutationDoc {
    pub candidate: String,
    pub power: u64,
    pub failing_e: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictDoc {
    pub element: String,
    pub status: &'static str,
    pub route: &'static str,
    pub certificate: Option<String>,
    pub e_range: Option<[u32; 2]>,
    pub chain: Vec<ChainDoc>,
    pub stabilized_at: Option<u32>,
    pub refutations: Vec<RefutationDoc>,
    pub notes: Vec<String>,
}

pub fn note_text(n: &Note) -> String {
    match n {
        Note::DegreeTruncated(d) => format!("{}={d}", n.code()),
        _ => n.code().to_string(),
    }
}

impl From<&ClosureVerdict> for VerdictDoc {
    fn from(v: &ClosureVerdict) -> Self {
        VerdictDoc {
            element: v.element.to_string(),
            status: v.status.code(),
            route: v.route.code(),
            certificate: v.certificate.as_ref().map(|c| c.to_string()),
            e_range: v.e_range.map(|(a, b)| [a, b]),
            chain: v.chain.iter().map(|c| ChainDoc { e: c.e, dims: c.dims.clone() }).collect(),
            stabilized_at: v.stabilized_at,
            refutations: v
                .refutations
                .iter()
                .map(|r| RefutationDoc { candidate: r.candidate.to_string(), power: r.power, failing_e: r.failing_e })
                .collect(),
            notes: v.notes.iter().map(note_text).collect(),
        }
    }
}

impl VerdictDoc {
    pub fn is_undetermined(&self) -> bool {
        self.status == Status::Undetermined.code()
    }
}

pub fn polys(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HullEntry {
    pub generator: String,
    pub input: bool,
    pub verdict: Option<VerdictDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HullDoc {
    pub input: Vec<String>,
    pub bound: u64,
    pub generators: Vec<HullEntry>,
    pub sweeps: u32,
    pub fixed_point: bool,
}

impl From<&HullResult> for HullDoc {
    fn from(h: &HullResult) -> Self {
        HullDoc {
            input: polys(&h.input),
            bound: h.degree_bound,
            generators: h
                .generators
                .iter()
                .map(|g| HullEntry {
                    generator: g.generator.to_string(),
                    input: g.verdict.is_none(),
                    verdict: g.verdict.as_ref().map(VerdictDoc::from),
                })
                .collect(),
            sweeps: h.sweeps,
            fixed_point: h.fixed_point,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertRow {
    pub e: u32,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateDoc {
    pub ideal: Vec<String>,
    pub element: String,
    pub certificate: String,
    pub rows: Vec<CertRow>,
    pub all_true: bool,
}

impl From<&CertificateTable> for CertificateDoc {
    fn from(t: &CertificateTable) -> Self {
        CertificateDoc {
            ideal: polys(&t.ideal),
            element: t.element.to_string(),
            certificate: t.certificate.to_string(),
            rows: t.rows.iter().map(|&(e, holds)| CertRow { e, holds }).collect(),
            all_true: t.all_true(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PersistenceDoc {
    pub quotient_by: Vec<String>,
    pub source: CertificateDoc,
    pub target: CertificateDoc,
    /// No row went from true to false.
    pub preserved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlusWitnessDoc {
    pub holds: bool,
    pub verdict: VerdictDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketDoc {
    pub e: u32,
    pub q: u64,
    pub generators: Vec<String>,
    pub groebner_basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParametersDoc {
    pub elements: Vec<String>,
    pub dimension: usize,
    pub parameter_system: bool,
    pub full: bool,
    pub regular_sequence: Vec<bool>,
    pub cohen_macaulay: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColonEntryDoc {
    pub generator: String,
    pub verdict: VerdictDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColonCaptureDoc {
    pub index: usize,
    pub colon: Vec<String>,
    pub outside: Vec<ColonEntryDoc>,
    pub captured: bool,
    pub worst: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialColonDoc {
    pub t: u32,
    pub colon: Vec<String>,
    pub target: Vec<String>,
    pub entries: Vec<ColonEntryDoc>,
    pub worst: Option<&'static str>,
    pub heuristic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralClosureDoc {
    pub generators: Vec<String>,
    pub facets: Vec<String>,
    pub ambient: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrianconSkodaDoc {
    pub mu: usize,
    pub closure: Vec<String>,
    pub violators: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatherDoc {
    pub power: u32,
    pub jacobian: Vec<String>,
    pub holds: bool,
    pub trace_steps: u64,
    pub good_prime: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeEntryDoc {
    pub ideal: Vec<String>,
    pub closed: bool,
    pub extras: Vec<ColonEntryDoc>,
    pub fixed_point: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeDoc {
    pub parameter_ideals: bool,
    pub bound: u64,
    pub headline: &'static str,
    pub entries: Vec<ProbeEntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HkRowDoc {
    pub e: u32,
    pub q: u64,
    pub length: u64,
    pub normalized: RationalDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HkDoc {
    pub ideal: Vec<String>,
    pub dim: usize,
    pub rows: Vec<HkRowDoc>,
    pub trend: &'static str,
    pub monotone: bool,
    pub last_delta: Option<RationalDoc>,
    pub multiplicity_interval: Option<[RationalDoc; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HsRowDoc {
    pub n: u32,
    pub length: u64,
    pub normalized: RationalDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HsDoc {
    pub ideal: Vec<String>,
    pub dim: usize,
    pub rows: Vec<HsRowDoc>,
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareRowDoc {
    pub e: u32,
    pub q: u64,
    pub smaller: u64,
    pub bigger: u64,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HkCompareDoc {
    pub smaller: Vec<String>,
    pub bigger: Vec<String>,
    pub rows: Vec<CompareRowDoc>,
    pub all_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FractionDoc {
    pub fraction: String,
    pub numerator: String,
    pub t: u64,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcZeroDoc {
    pub fraction: FractionDoc,
    pub status: &'static str,
    pub s: Option<u64>,
    pub bound: Option<u64>,
    pub method: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcFrobeniusDoc {
    pub e: u32,
    pub source: FractionDoc,
    pub image: FractionDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroStarDoc {
    pub fraction: FractionDoc,
    pub verdict: VerdictDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FujitaClassDoc {
    pub class: String,
    pub multiplier: Option<String>,
    pub zero_star: Option<VerdictDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FujitaDoc {
    pub degree: i64,
    pub t: u64,
    pub multiplier_degree: i64,
    pub classes: Vec<FujitaClassDoc>,
    pub all_have_multiple: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KodairaSliceDoc {
    pub degree: u64,
    pub right_codim: usize,
    pub joint_codim: usize,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KodairaDoc {
    pub a_invariant: i64,
    pub floor: u64,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub slices: Vec<KodairaSliceDoc>,
    pub holds: bool,
    pub heuristic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberDoc {
    pub p: u64,
    pub flags: Vec<&'static str>,
    pub outcome: Outcome,
    pub summary: String,
    pub result: Option<Box<Payload>>,
    pub error: Option<ErrorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkipDoc {
    pub p: u64,
    pub reason: &'static str,
    pub relation: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisagreementDoc {
    pub summary: String,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelsDoc {
    pub inner: &'static str,
    pub primes: Vec<u64>,
    pub generic_smooth: bool,
    pub fibers: Vec<FiberDoc>,
    pub skipped: Vec<SkipDoc>,
    /// "all fibers agree", "fibers disagree" or "no fibers".
    pub agreement: &'static str,
    pub consensus: Option<String>,
    pub disagreements: Vec<DisagreementDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "data", rename_all = "kebab-case")]
pub enum Payload {
    Hull(HullDoc),
    Verdict(VerdictDoc),
    Certificate(CertificateDoc),
    Persistence(PersistenceDoc),
    PlusWitness(PlusWitnessDoc),
    Bracket(BracketDoc),
    Jacobian(Vec<String>),
    Parameters(ParametersDoc),
    ColonCapture(Vec<ColonCaptureDoc>),
    MonomialColon(MonomialColonDoc),
    IntegralClosure(IntegralClosureDoc),
    BrianconSkoda(BrianconSkodaDoc),
    Mather(MatherDoc),
    Probe(ProbeDoc),
    Hk(HkDoc),
    Hs(HsDoc),
    HkCompare(HkCompareDoc),
    LcZero(LcZeroDoc),
    LcFrobenius(LcFrobeniusDoc),
    ZeroStar(ZeroStarDoc),
    AInvariant(i64),
    Fujita(FujitaDoc),
    Kodaira(KodairaDoc),
    Models(ModelsDoc),
}

impl Payload {
    /// Every closure verdict carried by the payload.
    pub fn verdicts(&self) -> Vec<&VerdictDoc> {
        fn entries(e: &[ColonEntryDoc]) -> impl Iterator<Item = &VerdictDoc> {
            e.iter().map(|c| &c.verdict)
        }
        match self {
            Payload::Hull(h) => h.generators.iter().filter_map(|g| g.verdict.as_ref()).collect(),
            Payload::Verdict(v) => vec![v],
            Payload::PlusWitness(w) => vec![&w.verdict],
            Payload::ColonCapture(rs) => rs.iter().flat_map(|r| entries(&r.outside)).collect(),
            Payload::MonomialColon(m) => entries(&m.entries).collect(),
            Payload::Probe(p) => p.entries.iter().flat_map(|e| entries(&e.extras)).collect(),
            Payload::ZeroStar(z) => vec![&z.verdict],
            Payload::Fujita(f) => f.classes.iter().filter_map(|c| c.zero_star.as_ref()).collect(),
            Payload::Models(m) => m.fibers.iter().filter_map(|f| f.result.as_deref()).flat_map(|p| p.verdicts()).collect(),
            _ => Vec::new(),
        }
    }

    pub fn is_undetermined(&self) -> bool {
        self.verdicts().iter().any(|v| v.is_undetermined())
    }
}
