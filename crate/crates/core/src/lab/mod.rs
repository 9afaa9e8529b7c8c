//! Executable structural checks on a concrete Cayley graph.
//!
//! Each check produces a [`CheckRecord`] made of one or more [`Part`]s. A part
//! is either proved by exhausting its scope, supported by seeded sampling, a
//! failure with a counterexample, or skipped with a reason. Checks outside
//! the class of graphs a property is claimed for are run as exploratory
//! (their verdict never gates) or skipped.
//!
//! The report body holds no wall times, so it is byte-identical across runs
//! and worker counts for a fixed seed; timings live in a separate section.

mod census;
mod connect;
mod faults;
mod sample;

use std::fmt::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::genset::{GenClass, PeelChoice};
use crate::graph::Vertex;
use crate::subsets::with_workers;

pub use census::{cn_profile, cn_triple_violation, edge_cn_exclusion_violation, CnProfile};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    CnBound,
    Connectivity,
    CrossEdges,
    OutNeighborDisjoint,
    OutNeighborEscape,
    EdgeCnExclusion,
    CnTriple,
    IsolatedVertex,
    LargeComponent,
    NeighborLowerBound,
    ComponentBound,
    FourCycleLabels,
    BlockAttachment,
    GoodNeighborConnectivity,
    CyclicConnectivity,
}

impl CheckId {
    pub const ALL: [CheckId; 15] = [
        CheckId::CnBound,
        CheckId::Connectivity,
        CheckId::CrossEdges,
        CheckId::OutNeighborDisjoint,
        CheckId::OutNeighborEscape,
        CheckId::EdgeCnExclusion,
        CheckId::CnTriple,
        CheckId::IsolatedVertex,
        CheckId::LargeComponent,
        CheckId::NeighborLowerBound,
        CheckId::ComponentBound,
        CheckId::FourCycleLabels,
        CheckId::BlockAttachment,
        CheckId::GoodNeighborConnectivity,
        CheckId::CyclicConnectivity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::CnBound => "cn-bound",
            CheckId::Connectivity => "connectivity",
            CheckId::CrossEdges => "cross-edges",
            CheckId::OutNeighborDisjoint => "out-neighbor-disjoint",
            CheckId::OutNeighborEscape => "out-neighbor-escape",
            CheckId::EdgeCnExclusion => "edge-cn-exclusion",
            CheckId::CnTriple => "cn-triple",
            CheckId::IsolatedVertex => "isolated-vertex",
            CheckId::LargeComponent => "large-component",
            CheckId::NeighborLowerBound => "neighbor-lower-bound",
            CheckId::ComponentBound => "component-bound",
            CheckId::FourCycleLabels => "four-cycle-labels",
            CheckId::BlockAttachment => "block-attachment",
            CheckId::GoodNeighborConnectivity => "good-neighbor-connectivity",
            CheckId::CyclicConnectivity => "cyclic-connectivity",
        }
    }

    /// `"all"` or a comma-separated list of ids; the result follows the
    /// canonical order and has no repeats.
    pub fn parse_list(s: &str) -> Result<Vec<CheckId>> {
        if s.trim() == "all" {
            return Ok(CheckId::ALL.to_vec());
        }
        let mut ids = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<CheckId>>>()?;
        if ids.is_empty() {
            return Err(Error::Parse {
                token: s.to_string(),
                reason: "no checks named".into(),
            });
        }
        ids.sort();
        ids.dedup();
        Ok(ids)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse {
                token: s.to_string(),
                reason: "unknown check id".into(),
            })
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PROVED-EXHAUSTIVE")]
    ProvedExhaustive,
    #[serde(rename = "SUPPORTED-SAMPLED")]
    SupportedSampled,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ProvedExhaustive => "PROVED-EXHAUSTIVE",
            Verdict::SupportedSampled => "SUPPORTED-SAMPLED",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        }
    }

    /// Fail beats sampled beats proved; skipped parts do not count.
    fn combine(parts: &[Part]) -> Verdict {
        let has = |v| parts.iter().any(|p| p.verdict == v);
        if has(Verdict::Fail) {
            Verdict::Fail
        } else if has(Verdict::SupportedSampled) {
            Verdict::SupportedSampled
        } else if has(Verdict::ProvedExhaustive) {
            Verdict::ProvedExhaustive
        } else {
            Verdict::Skipped
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A vertex set in permutation form with a short description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    pub vertices: Vec<String>,
}

impl Witness {
    pub fn new(g: &CayleyGraph, description: impl Into<String>, vertices: &[Vertex]) -> Self {
        Self {
            description: description.into(),
            vertices: vertices.iter().map(|&v| g.label(v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Part {
    pub name: String,
    pub verdict: Verdict,
    pub scope: String,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub metrics: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Witness>,
}

impl Part {
    fn with(name: &str, verdict: Verdict, scope: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            verdict,
            scope: scope.into(),
            metrics: Map::new(),
            witness: None,
            counterexample: None,
        }
    }

    pub(crate) fn exhaustive(name: &str, scope: impl Into<String>) -> Self {
        Self::with(name, Verdict::ProvedExhaustive, scope)
    }

    pub(crate) fn sampled(name: &str, scope: impl Into<String>) -> Self {
        Self::with(name, Verdict::SupportedSampled, scope)
    }

    pub(crate) fn skipped(name: &str, reason: impl Into<String>) -> Self {
        Self::with(name, Verdict::Skipped, reason)
    }

    pub(crate) fn metric(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metrics.insert(key.to_string(), value.into());
        self
    }

    pub(crate) fn witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    /// Turns the part into a failure carrying `cx`.
    pub(crate) fn fail(mut self, cx: Witness) -> Self {
        self.verdict = Verdict::Fail;
        self.counterexample = Some(cx);
        self
    }

    pub(crate) fn fail_if(self, cx: Option<Witness>) -> Self {
        match cx {
            Some(cx) => self.fail(cx),
            None => self,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: CheckId,
    pub verdict: Verdict,
    /// Whether a failure counts against the run.
    pub gating: bool,
    pub scope: String,
    pub parts: Vec<Part>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckRecord {
    fn skipped(id: CheckId, reason: impl Into<String>) -> Self {
        let reason = reason.into();
        Self {
            id,
            verdict: Verdict::Skipped,
            gating: false,
            scope: reason.clone(),
            parts: vec![Part::skipped("applicability", reason)],
            notes: Vec::new(),
        }
    }

    pub fn is_gating_failure(&self) -> bool {
        self.gating && self.verdict == Verdict::Fail
    }

    pub fn part(&self, name: &str) -> Option<&Part> {
        self.parts.iter().find(|p| p.name == name)
    }
}

/// What a check function hands back.
pub(crate) enum Outcome {
    Skipped(String),
    Ran {
        parts: Vec<Part>,
        gating: bool,
        notes: Vec<String>,
    },
}

impl Outcome {
    pub(crate) fn gating(parts: Vec<Part>) -> Self {
        Outcome::Ran {
            parts,
            gating: true,
            notes: Vec::new(),
        }
    }

    pub(crate) fn exploratory(parts: Vec<Part>, why: impl Into<String>) -> Self {
        Outcome::Ran {
            parts,
            gating: false,
            notes: vec![format!("exploratory: {}", why.into())],
        }
    }

    pub(crate) fn note(mut self, text: impl Into<String>) -> Self {
        if let Outcome::Ran { notes, .. } = &mut self {
            notes.push(text.into());
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabConfig {
    pub seed: u64,
    pub workers: usize,
    /// Checks not yet started when the budget runs out are skipped.
    pub budget: Duration,
    /// Trials for sampled fault-set checks.
    pub sample_trials: u64,
    /// Trials for the randomized cyclic-cut falsifier.
    pub falsify_trials: u64,
    /// Scan every vertex pair in the flow computation instead of relying on
    /// vertex-transitivity. Needed for corrupted graphs.
    pub all_pairs_connectivity: bool,
}

impl Default for LabConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            workers: 1,
            budget: Duration::from_secs(600),
            sample_trials: 1_000_000,
            falsify_trials: 1_000_000,
            all_pairs_connectivity: false,
        }
    }
}

/// Which family a graph belongs to, as far as the checks are concerned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Family {
    /// Generating graph is a cycle (includes the triangle at `n = 3`).
    Modified,
    /// Unicyclic triangle-free, not a cycle.
    Unicyclic,
    Tree,
    Other,
}

pub(crate) struct Ctx<'a> {
    pub g: &'a CayleyGraph,
    pub cfg: &'a LabConfig,
    pub family: Family,
}

impl Ctx<'_> {
    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// `UG_n` in the strict sense: unicyclic triangle-free, `n >= 4`.
    pub fn is_ug(&self) -> bool {
        match self.family {
            Family::Modified => self.n() >= 4,
            Family::Unicyclic => true,
            _ => false,
        }
    }

    pub fn is_mb(&self, n: std::ops::RangeInclusive<usize>) -> bool {
        self.family == Family::Modified && n.contains(&self.n())
    }
}

pub(crate) fn family_of(g: &CayleyGraph) -> Family {
    let gen = g.generating_graph();
    if gen.is_cycle() {
        Family::Modified
    } else if gen.class() == GenClass::UnicyclicTriangleFree {
        Family::Unicyclic
    } else if gen.class().is_tree() {
        Family::Tree
    } else {
        Family::Other
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDescriptor {
    pub n: usize,
    pub generating_edges: Vec<(u8, u8)>,
    pub class: GenClass,
    pub order: usize,
    pub size: usize,
    pub degree: Option<usize>,
    pub peel: PeelChoice,
}

impl GraphDescriptor {
    pub fn of(g: &CayleyGraph) -> Self {
        Self {
            n: g.n(),
            generating_edges: g.generating_graph().edges().to_vec(),
            class: g.class(),
            order: g.order(),
            size: g.graph().size(),
            degree: g.graph().regular_degree(),
            peel: g.peel().clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub proved: usize,
    pub sampled: usize,
    pub failed: usize,
    pub skipped: usize,
    pub gating_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBody {
    pub tool: String,
    pub spec: String,
    pub graph: GraphDescriptor,
    pub seed: u64,
    pub sample_trials: u64,
    pub falsify_trials: u64,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckTiming {
    pub id: CheckId,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub workers: usize,
    pub total_millis: u64,
    pub checks: Vec<CheckTiming>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub body: ReportBody,
    pub timing: Timing,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.body.summary.gating_failures == 0
    }

    pub fn check(&self, id: CheckId) -> Option<&CheckRecord> {
        self.body.checks.iter().find(|c| c.id == id)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA_VERSION,
            "body": self.body,
            "timing": self.timing,
        })
    }

    /// Loads a report written by [`VerificationReport::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Envelope {
            schema: u32,
            body: ReportBody,
            timing: Timing,
        }
        let e: Envelope = serde_json::from_str(text)
            .map_err(|e| Error::Format(format!("not a verification report: {e}")))?;
        if e.schema != SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "report schema {} is not supported (expected {SCHEMA_VERSION})",
                e.schema
            )));
        }
        Ok(Self {
            body: e.body,
            timing: e.timing,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    /// The body alone, the part that must not depend on workers or timing.
    pub fn body_json(&self) -> String {
        serde_json::to_string(&self.body).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        render_text(&self.body, Some(&self.timing))
    }
}

/// Plain-text table for a report body, with timings when available.
pub fn render_text(body: &ReportBody, timing: Option<&Timing>) -> String {
    let mut out = String::new();
    let gen = &body.graph;
    let edges: Vec<String> = gen
        .generating_edges
        .iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    let _ = writeln!(out, "{}  spec={}  seed={}", body.tool, body.spec, body.seed);
    let _ = writeln!(
        out,
        "graph: n={} class={} order={} size={} edges={}",
        gen.n,
        gen.class,
        gen.order,
        gen.size,
        edges.join(",")
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:<28} {:<18} {:<6} {:>8}  scope",
        "check", "verdict", "gates", "ms"
    );
    for c in &body.checks {
        let ms = timing
            .and_then(|t| t.checks.iter().find(|x| x.id == c.id))
            .map_or(String::from("-"), |x| x.millis.to_string());
        let gates = if c.verdict == Verdict::Skipped {
            "-"
        } else if c.gating {
            "yes"
        } else {
            "no"
        };
        let _ = writeln!(
            out,
            "{:<28} {:<18} {:<6} {:>8}  {}",
            c.id.as_str(),
            c.verdict.as_str(),
            gates,
            ms,
            c.scope
        );
        for p in c.parts.iter().filter(|p| p.counterexample.is_some()) {
            let cx = p.counterexample.as_ref().unwrap();
            let _ = writeln!(
                out,
                "    {}: {} [{}]",
                p.name,
                cx.description,
                cx.vertices.join(" ")
            );
        }
    }
    let s = &body.summary;
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "proved={} sampled={} failed={} skipped={} gating-failures={}",
        s.proved, s.sampled, s.failed, s.skipped, s.gating_failures
    );
    out
}

fn run_check(id: CheckId, ctx: &Ctx<'_>) -> Result<Outcome> {
    match id {
        CheckId::CnBound => census::cn_bound(ctx),
        CheckId::Connectivity => connect::connectivity(ctx),
        CheckId::CrossEdges => census::cross_edges(ctx),
        CheckId::OutNeighborDisjoint => census::out_neighbor_disjoint(ctx),
        CheckId::OutNeighborEscape => census::out_neighbor_escape(ctx),
        CheckId::EdgeCnExclusion => census::edge_cn_exclusion(ctx),
        CheckId::CnTriple => census::cn_triple(ctx),
        CheckId::IsolatedVertex => faults::isolated_vertex(ctx),
        CheckId::LargeComponent => faults::large_component(ctx),
        CheckId::NeighborLowerBound => faults::neighbor_lower_bound(ctx),
        CheckId::ComponentBound => faults::component_bound(ctx),
        CheckId::FourCycleLabels => census::four_cycle_labels(ctx),
        CheckId::BlockAttachment => census::block_attachment(ctx),
        CheckId::GoodNeighborConnectivity => connect::good_neighbor(ctx),
        CheckId::CyclicConnectivity => connect::cyclic(ctx),
    }
}

fn record(id: CheckId, outcome: Outcome) -> CheckRecord {
    match outcome {
        Outcome::Skipped(reason) => CheckRecord::skipped(id, reason),
        Outcome::Ran {
            parts,
            gating,
            notes,
        } => {
            debug_assert!(parts
                .iter()
                .all(|p| p.verdict != Verdict::Fail || p.counterexample.is_some()));
            let scope = parts
                .iter()
                .filter(|p| p.verdict != Verdict::Skipped)
                .map(|p| p.scope.as_str())
                .collect::<Vec<_>>()
                .join("; ");
            CheckRecord {
                id,
                verdict: Verdict::combine(&parts),
                gating,
                scope,
                parts,
                notes,
            }
        }
    }
}

/// Runs `checks` (in canonical order, each once) against `g`. `spec` is the
/// resolved description recorded in the report.
pub fn verify(
    g: &CayleyGraph,
    spec: &str,
    checks: &[CheckId],
    cfg: &LabConfig,
) -> Result<VerificationReport> {
    if cfg.workers == 0 {
        return Err(Error::invalid("workers must be at least 1"));
    }
    let mut ids = checks.to_vec();
    ids.sort();
    ids.dedup();
    let ctx = Ctx {
        g,
        cfg,
        family: family_of(g),
    };
    let start = Instant::now();
    let mut records = Vec::with_capacity(ids.len());
    let mut timings = Vec::with_capacity(ids.len());
    for id in ids {
        let t0 = Instant::now();
        let rec = if start.elapsed() >= cfg.budget {
            CheckRecord::skipped(
                id,
                format!(
                    "wall-clock budget of {} s exhausted before this check",
                    cfg.budget.as_secs_f64()
                ),
            )
        } else {
            record(id, with_workers(cfg.workers, || run_check(id, &ctx))??)
        };
        timings.push(CheckTiming {
            id,
            millis: t0.elapsed().as_millis() as u64,
        });
        records.push(rec);
    }
    let count = |v| records.iter().filter(|c| c.verdict == v).count();
    let summary = Summary {
        proved: count(Verdict::ProvedExhaustive),
        sampled: count(Verdict::SupportedSampled),
        failed: count(Verdict::Fail),
        skipped: count(Verdict::Skipped),
        gating_failures: records.iter().filter(|c| c.is_gating_failure()).count(),
    };
    Ok(VerificationReport {
        body: ReportBody {
            tool: format!("symcay {}", env!("CARGO_PKG_VERSION")),
            spec: spec.to_string(),
            graph: GraphDescriptor::of(g),
            seed: cfg.seed,
            sample_trials: cfg.sample_trials,
            falsify_trials: cfg.falsify_trials,
            checks: records,
            summary,
        },
        timing: Timing {
            workers: cfg.workers,
            total_millis: start.elapsed().as_millis() as u64,
            checks: timings,
        },
    })
}

pub fn verify_all(g: &CayleyGraph, spec: &str, cfg: &LabConfig) -> Result<VerificationReport> {
    verify(g, spec, &CheckId::ALL, cfg)
}
