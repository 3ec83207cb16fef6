//! The decision pipeline: validate, reduce, test the retract graph, build
//! polygons and search for a compressing disk.

use serde::{Deserialize, Serialize};

use crate::complex::{validate, Census, SurfaceComplex, ValidationReport};
use crate::polygon::enumerate_polygons;
use crate::retract::{CycleWitness, RetractGraph};
use crate::solver::{solve, Certificate, SearchStats, DEFAULT_NODE_BUDGET};
use crate::standard::{complexity, reduce_to_standard, standard_properties, Complexity, MoveRecord, PropertyCheck};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Incompressible,
    Compressible { witness: Witness },
    Indeterminate { reason: String },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Incompressible => "incompressible",
            Verdict::Compressible { .. } => "compressible",
            Verdict::Indeterminate { .. } => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Cycle of the retract graph inside one ball.
    Cycle(CycleWitness),
    /// Disk assembled from polygons.
    Disk(Box<Certificate>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub validation: ValidationReport,
    pub census: Census,
    pub complexity_before: Complexity,
    pub complexity_after: Complexity,
    pub moves: Vec<MoveRecord>,
    pub properties: Vec<PropertyCheck>,
    pub bigons: usize,
    pub polygons: usize,
    pub bigon_bound: usize,
    pub search: Option<SearchStats>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    pub node_budget: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { node_budget: DEFAULT_NODE_BUDGET }
    }
}

pub fn decide(s: &SurfaceComplex) -> DecisionReport {
    decide_with(s, DecideOptions::default())
}

pub fn decide_with(s: &SurfaceComplex, opts: DecideOptions) -> DecisionReport {
    let validation = validate(s);
    let census = s.census();
    let before = complexity(s);
    let mut report = DecisionReport {
        verdict: Verdict::Indeterminate { reason: String::new() },
        validation: validation.clone(),
        census: census.clone(),
        complexity_before: before.clone(),
        complexity_after: before,
        moves: Vec::new(),
        properties: Vec::new(),
        bigons: 0,
        polygons: 0,
        bigon_bound: census.bigon_bound(),
        search: None,
    };
    let stop = |mut r: DecisionReport, reason: String| {
        r.verdict = Verdict::Indeterminate { reason };
        r
    };
    if let Some(v) = validation.errors().next() {
        return stop(report, format!("invalid complex: {v:?}"));
    }
    if s.pieces.is_empty() {
        return stop(report, "empty surface".into());
    }
    if census.components != 1 {
        return stop(report, format!("surface has {} components", census.components));
    }
    if !census.orientable {
        return stop(report, "surface is non-orientable".into());
    }
    let red = reduce_to_standard(s);
    let t = red.surface;
    report.moves = red.log;
    report.complexity_after = complexity(&t);
    report.properties = standard_properties(&t);
    if let Some(w) = RetractGraph::build(&t).trivial_cycle() {
        report.verdict = Verdict::Compressible { witness: Witness::Cycle(w) };
        return report;
    }
    if report.complexity_after.movable > 0 {
        return stop(report, "movable saddles remain after reduction".into());
    }
    if let Some(p) = report.properties.iter().find(|p| !p.holds) {
        let reason = format!("property {} fails: {}", p.property, p.name);
        return stop(report, reason);
    }
    let census_p = match enumerate_polygons(&t) {
        Ok(c) => c,
        Err(e) => return stop(report, format!("complement regions: {e}")),
    };
    if census_p.truncated {
        return stop(report, "polygon enumeration truncated".into());
    }
    let bound = t.census().bigon_bound();
    report.bigon_bound = bound;
    report.bigons = census_p.bigons().len();
    report.polygons = census_p.polygons.len();
    if report.bigons == 0 {
        report.verdict = Verdict::Incompressible;
        return report;
    }
    let (cert, complete, stats) = solve(&census_p, bound, opts.node_budget);
    report.search = Some(stats);
    report.verdict = match (cert, complete) {
        (Some(c), _) => Verdict::Compressible { witness: Witness::Disk(Box::new(c)) },
        (None, true) => Verdict::Incompressible,
        (None, false) => Verdict::Indeterminate { reason: "search budget exhausted".into() },
    };
    report
}
