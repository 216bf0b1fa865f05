//! The full computer-assisted argument for the quadratic reversible map:
//! two self-coverings near the fixed points, a heteroclinic chain of
//! coverings between them, its mirror image under the reversing symmetry,
//! and the symbolic dynamics that follow.

mod data;
mod graph;
mod words;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use data::{
    build_from_json, build_from_raw, build_paper_data, PaperData, PaperDataSnapshot, Q1Candidate, Q1Choice, RawData,
    RawRelation, Reference, PAPER_DATA_JSON,
};
pub use graph::{fix_disk_check, symmetric_closure, CoveringGraph, FixDiskCheck, GraphEdge};
pub use words::{
    count_words, emit_symmetric_orbit_certificate, enumerate_words, BlockAlphabet, ChainStep, SymmetricAutomaton,
    SymmetricOrbitCertificate,
};

use crate::covering::{verify_backcover, verify_cover, CoveringCertificate, Status, VerifyConfig};
use crate::dynamics::QuadraticReversibleMap;
use crate::error::Result;
use crate::hset::{st_symmetric_check, supports_disjoint, sym_image, Disjointness};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Iterates per symbol of the two-symbol shift.
pub const BLOCK_STEPS: usize = 7;

/// A verified relation next to the degree the data file claims for it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationResult {
    pub certificate: CoveringCertificate,
    pub stated_degree: i32,
    pub degree_matches: bool,
}

fn relation_result(certificate: CoveringCertificate, stated_degree: i32) -> RelationResult {
    RelationResult {
        degree_matches: certificate.degree == Some(stated_degree),
        certificate,
        stated_degree,
    }
}

/// Verifies the self-coverings `N₁ ⇒ N₁` and `N₂ ⇒ N₂` under `F`.
pub fn verify_lemma_symcover(data: &PaperData, cfg: &VerifyConfig) -> Result<Vec<RelationResult>> {
    verify_relations(data, &data.raw.relations[..2], cfg)
}

/// Verifies the chain `N₁ ⇒ H₁ ⇒ H₂ ⇒ H₃ ⇒ N₂`, the second link under `F⁴`.
pub fn verify_lemma_covchain(data: &PaperData, cfg: &VerifyConfig) -> Result<Vec<RelationResult>> {
    verify_relations(data, &data.raw.relations[2..], cfg)
}

fn verify_relations(data: &PaperData, rels: &[RawRelation], cfg: &VerifyConfig) -> Result<Vec<RelationResult>> {
    let f = QuadraticReversibleMap::new();
    rels.iter()
        .map(|r| {
            let cert = verify_cover(data.hset(&r.source)?, &f, r.iterates, data.hset(&r.target)?, cfg)?;
            Ok(relation_result(cert, r.stated_degree))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryCheck {
    pub set: String,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointnessCheck {
    pub sets: [String; 2],
    pub verdict: Disjointness,
}

/// A symmetry-derived edge re-verified directly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub derived: CoveringCertificate,
    pub direct: CoveringCertificate,
    pub degrees_agree: bool,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.direct.is_verified() && self.degrees_agree
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub boxes: u64,
    pub reference_boxes: f64,
    /// `boxes / reference_boxes`.
    pub box_ratio: f64,
    pub wall_time_secs: f64,
    pub reference_minutes: f64,
    pub reference_cpu_ghz: f64,
    pub threads: usize,
}

/// Everything a campaign run established, in archivable form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofReport {
    pub schema_version: u32,
    pub tool: String,
    pub config: VerifyConfig,
    pub q1: Q1Choice,
    pub symmetry: Vec<SymmetryCheck>,
    pub disjointness: DisjointnessCheck,
    pub fix_disks: Vec<FixDiskCheck>,
    pub relations: Vec<RelationResult>,
    pub cross_checks: Vec<CrossCheck>,
    pub graph: CoveringGraph,
    pub blocks: BlockAlphabet,
    pub symmetric_orbits: Vec<SymmetricOrbitCertificate>,
    pub totals: Totals,
    pub conclusions: Vec<String>,
}

impl ProofReport {
    pub fn relations_verified(&self) -> bool {
        self.relations.iter().all(|r| r.certificate.is_verified())
    }

    /// Relations whose computed degree differs from the stated one.
    pub fn degree_mismatches(&self) -> Vec<&RelationResult> {
        self.relations
            .iter()
            .filter(|r| r.certificate.degree.is_some() && !r.degree_matches)
            .collect()
    }

    /// Every hypothesis of the symbolic-dynamics argument holds.
    pub fn all_verified(&self) -> bool {
        self.relations_verified()
            && self.symmetry.iter().all(|s| s.symmetric)
            && self.disjointness.verdict.is_disjoint()
            && self.fix_disks.iter().all(|f| f.passed)
            && self.cross_checks.iter().all(CrossCheck::passed)
    }

    /// `0` everything verified, `1` some relation refuted at a point, `2`
    /// anything else short of a full proof.
    pub fn exit_code(&self) -> i32 {
        let refuted = self
            .relations
            .iter()
            .map(|r| &r.certificate)
            .chain(self.cross_checks.iter().map(|c| &c.direct))
            .any(|c| c.status == Status::RefutedCell);
        if self.all_verified() {
            0
        } else if refuted {
            1
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Names of the two-symbol alphabet.
pub const SYMBOLS: [&str; 2] = ["N1", "N2"];

/// Runs the whole argument with one verification config.
pub fn prove_paper(cfg: &VerifyConfig) -> Result<ProofReport> {
    let start = Instant::now();
    let data = build_paper_data()?;
    let f = QuadraticReversibleMap::new();
    let s = &data.reversor;
    let (n1, n2) = (data.hset("N1")?, data.hset("N2")?);

    let symmetry = [n1, n2]
        .iter()
        .map(|n| SymmetryCheck {
            set: n.name().to_owned(),
            symmetric: st_symmetric_check(s, n),
        })
        .collect();
    let disjointness = DisjointnessCheck {
        sets: [n1.name().to_owned(), n2.name().to_owned()],
        verdict: supports_disjoint(n1, n2),
    };
    let fix_disks: Vec<FixDiskCheck> = [n1, n2].iter().map(|n| fix_disk_check(s, n)).collect();

    let mut relations = verify_lemma_symcover(&data, cfg)?;
    relations.extend(verify_lemma_covchain(&data, cfg)?);

    let mut graph = CoveringGraph::new();
    for n in data.hsets.values() {
        graph.add_node(n);
    }
    for r in &relations {
        graph.add_edge(r.certificate.clone());
    }
    for fd in &fix_disks {
        if fd.passed {
            graph.mark_symmetric_disk(&fd.set);
        }
    }
    let graph = symmetric_closure(&graph, s)?;

    // Re-verify the mirrored H₂ → H₃ link directly with the closed-form inverse.
    let mut cross_checks = Vec::new();
    let (h2, h3) = (data.hset("H2")?, data.hset("H3")?);
    let (sh3, sh2) = (sym_image(s, h3)?, sym_image(s, h2)?);
    if let Some(derived) = graph.edge(sh3.name(), sh2.name()) {
        let direct = verify_backcover(&sh3, &f, 1, &sh2, cfg)?;
        cross_checks.push(CrossCheck {
            degrees_agree: direct.degree.map(i32::abs) == derived.certificate.degree.map(i32::abs),
            derived: derived.certificate.clone(),
            direct,
        });
    }

    let blocks = BlockAlphabet::from_graph(&graph, &SYMBOLS, BLOCK_STEPS);
    let mut symmetric_orbits = Vec::new();
    for k in 1..=3 {
        let mut word = vec!["N1"; k + 1];
        word.extend(["H1", "H2", "H3", "N2"]);
        if let Ok(c) = emit_symmetric_orbit_certificate(&graph, &word) {
            symmetric_orbits.push(c);
        }
    }

    let boxes: u64 = relations
        .iter()
        .map(|r| r.certificate.boxes)
        .chain(cross_checks.iter().map(|c| c.direct.boxes))
        .sum();
    let reference = &data.raw.reference;
    let totals = Totals {
        boxes,
        reference_boxes: reference.boxes,
        box_ratio: boxes as f64 / reference.boxes,
        wall_time_secs: start.elapsed().as_secs_f64(),
        reference_minutes: reference.minutes,
        reference_cpu_ghz: reference.cpu_ghz,
        threads: if cfg.threads == 0 { rayon::current_num_threads() } else { cfg.threads },
    };

    let mut report = ProofReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool: format!("covrel {}", env!("CARGO_PKG_VERSION")),
        config: cfg.clone(),
        q1: data.q1_choice.clone(),
        symmetry,
        disjointness,
        fix_disks,
        relations,
        cross_checks,
        graph,
        blocks,
        symmetric_orbits,
        totals,
        conclusions: Vec::new(),
    };
    report.conclusions = conclusions(&report);
    Ok(report)
}

fn conclusions(r: &ProofReport) -> Vec<String> {
    let mut out = Vec::new();
    if !r.all_verified() {
        out.push("hypotheses not fully verified; no dynamical conclusion is drawn".into());
        return out;
    }
    if r.blocks.is_full_shift() {
        out.push(format!(
            "F^{} is semiconjugate to the full shift on {{{}}}: every bi-infinite sequence of symbols is realised by an orbit visiting the sets in that order, periodic sequences by periodic points",
            r.blocks.steps,
            r.blocks.symbols.join(", ")
        ));
    }
    if !r.symmetric_orbits.is_empty() {
        out.push(
            "F has infinitely many symmetric periodic points, with arbitrarily large principal periods (chains N1^k H1 H2 H3 N2, k >= 1)".into(),
        );
    }
    for m in r.degree_mismatches() {
        let c = &m.certificate;
        out.push(format!(
            "{} -> {} under {}^{} has degree {} although {} was stated; the conclusions depend only on |w| = 1",
            c.source,
            c.target,
            c.map,
            c.iterates,
            c.degree.unwrap_or(0),
            m.stated_degree
        ));
    }
    out
}
