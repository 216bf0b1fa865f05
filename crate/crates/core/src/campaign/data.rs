//! The constants of the campaign, kept as decimal text in an embedded file.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dynamics::{eval_iterate, iterate_point, max_dist, MapSystem, QuadraticInverse, QuadraticReversibleMap};
use crate::error::{Error, Result};
use crate::hset::{Decimal, HSet, HSetFile, LinearReversor};
use crate::interval::{IBox, Interval};

/// Source text of the embedded data file.
pub const PAPER_DATA_JSON: &str = include_str!("../../data/paper_data.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawData {
    pub schema_version: u32,
    pub map: String,
    pub reversor: Vec<Decimal>,
    pub points: BTreeMap<String, Vec<Decimal>>,
    pub unstable_vectors: BTreeMap<String, Vec<Decimal>>,
    pub q1: RawQ1,
    pub orbit_points: Vec<RawOrbitPoint>,
    pub hsets: Vec<RawHSet>,
    pub relations: Vec<RawRelation>,
    pub reference: Reference,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawQ1 {
    pub base: String,
    /// Each term lists one vector name, or several candidates when the
    /// intended vector has to be selected by the constraints below.
    pub terms: Vec<RawTerm>,
    pub preimage_tolerance: f64,
    pub target: String,
    pub target_iterates: usize,
    pub target_tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTerm {
    pub coefficient: Decimal,
    pub vector: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOrbitPoint {
    pub name: String,
    pub from: String,
    pub iterates: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHSet {
    pub name: String,
    pub center: String,
    pub vectors: Vec<String>,
    pub scales: Vec<Decimal>,
}

/// A covering relation to verify, with the degree claimed for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRelation {
    pub source: String,
    pub target: String,
    pub iterates: usize,
    pub stated_degree: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Reference {
    pub boxes: f64,
    pub minutes: f64,
    pub cpu_ghz: f64,
}

/// One way of reading the ambiguous `Q₁` term, with its residuals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Q1Candidate {
    pub vector: String,
    pub point: Vec<f64>,
    /// `‖g⁻¹(Q₁) − base‖_∞`.
    pub preimage_residual: f64,
    /// `‖gᵏ(Q₁) − target‖_∞`, infinite if the orbit escapes.
    pub target_residual: f64,
    pub admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Q1Choice {
    pub chosen: String,
    pub candidates: Vec<Q1Candidate>,
}

/// Everything the campaign needs, built from [`RawData`].
#[derive(Clone, Debug)]
pub struct PaperData {
    pub raw: RawData,
    pub reversor: LinearReversor,
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
    /// `u_j^i` as parsed and `s_j^i = S(u_j^i)`, keyed by name.
    pub vectors: BTreeMap<String, Vec<f64>>,
    pub q1_choice: Q1Choice,
    /// Float centres `Q₁, Q₂, Q₃`.
    pub q: Vec<Vec<f64>>,
    /// Interval enclosures of the exact values of the same formulas.
    pub q_enclosures: Vec<IBox>,
    pub hsets: BTreeMap<String, HSet>,
}

impl PaperData {
    pub fn hset(&self, name: &str) -> Result<&HSet> {
        self.hsets
            .get(name)
            .ok_or_else(|| Error::Config(format!("unknown h-set {name}")))
    }

    pub fn vector(&self, name: &str) -> Result<&[f64]> {
        self.vectors
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Config(format!("unknown vector {name}")))
    }

    /// Serializable snapshot of the built data.
    pub fn snapshot(&self) -> PaperDataSnapshot {
        PaperDataSnapshot {
            schema_version: self.raw.schema_version,
            p1: self.p1.clone(),
            p2: self.p2.clone(),
            vectors: self.vectors.clone(),
            q1_choice: self.q1_choice.clone(),
            q: self.q.clone(),
            q_enclosures: self.q_enclosures.clone(),
            hsets: self.hsets.values().map(HSetFile::from_hset).collect(),
        }
    }
}

/// Plain-data form of [`PaperData`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaperDataSnapshot {
    pub schema_version: u32,
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
    pub vectors: BTreeMap<String, Vec<f64>>,
    pub q1_choice: Q1Choice,
    pub q: Vec<Vec<f64>>,
    pub q_enclosures: Vec<IBox>,
    pub hsets: Vec<HSetFile>,
}

impl PaperDataSnapshot {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("snapshot always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn values(v: &[Decimal]) -> Vec<f64> {
    v.iter().map(Decimal::value).collect()
}

/// `base + Σ cᵢ vᵢ` in floats, left to right.
fn affine_point(base: &[f64], terms: &[(f64, &[f64])]) -> Vec<f64> {
    let mut p = base.to_vec();
    for (c, v) in terms {
        for (pi, vi) in p.iter_mut().zip(v.iter()) {
            *pi += c * vi;
        }
    }
    p
}

fn affine_enclosure(base: &[f64], terms: &[(f64, &[f64])]) -> IBox {
    let mut p = IBox::point(base);
    for (c, v) in terms {
        for (i, vi) in v.iter().enumerate() {
            p[i] = p[i] + Interval::point(*c) * *vi;
        }
    }
    p
}

fn finite_or_inf(d: f64) -> f64 {
    if d.is_finite() {
        d
    } else {
        f64::INFINITY
    }
}

/// Parses the embedded file and derives every set the campaign uses.
pub fn build_paper_data() -> Result<PaperData> {
    build_from_json(PAPER_DATA_JSON)
}

pub fn build_from_json(text: &str) -> Result<PaperData> {
    let raw: RawData = serde_json::from_str(text)?;
    build_from_raw(raw)
}

pub fn build_from_raw(raw: RawData) -> Result<PaperData> {
    if raw.map != QuadraticReversibleMap::ID {
        return Err(Error::Config(format!("unsupported map {}", raw.map)));
    }
    let f = QuadraticReversibleMap::new();
    let finv = QuadraticInverse::new();
    let reversor = LinearReversor::diagonal(&values(&raw.reversor))?;

    let mut points: BTreeMap<String, Vec<f64>> =
        raw.points.iter().map(|(k, v)| (k.clone(), values(v))).collect();
    let point = |points: &BTreeMap<String, Vec<f64>>, name: &str| -> Result<Vec<f64>> {
        points
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Config(format!("unknown point {name}")))
    };
    let p1 = point(&points, "P1")?;
    let p2 = point(&points, "P2")?;

    let mut vectors = BTreeMap::new();
    for (name, v) in &raw.unstable_vectors {
        let u = values(v);
        let s = reversor
            .apply_exact(&u)
            .ok_or_else(|| Error::Config(format!("S({name}) is not exact")))?;
        let sname = name
            .strip_prefix("u_")
            .map(|rest| format!("s_{rest}"))
            .ok_or_else(|| Error::Config(format!("vector name {name} must start with u_")))?;
        vectors.insert(name.clone(), u);
        vectors.insert(sname, s);
    }
    let vector = |name: &str| -> Result<&[f64]> {
        vectors
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Config(format!("unknown vector {name}")))
    };

    // Q₁: try every reading of the ambiguous term against the constraints.
    let q1 = &raw.q1;
    let base = point(&points, &q1.base)?;
    let target = point(&points, &q1.target)?;
    let choices: Vec<&[String]> = q1.terms.iter().map(|t| t.vector.as_slice()).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return Err(Error::Config("every Q1 term needs a vector".into()));
    }
    let ambiguous = choices.iter().position(|c| c.len() > 1);
    let alternatives: Vec<usize> = match ambiguous {
        Some(i) => (0..choices[i].len()).collect(),
        None => vec![0],
    };
    let mut candidates = Vec::new();
    let mut chosen_terms = None;
    for alt in alternatives {
        let mut terms = Vec::new();
        for (i, t) in q1.terms.iter().enumerate() {
            let name = if Some(i) == ambiguous { &t.vector[alt] } else { &t.vector[0] };
            terms.push((t.coefficient.value(), vector(name)?));
        }
        let p = affine_point(&base, &terms);
        let pre = finite_or_inf(max_dist(&finv.eval_point(&p), &base));
        let orbit = iterate_point(&f, q1.target_iterates, &p);
        let fwd = finite_or_inf(max_dist(orbit.last().expect("non-empty orbit"), &target));
        let admissible = pre < q1.preimage_tolerance && fwd < q1.target_tolerance;
        let label = ambiguous.map_or_else(|| "unique".to_owned(), |i| choices[i][alt].clone());
        if admissible && chosen_terms.is_none() {
            chosen_terms = Some((label.clone(), p.clone(), affine_enclosure(&base, &terms)));
        }
        candidates.push(Q1Candidate {
            vector: label,
            point: p,
            preimage_residual: pre,
            target_residual: fwd,
            admissible,
        });
    }
    let Some((chosen, q1_point, q1_enclosure)) = chosen_terms else {
        let detail: Vec<String> = candidates
            .iter()
            .map(|c| format!("{}: preimage {:e}, target {:e}", c.vector, c.preimage_residual, c.target_residual))
            .collect();
        return Err(Error::Config(format!("no Q1 reading meets the constraints ({})", detail.join("; "))));
    };
    points.insert("Q1".into(), q1_point.clone());
    let mut q = vec![q1_point];
    let mut q_enclosures = vec![q1_enclosure];
    let mut enclosures: BTreeMap<String, IBox> = BTreeMap::new();
    enclosures.insert("Q1".into(), q_enclosures[0].clone());
    for op in &raw.orbit_points {
        let from = point(&points, &op.from)?;
        let orbit = iterate_point(&f, op.iterates, &from);
        let p = orbit.last().expect("non-empty orbit").clone();
        let from_box = enclosures
            .get(&op.from)
            .cloned()
            .unwrap_or_else(|| IBox::point(&from));
        let enc = eval_iterate(&f, op.iterates, &from_box);
        enclosures.insert(op.name.clone(), enc.clone());
        points.insert(op.name.clone(), p.clone());
        q.push(p);
        q_enclosures.push(enc);
    }

    let mut hsets = BTreeMap::new();
    for h in &raw.hsets {
        let center = point(&points, &h.center)?;
        let dirs: Vec<&[f64]> = h.vectors.iter().map(|v| vector(v)).collect::<Result<_>>()?;
        let n = HSet::from_scaled(h.name.clone(), center, &dirs, &values(&h.scales), dirs.len() / 2)?;
        hsets.insert(h.name.clone(), n);
    }

    Ok(PaperData {
        raw,
        reversor,
        p1,
        p2,
        vectors,
        q1_choice: Q1Choice { chosen, candidates },
        q,
        q_enclosures,
        hsets,
    })
}
