use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::covering::{CoveringCertificate, Direction, Status};
use crate::error::Result;
use crate::hset::{st_symmetric_check, sym_image, HSet, LinearReversor};

/// An edge together with the index of the edge it was derived from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub certificate: CoveringCertificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_from: Option<usize>,
}

impl GraphEdge {
    /// Verified directly, or derived from a verified edge.
    pub fn holds(&self) -> bool {
        self.certificate.is_verified()
    }

    fn key(&self) -> (String, String, String, usize, bool) {
        let c = &self.certificate;
        (c.source.clone(), c.target.clone(), c.map.clone(), c.iterates, c.is_back())
    }
}

/// Covering relations between named h-sets. Every edge reads forward in
/// time: orbits go from `source` to `target` under `map^iterates`,
/// whether the edge is a covering or a backcovering.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CoveringGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<GraphEdge>,
    /// Nodes carrying a disk in `Fix(S)` that is both horizontal and
    /// vertical.
    #[serde(default)]
    pub symmetric_disks: Vec<String>,
    #[serde(skip)]
    sets: BTreeMap<String, HSet>,
}

/// Compares the relational content only; attached h-sets are a cache.
impl PartialEq for CoveringGraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges && self.symmetric_disks == other.symmetric_disks
    }
}

impl CoveringGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, n: &HSet) {
        if !self.nodes.iter().any(|m| m == n.name()) {
            self.nodes.push(n.name().to_owned());
        }
        self.sets.insert(n.name().to_owned(), n.clone());
    }

    pub fn set(&self, name: &str) -> Option<&HSet> {
        self.sets.get(name)
    }

    /// Adds an edge; its endpoints must already be nodes.
    pub fn add_edge(&mut self, certificate: CoveringCertificate) -> usize {
        self.edges.push(GraphEdge {
            certificate,
            derived_from: None,
        });
        self.edges.len() - 1
    }

    /// First edge from `a` to `b` that holds.
    pub fn edge(&self, a: &str, b: &str) -> Option<&GraphEdge> {
        self.edges
            .iter()
            .find(|e| e.holds() && e.certificate.source == a && e.certificate.target == b)
    }

    /// Holding edges leaving `a`.
    pub fn successors<'a>(&'a self, a: &'a str) -> impl Iterator<Item = &'a GraphEdge> + 'a {
        self.edges
            .iter()
            .filter(move |e| e.holds() && e.certificate.source == a)
    }

    pub fn has_symmetric_disk(&self, name: &str) -> bool {
        self.symmetric_disks.iter().any(|n| n == name)
    }

    pub fn mark_symmetric_disk(&mut self, name: &str) {
        if !self.has_symmetric_disk(name) {
            self.symmetric_disks.push(name.to_owned());
        }
    }
}

/// `Sᵀ*N`, named after `N` itself when `N` is `Sᵀ`-symmetric.
fn image_node(s: &LinearReversor, n: &HSet) -> Result<HSet> {
    if st_symmetric_check(s, n) {
        Ok(n.clone())
    } else {
        sym_image(s, n)
    }
}

/// Adds `Sᵀ*M ⇐ Sᵀ*N` for every holding `N ⇒ M`, and `Sᵀ*M ⇒ Sᵀ*N` for
/// every holding `N ⇐ M`, with the same degree. Repeats until nothing new
/// appears, so applying it twice adds nothing.
pub fn symmetric_closure(graph: &CoveringGraph, s: &LinearReversor) -> Result<CoveringGraph> {
    let mut g = graph.clone();
    let mut next = 0;
    while next < g.edges.len() {
        let idx = next;
        next += 1;
        let e = &g.edges[idx];
        if !e.holds() {
            continue;
        }
        let (Some(src), Some(dst)) = (g.sets.get(&e.certificate.source), g.sets.get(&e.certificate.target)) else {
            continue;
        };
        let new_src = image_node(s, dst)?;
        let new_dst = image_node(s, src)?;
        let c = &e.certificate;
        let relation = if c.is_back() { Direction::Direct } else { Direction::Back };
        let derived = GraphEdge {
            certificate: CoveringCertificate {
                source: new_src.name().to_owned(),
                target: new_dst.name().to_owned(),
                map: c.map.clone(),
                iterates: c.iterates,
                direction: Direction::DerivedBySymmetry,
                relation: Some(relation),
                degree: c.degree,
                status: Status::Verified,
                boxes: 0,
                max_depth: 0,
                wall_time_secs: 0.0,
                sweeps: Vec::new(),
                note: Some(format!("reversing symmetry applied to {} -> {}", c.source, c.target)),
            },
            derived_from: Some(idx),
        };
        if g.edges.iter().any(|x| x.key() == derived.key()) {
            continue;
        }
        g.add_node(&new_src);
        g.add_node(&new_dst);
        g.edges.push(derived);
    }
    Ok(g)
}

/// Outcome of the `Fix(S)` disk check for one h-set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixDiskCheck {
    pub set: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// Checks that `b(p, q) = M·(p, q, p, q) + x` lies in `Fix(S)`: the centre
/// must be fixed and `S` must map the `j`-th unstable column onto the `j`-th
/// stable column, both exactly. `b_c(p, q) = (p, q, p, q)` is then a
/// horizontal disk, and being `S`-invariant it is also vertical in
/// `Sᵀ*N = N`.
pub fn fix_disk_check(s: &LinearReversor, n: &HSet) -> FixDiskCheck {
    let fail = |why: String| FixDiskCheck {
        set: n.name().to_owned(),
        passed: false,
        failure: Some(why),
    };
    if n.u() != n.s() {
        return fail(format!("u = {} differs from s = {}", n.u(), n.s()));
    }
    if s.dim() != n.dim() {
        return fail(format!("reversor acts on dimension {}", s.dim()));
    }
    if !s.fixes(n.center()) {
        return fail("centre is not in Fix(S)".into());
    }
    for j in 0..n.u() {
        let image = s.apply_exact(&n.columns()[j]);
        if image.as_deref() != Some(n.columns()[n.u() + j].as_slice()) {
            return fail(format!("S maps unstable column {j} off stable column {j}"));
        }
    }
    FixDiskCheck {
        set: n.name().to_owned(),
        passed: true,
        failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IBox;

    fn cert(a: &str, b: &str, w: i32) -> CoveringCertificate {
        CoveringCertificate {
            source: a.into(),
            target: b.into(),
            map: "g".into(),
            iterates: 1,
            direction: Direction::Direct,
            relation: None,
            degree: Some(w),
            status: Status::Verified,
            boxes: 1,
            max_depth: 0,
            wall_time_secs: 0.0,
            sweeps: Vec::new(),
            note: None,
        }
    }

    fn flip() -> LinearReversor {
        LinearReversor::diagonal(&[-1.0, 1.0]).unwrap()
    }

    fn sets() -> (HSet, HSet) {
        // A is symmetric under (x, y) -> (-x, y); B is not.
        let a = HSet::new("A", vec![0.0, 0.0], vec![vec![1.0, 1.0], vec![-1.0, 1.0]], 1, 1).unwrap();
        let b = HSet::new("B", vec![2.0, 0.0], vec![vec![1.0, 0.0], vec![0.0, 1.0]], 1, 1).unwrap();
        (a, b)
    }

    #[test]
    fn closure_adds_flipped_edge_once() {
        let (a, b) = sets();
        let mut g = CoveringGraph::new();
        g.add_node(&a);
        g.add_node(&b);
        g.add_edge(cert("A", "B", -1));
        let c = symmetric_closure(&g, &flip()).unwrap();
        assert_eq!(c.nodes, ["A", "B", "S^T*B"]);
        assert_eq!(c.edges.len(), 2);
        let d = &c.edges[1].certificate;
        assert_eq!((d.source.as_str(), d.target.as_str()), ("S^T*B", "A"));
        assert!(d.is_back());
        assert_eq!(d.degree, Some(-1));
        assert_eq!(c.edges[1].derived_from, Some(0));
        let again = symmetric_closure(&c, &flip()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn unverified_edges_are_not_mirrored() {
        let (a, b) = sets();
        let mut g = CoveringGraph::new();
        g.add_node(&a);
        g.add_node(&b);
        let mut e = cert("A", "B", 1);
        e.status = Status::Inconclusive;
        g.add_edge(e);
        assert_eq!(symmetric_closure(&g, &flip()).unwrap().edges.len(), 1);
    }

    #[test]
    fn fix_disk() {
        let (a, b) = sets();
        assert!(fix_disk_check(&flip(), &a).passed);
        let r = fix_disk_check(&flip(), &b);
        assert!(!r.passed);
        assert!(r.failure.unwrap().contains("centre"));
        // The disk p -> M(p, p) + x really is fixed by S.
        let s = flip();
        for p in [-1.0, -0.25, 0.5, 1.0] {
            let v = a.chart_inv(&IBox::point(&[p, p]));
            assert_eq!(s.apply_box(&v), v);
        }
    }
}
