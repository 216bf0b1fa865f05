use std::time::Instant;

use super::{
    check_entry_condition, check_exit_condition, compute_degree, ChartMap, CoveringCertificate, Direction, Status,
    SweepOutcome, SweepReport, VerifyConfig,
};
use crate::dynamics::MapSystem;
use crate::error::{Error, Result};
use crate::hset::HSet;

fn status_of(sweeps: &[SweepReport]) -> Status {
    if sweeps.iter().any(|s| s.outcome == SweepOutcome::Refuted) {
        Status::RefutedCell
    } else if sweeps.iter().all(SweepReport::passed) {
        Status::Verified
    } else {
        Status::Inconclusive
    }
}

/// Certifies `N ⇒ M` under `gᵏ` with the convex homotopy.
///
/// Mismatched dimensions are input errors. Everything else, including an
/// undecidable degree, ends up in the certificate status.
pub fn verify_cover(
    n: &HSet,
    map: &dyn MapSystem,
    k: usize,
    m: &HSet,
    cfg: &VerifyConfig,
) -> Result<CoveringCertificate> {
    cfg.validate()?;
    let start = Instant::now();
    let mut cert = CoveringCertificate {
        source: n.name().to_owned(),
        target: m.name().to_owned(),
        map: map.id().to_owned(),
        iterates: k,
        direction: Direction::Direct,
        relation: None,
        degree: None,
        status: Status::Inconclusive,
        boxes: 0,
        max_depth: 0,
        wall_time_secs: 0.0,
        sweeps: Vec::new(),
        note: None,
    };
    let degree = match compute_degree(n, map, k, m) {
        Ok(d) => d,
        Err(e @ (Error::IndeterminateSign { .. } | Error::SingularMatrix { .. })) => {
            cert.note = Some(format!("degree: {e}"));
            cert.wall_time_secs = start.elapsed().as_secs_f64();
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    let fc = ChartMap {
        source: n,
        target: m,
        map,
        iterates: k,
        mode: cfg.eval_mode,
    };
    if n.u() > 0 {
        cert.sweeps.push(check_exit_condition(&fc, &degree.df_c0, cfg)?);
    }
    if n.s() > 0 && cert.sweeps.iter().all(SweepReport::passed) {
        cert.sweeps.push(check_entry_condition(&fc, cfg)?);
    }
    cert.degree = Some(degree.w);
    cert.status = status_of(&cert.sweeps);
    cert.boxes = cert.sweeps.iter().map(|s| s.boxes).sum();
    cert.max_depth = cert.sweeps.iter().map(|s| s.max_depth).max().unwrap_or(0);
    cert.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(cert)
}

/// Certifies `N ⇐ M` under `gᵏ`, i.e. `Mᵀ ⇒ Nᵀ` under `g⁻ᵏ`.
///
/// The certificate is labelled in forward time: source `N`, target `M`,
/// map `g`.
pub fn verify_backcover(
    n: &HSet,
    map: &dyn MapSystem,
    k: usize,
    m: &HSet,
    cfg: &VerifyConfig,
) -> Result<CoveringCertificate> {
    let inv = map.inverse().ok_or_else(|| Error::MissingInverse(map.id().to_owned()))?;
    let mut cert = verify_cover(&m.transpose(), inv.as_ref(), k, &n.transpose(), cfg)?;
    cert.note = Some(match cert.note.take() {
        Some(note) => format!("checked as {} => {} under {}; {note}", cert.source, cert.target, cert.map),
        None => format!("checked as {} => {} under {}", cert.source, cert.target, cert.map),
    });
    cert.source = n.name().to_owned();
    cert.target = m.name().to_owned();
    cert.map = map.id().to_owned();
    cert.direction = Direction::Back;
    Ok(cert)
}
