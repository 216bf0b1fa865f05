//! Whitespace-separated point clouds for external plotting tools.

use std::fmt::Write as _;
use std::path::Path;

use covrel::campaign::build_paper_data;
use covrel::covering::float_sweep;
use covrel::dynamics::{MapSystem, QuadraticReversibleMap};
use covrel::hset::HSet;
use covrel::interval::IBox;

use crate::InputError;

const PER_COORD: usize = 9;

fn write_rows<'a>(path: &Path, header: &str, rows: impl Iterator<Item = (&'a [f64], &'a str)>) -> std::io::Result<()> {
    let mut s = format!("# {header}\n");
    for (row, label) in rows {
        for x in row {
            write!(s, "{x:.17e} ").expect("writing to a String");
        }
        s.push_str(label);
        s.push('\n');
    }
    std::fs::write(path, s)
}

/// Boundary points of `|N|`, projected onto the last two coordinates.
fn support_points(n: &HSet) -> Vec<Vec<f64>> {
    let sweep = float_sweep(n, &covrel::dynamics::LinearMap::identity(n.dim()), 1, n, PER_COORD);
    let d = n.dim();
    sweep
        .boundary
        .iter()
        .map(|(p, _)| {
            let v = n.chart_inv(&IBox::point(p)).mid();
            v[d.saturating_sub(2)..].to_vec()
        })
        .collect()
}

/// `<stem>_exit_unstable.dat`, `<stem>_boundary_stable.dat` and
/// `<stem>_supports.dat`.
pub fn relation(dir: &Path, stem: &str, n: &HSet, map: &dyn MapSystem, k: usize, m: &HSet) -> Result<(), InputError> {
    std::fs::create_dir_all(dir)?;
    let sweep = float_sweep(n, map, k, m, PER_COORD);
    let u = sweep.u;
    write_rows(
        &dir.join(format!("{stem}_exit_unstable.dat")),
        &format!("unstable chart coordinates of {}^{k}(exit set of {}) in {}", map.id(), n.name(), m.name()),
        sweep.exit.iter().map(|(_, y)| (&y[..u], "")),
    )?;
    write_rows(
        &dir.join(format!("{stem}_boundary_stable.dat")),
        &format!("stable chart coordinates of {}^{k}(boundary of {}) in {}", map.id(), n.name(), m.name()),
        sweep.boundary.iter().map(|(_, y)| (&y[u..], "")),
    )?;
    let (pn, pm) = (support_points(n), support_points(m));
    write_rows(
        &dir.join(format!("{stem}_supports.dat")),
        "last two coordinates of boundary points, labelled by set",
        pn.iter()
            .map(|p| (p.as_slice(), n.name()))
            .chain(pm.iter().map(|p| (p.as_slice(), m.name()))),
    )?;
    Ok(())
}

/// `n1n2.dat` (supports of N1 and N2 in the `(y₁, y₂)` plane) and the
/// `h1_h2_*` clouds of the four-iterate link.
pub fn campaign(dir: &Path) -> Result<(), InputError> {
    std::fs::create_dir_all(dir)?;
    let data = build_paper_data()?;
    let (n1, n2) = (data.hset("N1")?, data.hset("N2")?);
    let (p1, p2) = (support_points(n1), support_points(n2));
    write_rows(
        &dir.join("n1n2.dat"),
        "y1 y2 set",
        p1.iter()
            .map(|p| (p.as_slice(), "N1"))
            .chain(p2.iter().map(|p| (p.as_slice(), "N2"))),
    )?;
    let f = QuadraticReversibleMap::new();
    relation(dir, "h1_h2", data.hset("H1")?, &f, 4, data.hset("H2")?)
}
