use crate::dynamics::{iterate_point, MapSystem, OrbitSegment};
use crate::error::{Error, Result};
use crate::hset::HSet;
use crate::interval::{det_sign, IBox, IMatrix};

/// Linear model of `g_c` at the origin of the chart.
#[derive(Clone, Debug)]
pub struct DegreeData {
    /// Enclosure of `Dg_c(0)`, the full `n × n` chart derivative.
    pub df_c0: IMatrix,
    /// Its unstable `u × u` block `A`.
    pub a_matrix: IMatrix,
    /// `sgn det A`.
    pub w: i32,
    pub center_orbit: OrbitSegment,
}

/// `Dg_c(0) = M_M⁻¹ · Dgᵏ(x_N) · M_N` and the sign of its unstable block.
///
/// The Jacobians are taken along the floating-point orbit of the centre of
/// `N`, each point promoted to a degenerate box. The matrix obtained this way
/// is a specific real matrix, which is all the homotopy needs.
pub fn compute_degree(n: &HSet, map: &dyn MapSystem, k: usize, m: &HSet) -> Result<DegreeData> {
    if n.u() != m.u() || n.s() != m.s() {
        return Err(Error::Domain(format!(
            "{} has (u,s) = ({},{}) but {} has ({},{})",
            n.name(),
            n.u(),
            n.s(),
            m.name(),
            m.u(),
            m.s()
        )));
    }
    if k == 0 {
        return Err(Error::Domain("iterate count must be positive".into()));
    }
    if map.dim() != n.dim() || map.dim() != m.dim() {
        return Err(Error::Domain(format!("{} acts on dimension {}", map.id(), map.dim())));
    }
    let orbit = iterate_point(map, k, n.center());
    let points: Vec<IBox> = orbit.iter().map(|p| IBox::point(p)).collect();
    let derivatives: Vec<IMatrix> = points[..k].iter().map(|p| map.derivative(p)).collect();
    let center_orbit = OrbitSegment {
        map_id: map.id().to_owned(),
        points,
        derivatives: Some(derivatives),
    };
    let dgk = center_orbit.derivative_product().expect("derivatives were recorded");
    let df_c0 = m.inverse_matrix().matmul(&dgk)?.matmul(n.matrix())?;
    let u = n.u();
    let a_matrix = df_c0.block(0, u, 0, u);
    let w = det_sign(&a_matrix)?;
    Ok(DegreeData {
        df_c0,
        a_matrix,
        w,
        center_orbit,
    })
}
