//! Volumes of orthogonal sets, normalized so that the Levi lattice has
//! covolume 1: directly from the convex hull, and from the limit of the
//! associated exponential sum.

use num::{One, Signed, Zero};

use super::hull::Hull;
use super::ortho::OrthogonalSet;
use crate::error::{Error, Result};
use crate::linalg::rational::{dot, q, Vector, Q};
use crate::linalg::RatMatrix;

/// Points `Y_P` in lattice coordinates of `A_M`.
pub fn lattice_points(y: &OrthogonalSet) -> Vec<Vector> {
    y.points()
        .iter()
        .map(|p| y.levi().lattice_coords(p))
        .collect()
}

/// Volume of the convex hull of a positive set via a pulling triangulation.
pub fn volume_polytope(y: &OrthogonalSet) -> Result<Q> {
    y.require_positive()?;
    let pts = lattice_points(y);
    if y.levi().dim() == 0 {
        return Ok(Q::one());
    }
    Ok(Hull::new(&pts).volume())
}

/// Directions `μ = (1, s, s^2, ..)` in lattice coordinates, `s = 1, 2, ..`,
/// skipping any `s` for which some coroot pairs to zero with `μ`.
pub fn generic_directions(y: &OrthogonalSet, count: usize) -> Vec<Vector> {
    let levi = y.levi();
    let a = levi.dim();
    let coroots: Vec<Vector> = (0..levi.num_chambers())
        .flat_map(|p| {
            levi.chamber(p)
                .simple
                .iter()
                .map(|s| levi.lattice_coords(&s.coroot))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut out = Vec::new();
    let mut s = 1i64;
    while out.len() < count {
        let mu: Vector = (0..a).map(|k| q(s.pow(k as u32))).collect();
        if coroots.iter().all(|c| !dot(&mu, c).is_zero()) {
            out.push(mu);
        }
        s += 1;
    }
    out
}

/// `Σ_P c_P e^{t μ(Y_P)} / (t^a ∏ μ(α^∨))` expanded in `t`: returns the
/// coefficients of `t^{j-a}` for `j = 0..=a`. The set is orthogonal exactly
/// when the polar part vanishes, and the `t^0` coefficient is the volume.
pub fn exponential_sum_coefficients(y: &OrthogonalSet, mu: &[Q]) -> Result<Vec<Q>> {
    let levi = y.levi();
    let a = levi.dim();
    let mut coeffs = vec![Q::zero(); a + 1];
    for p in 0..levi.num_chambers() {
        let cor: Vec<Vector> = levi
            .chamber(p)
            .simple
            .iter()
            .map(|s| levi.lattice_coords(&s.coroot))
            .collect();
        let c_p = if a == 0 {
            Q::one()
        } else {
            RatMatrix::from_rows(&cor).det().abs()
        };
        let mut denom = Q::one();
        for c in &cor {
            let v = dot(mu, c);
            if v.is_zero() {
                return Err(Error::Invalid("direction is not generic".into()));
            }
            denom *= v;
        }
        let m = dot(mu, &levi.lattice_coords(y.point(p)));
        let base = c_p / denom;
        // c_P μ(Y)^j / j!
        let mut term = base;
        for (j, slot) in coeffs.iter_mut().enumerate() {
            if j > 0 {
                term = term * &m / q(j as i64);
            }
            *slot += &term;
        }
    }
    Ok(coeffs)
}

#[derive(Clone, Debug)]
pub struct AnalyticVolume {
    pub value: Q,
    pub directions: Vec<Vector>,
    /// The value obtained along each direction.
    pub per_direction: Vec<Q>,
}

/// Limit of the exponential sum at `λ = 0` along `count` generic directions.
pub fn volume_analytic_with(y: &OrthogonalSet, count: usize) -> Result<AnalyticVolume> {
    let dirs = generic_directions(y, count.max(1));
    let mut per = Vec::with_capacity(dirs.len());
    for mu in &dirs {
        let c = exponential_sum_coefficients(y, mu)?;
        if let Some(j) = c[..c.len() - 1].iter().position(|x| !x.is_zero()) {
            return Err(Error::NotOrthogonal(format!(
                "polar term of order {} survives",
                c.len() - 1 - j
            )));
        }
        per.push(c[c.len() - 1].clone());
    }
    if per.iter().any(|v| *v != per[0]) {
        return Err(Error::Inconsistent("limit depends on the direction".into()));
    }
    Ok(AnalyticVolume {
        value: per[0].clone(),
        directions: dirs,
        per_direction: per,
    })
}

/// Analytic volume checked along three generic directions.
pub fn volume_analytic(y: &OrthogonalSet) -> Result<Q> {
    Ok(volume_analytic_with(y, 3)?.value)
}
