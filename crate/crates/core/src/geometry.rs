//! Volumes and affine-hull distances of point clouds.
//!
//! Edge or spanning matrices are reduced with a column-pivoted Householder
//! QR factorization; the log-volume is the sum of `log |R_ii|`, which never
//! forms the Gram determinant and so cannot under- or overflow.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::ln_gamma;

/// Pivots smaller than this multiple of the leading pivot (times the matrix
/// size) are treated as rank deficiency.
pub const DEGENERATE_PIVOT: f64 = f64::EPSILON;

/// `n × count` matrix whose columns are the points.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    coords: DMatrix<f64>,
}

impl PointCloud {
    /// Wraps a matrix with one point per column.
    pub fn from_columns(coords: DMatrix<f64>) -> Self {
        Self { coords }
    }

    /// Builds a cloud from points given as rows of equal length.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        let n = points.first().map_or(0, Vec::len);
        if n == 0 || points.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidParameters("points must be non-empty and of equal length".into()));
        }
        Ok(Self { coords: DMatrix::from_fn(n, points.len(), |i, j| points[j][i]) })
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.coords.nrows()
    }

    pub fn count(&self) -> usize {
        self.coords.ncols()
    }

    pub fn point(&self, i: usize) -> Vec<f64> {
        self.coords.column(i).iter().copied().collect()
    }

    pub fn coords(&self) -> &DMatrix<f64> {
        &self.coords
    }

    /// Applies `x ↦ m x` to every point.
    pub fn transform(&self, m: &DMatrix<f64>) -> Self {
        Self { coords: m * &self.coords }
    }
}

/// Whether a log-volume includes the `r!` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VolumeConvention {
    /// `log V` (or `log W` for a parallelotope).
    RawVolume,
    /// `log(r! V)`.
    FactorialScaled,
}

/// A sampled log-volume and the convention it is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogVolumeSample {
    pub value: f64,
    pub convention: VolumeConvention,
}

impl LogVolumeSample {
    /// Converts a raw simplex log-volume to `log(r! V)`.
    pub fn factorial_scaled(self, r: usize) -> Self {
        match self.convention {
            VolumeConvention::FactorialScaled => self,
            VolumeConvention::RawVolume => Self {
                value: self.value + ln_gamma(r as f64 + 1.0),
                convention: VolumeConvention::FactorialScaled,
            },
        }
    }
}

/// `½ log det(BᵀB)` for the `n × r` matrix `B`, via pivoted QR.
pub(crate) fn half_log_gram(b: DMatrix<f64>) -> Result<f64> {
    let qr = b.col_piv_qr();
    let r = qr.r();
    let size = r.nrows().max(r.ncols()) as f64;
    let floor = DEGENERATE_PIVOT * size * r.get((0, 0)).map_or(0.0, |d| d.abs());
    let mut acc = 0.0;
    for i in 0..r.nrows().min(r.ncols()) {
        let d = r[(i, i)].abs();
        if !(d > floor && d > 0.0) {
            return Err(Error::Degenerate(format!("pivot {i} has magnitude {d:e}")));
        }
        acc += d.ln();
    }
    Ok(acc)
}

fn edge_matrix(coords: &DMatrix<f64>) -> DMatrix<f64> {
    let r = coords.ncols() - 1;
    let base = coords.column(0);
    DMatrix::from_fn(coords.nrows(), r, |i, j| coords[(i, j + 1)] - base[i])
}

/// `log V` for the simplex whose vertices are the `r + 1` points of `cloud`.
pub fn log_simplex_volume(cloud: &PointCloud) -> Result<LogVolumeSample> {
    let count = cloud.count();
    if count < 2 || count > cloud.n() + 1 {
        return Err(Error::InvalidParameters(format!(
            "simplex needs 2 <= r+1 <= n+1 vertices, got {count} in dimension {}",
            cloud.n()
        )));
    }
    let r = count - 1;
    let value = half_log_gram(edge_matrix(&cloud.coords))? - ln_gamma(r as f64 + 1.0);
    Ok(LogVolumeSample { value, convention: VolumeConvention::RawVolume })
}

/// `log W` for the parallelotope spanned by the `r` points of `cloud`.
pub fn log_parallelotope_volume(cloud: &PointCloud) -> Result<LogVolumeSample> {
    let count = cloud.count();
    if count < 1 || count > cloud.n() {
        return Err(Error::InvalidParameters(format!(
            "parallelotope needs 1 <= r <= n vectors, got {count} in dimension {}",
            cloud.n()
        )));
    }
    let value = half_log_gram(cloud.coords.clone())?;
    Ok(LogVolumeSample { value, convention: VolumeConvention::RawVolume })
}

/// Distance from the origin to the affine hull of the points of `cloud`.
///
/// Zero when the hull is the whole space.
pub fn distance_to_affine_hull(cloud: &PointCloud) -> Result<f64> {
    let count = cloud.count();
    let n = cloud.n();
    if count < 1 || count > n + 1 {
        return Err(Error::InvalidParameters(format!(
            "affine hull needs 1 <= r+1 <= n+1 points, got {count} in dimension {n}"
        )));
    }
    let x1: DVector<f64> = cloud.coords.column(0).into_owned();
    if count == 1 {
        return Ok(x1.norm());
    }
    let r = count - 1;
    if r == n {
        return Ok(0.0);
    }
    // Residual of x1 against span(edges): tail of Qᵀ x1 past the first r rows.
    let qr = edge_matrix(&cloud.coords).col_piv_qr();
    let mut y = x1;
    qr.q_tr_mul(&mut y);
    Ok(y.rows(r, n - r).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unit_right_triangle() {
        let c = PointCloud::from_points(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_relative_eq!(log_simplex_volume(&c).unwrap().value, 0.5f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn segment_length() {
        let c = PointCloud::from_points(&[vec![1.0, 2.0, 3.0], vec![-1.0, 0.5, 7.0]]).unwrap();
        let len = (4.0f64 + 2.25 + 16.0).sqrt();
        assert_relative_eq!(log_simplex_volume(&c).unwrap().value, len.ln(), epsilon = 1e-14);
    }

    #[test]
    fn orthonormal_columns_have_unit_volume() {
        let c = PointCloud::from_points(&[vec![0.6, 0.8, 0.0], vec![-0.8, 0.6, 0.0]]).unwrap();
        assert!(log_parallelotope_volume(&c).unwrap().value.abs() < 1e-15);
    }

    #[test]
    fn degenerate_and_invalid() {
        let c = PointCloud::from_points(&[vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0]]).unwrap();
        assert!(matches!(log_simplex_volume(&c), Err(Error::Degenerate(_))));
        let c = PointCloud::from_points(&[vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        assert!(matches!(log_simplex_volume(&c), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn distance_to_line() {
        // Line x = 1 in the plane.
        let c = PointCloud::from_points(&[vec![1.0, -3.0], vec![1.0, 5.0]]).unwrap();
        assert_relative_eq!(distance_to_affine_hull(&c).unwrap(), 1.0, epsilon = 1e-14);
        let full = PointCloud::from_points(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![2.0, 2.0]]).unwrap();
        assert_eq!(distance_to_affine_hull(&full).unwrap(), 0.0);
    }

    #[test]
    fn factorial_scaling() {
        let s = LogVolumeSample { value: 0.0, convention: VolumeConvention::RawVolume };
        assert_relative_eq!(s.factorial_scaled(3).value, 6f64.ln(), epsilon = 1e-14);
    }
}
