//! Oriented integration domains: closed hypersurfaces and compact regions
//! with boundary, plus the named catalog (balls, shells, ellipsoids, the
//! truncated cylinder).

use super::charts::{Chart, ChartRef, DiscBox, HypersphericalSolid, HypersphericalSphere, LinearImage, ToricSolid, ToricSphere};
use super::GeometryError;
use std::f64::consts::PI;
use std::sync::Arc;

/// A closed oriented parametrized hypersurface in `R^m`.
///
/// `orientation_sign` composes with the chart's base sign; `+1` realizes the
/// outward-normal-first orientation of the chart's underlying surface.
#[derive(Clone)]
pub struct Hypersurface {
    pub chart: ChartRef,
    pub orientation_sign: i8,
    pub label: String,
}

impl Hypersurface {
    pub fn new(chart: ChartRef, orientation_sign: i8, label: impl Into<String>) -> Self {
        assert!(orientation_sign == 1 || orientation_sign == -1);
        Hypersurface {
            chart,
            orientation_sign,
            label: label.into(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.chart.ambient_dim()
    }

    /// Same surface with the opposite orientation.
    pub fn reversed(&self) -> Hypersurface {
        Hypersurface {
            chart: self.chart.clone(),
            orientation_sign: -self.orientation_sign,
            label: self.label.clone(),
        }
    }

    /// Effective sign applied to the parametrization-induced orientation.
    pub fn effective_sign(&self) -> f64 {
        self.chart.base_sign() * self.orientation_sign as f64
    }

    /// Image of this hypersurface under an invertible linear map
    /// (row-major `m x m`). Orientation transforms with the sign of the
    /// determinant.
    pub fn linear_image(&self, matrix: Vec<f64>) -> Hypersurface {
        Hypersurface {
            chart: Arc::new(LinearImage::new(self.chart.clone(), matrix)),
            orientation_sign: self.orientation_sign,
            label: format!("{}*", self.label),
        }
    }
}

type MembershipFn = dyn Fn(&[f64]) -> bool + Send + Sync;

/// A compact region given by volume charts covering it up to measure zero,
/// its oriented boundary components, and a membership predicate.
#[derive(Clone)]
pub struct Region {
    pub label: String,
    ambient_dim: usize,
    pub volume_charts: Vec<ChartRef>,
    pub boundary: Vec<Hypersurface>,
    membership: Arc<MembershipFn>,
}

impl Region {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        (self.membership)(point)
    }

    /// Closed ball of Euclidean radius `r` centered at the origin.
    pub fn ball(dim: usize, r: f64) -> Result<Region, GeometryError> {
        if dim < 2 {
            return Err(GeometryError::InvalidParameters(
                "ball requires dimension >= 2".into(),
            ));
        }
        if !(r > 0.0) {
            return Err(GeometryError::InvalidParameters(format!(
                "ball radius must be positive, got {r}"
            )));
        }
        let (volume, sphere): (ChartRef, ChartRef) = if dim % 2 == 0 {
            let n = dim / 2;
            (
                Arc::new(ToricSolid::new(n, 0.0, r, None)),
                Arc::new(ToricSphere::new(n, r, None)),
            )
        } else {
            (
                Arc::new(HypersphericalSolid::new(dim, 0.0, r)),
                Arc::new(HypersphericalSphere::new(dim, r)),
            )
        };
        let r2 = r * r;
        Ok(Region {
            label: format!("ball({r})"),
            ambient_dim: dim,
            volume_charts: vec![volume],
            boundary: vec![Hypersurface::new(sphere, 1, "outer")],
            membership: Arc::new(move |x: &[f64]| norm2(x) <= r2),
        })
    }

    /// Closed spherical shell: ball of radius `r_out` minus the open ball of
    /// radius `r_in`.
    pub fn shell(dim: usize, r_in: f64, r_out: f64) -> Result<Region, GeometryError> {
        if dim < 2 {
            return Err(GeometryError::InvalidParameters(
                "shell requires dimension >= 2".into(),
            ));
        }
        if !(r_in > 0.0) || !(r_out > r_in) {
            return Err(GeometryError::InvalidParameters(format!(
                "shell radii must satisfy 0 < r < R, got r = {r_in}, R = {r_out}"
            )));
        }
        let (volume, outer, inner): (ChartRef, ChartRef, ChartRef) = if dim % 2 == 0 {
            let n = dim / 2;
            (
                Arc::new(ToricSolid::new(n, r_in, r_out, None)),
                Arc::new(ToricSphere::new(n, r_out, None)),
                Arc::new(ToricSphere::new(n, r_in, None)),
            )
        } else {
            (
                Arc::new(HypersphericalSolid::new(dim, r_in, r_out)),
                Arc::new(HypersphericalSphere::new(dim, r_out)),
                Arc::new(HypersphericalSphere::new(dim, r_in)),
            )
        };
        let (lo2, hi2) = (r_in * r_in, r_out * r_out);
        Ok(Region {
            label: format!("shell({r_in},{r_out})"),
            ambient_dim: dim,
            volume_charts: vec![volume],
            boundary: vec![
                Hypersurface::new(outer, 1, "outer"),
                Hypersurface::new(inner, -1, "inner"),
            ],
            membership: Arc::new(move |x: &[f64]| {
                let n2 = norm2(x);
                lo2 <= n2 && n2 <= hi2
            }),
        })
    }

    /// Closed symplectic ellipsoid `E(a_1..a_n) = {sum_k pi |z_k|^2 / a_k <= 1}`
    /// in `R^{2n}`; the parameters are the widths of the coordinate discs.
    pub fn ellipsoid(widths: &[f64]) -> Result<Region, GeometryError> {
        let n = widths.len();
        if n < 1 {
            return Err(GeometryError::InvalidParameters(
                "ellipsoid requires at least one width".into(),
            ));
        }
        if widths.iter().any(|&a| !(a > 0.0)) {
            return Err(GeometryError::InvalidParameters(format!(
                "ellipsoid widths must be positive, got {widths:?}"
            )));
        }
        let scales: Vec<f64> = widths.iter().map(|&a| (a / PI).sqrt()).collect();
        let volume: ChartRef = Arc::new(ToricSolid::new(n, 0.0, 1.0, Some(scales.clone())));
        let sphere: ChartRef = Arc::new(ToricSphere::new(n, 1.0, Some(scales)));
        let w = widths.to_vec();
        Ok(Region {
            label: format!("ellipsoid{widths:?}"),
            ambient_dim: 2 * n,
            volume_charts: vec![volume],
            boundary: vec![Hypersurface::new(sphere, 1, "outer")],
            membership: Arc::new(move |x: &[f64]| {
                let mut acc = 0.0;
                for k in 0..w.len() {
                    acc += PI * (x[2 * k] * x[2 * k] + x[2 * k + 1] * x[2 * k + 1]) / w[k];
                }
                acc <= 1.0
            }),
        })
    }

    /// Compact cylinder truncation `B^2_r x [-L, L]^{m-2}`. Its boundary has
    /// corners, so no boundary hypersurfaces are attached; it is used for
    /// volume bounds only.
    pub fn truncated_cylinder(dim: usize, r: f64, half_len: f64) -> Result<Region, GeometryError> {
        if dim < 3 {
            return Err(GeometryError::InvalidParameters(
                "truncated cylinder requires dimension >= 3".into(),
            ));
        }
        if !(r > 0.0) || !(half_len > 0.0) {
            return Err(GeometryError::InvalidParameters(format!(
                "truncated cylinder parameters must be positive, got r = {r}, L = {half_len}"
            )));
        }
        let volume: ChartRef = Arc::new(DiscBox::new(dim, r, half_len));
        let r2 = r * r;
        Ok(Region {
            label: format!("cylinder({r},{half_len})"),
            ambient_dim: dim,
            volume_charts: vec![volume],
            boundary: Vec::new(),
            membership: Arc::new(move |x: &[f64]| {
                x[0] * x[0] + x[1] * x[1] <= r2
                    && x[2..].iter().all(|&v| v.abs() <= half_len)
            }),
        })
    }

    /// Parse a region spec string: `ball:r`, `shell:r:R`,
    /// `ellipsoid:a1:..:an`, `cylinder:r:L`. The ambient dimension comes
    /// from `dim` except for ellipsoids, where the widths determine it.
    pub fn from_spec(spec: &str, dim: usize) -> Result<Region, GeometryError> {
        let parts: Vec<&str> = spec.split(':').collect();
        let parse = |s: &str| -> Result<f64, GeometryError> {
            s.parse::<f64>().map_err(|_| {
                GeometryError::InvalidParameters(format!("bad numeric parameter {s:?} in {spec:?}"))
            })
        };
        match parts.as_slice() {
            ["ball"] => Region::ball(dim, 1.0),
            ["ball", r] => Region::ball(dim, parse(r)?),
            ["shell", a, b] => Region::shell(dim, parse(a)?, parse(b)?),
            ["ellipsoid", rest @ ..] if !rest.is_empty() => {
                let widths = rest.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
                Region::ellipsoid(&widths)
            }
            ["cylinder", r, l] => Region::truncated_cylinder(dim, parse(r)?, parse(l)?),
            _ => Err(GeometryError::InvalidParameters(format!(
                "unrecognized region spec {spec:?}"
            ))),
        }
    }
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|&v| v * v).sum()
}

/// Spot-check that the chart Jacobian has full rank at every quadrature
/// node (Gram determinant strictly positive).
pub fn check_full_rank(
    chart: &dyn Chart,
    spec: &super::quadrature::QuadratureSpec,
) -> Result<(), GeometryError> {
    let m = chart.ambient_dim();
    let rules: Vec<_> = chart
        .axes()
        .iter()
        .map(|a| spec.rule_for(a, m))
        .collect();
    let d = rules.len();
    let mut params = vec![0.0; d];
    let mut point = vec![0.0; m];
    let mut jac = vec![0.0; m * d];
    let total: usize = rules.iter().map(|r| r.len()).product();
    for lin in 0..total {
        let mut rem = lin;
        for j in (0..d).rev() {
            let len = rules[j].len();
            params[j] = rules[j].nodes[rem % len];
            rem /= len;
        }
        chart.eval(&params, &mut point, &mut jac);
        if !gram_positive(&jac, m, d) {
            return Err(GeometryError::RankDeficient { node_index: lin });
        }
    }
    Ok(())
}

/// Cholesky-based positivity test of `J^T J`.
pub(crate) fn gram_positive(jac: &[f64], m: usize, d: usize) -> bool {
    let mut g = [0.0f64; 256];
    debug_assert!(d * d <= 256);
    for a in 0..d {
        for b in a..d {
            let mut acc = 0.0;
            for i in 0..m {
                acc += jac[a * m + i] * jac[b * m + i];
            }
            g[a * d + b] = acc;
            g[b * d + a] = acc;
        }
    }
    // in-place Cholesky; fails iff some pivot is non-positive
    for p in 0..d {
        let mut v = g[p * d + p];
        for l in 0..p {
            v -= g[p * d + l] * g[p * d + l];
        }
        if v <= 0.0 {
            return false;
        }
        let s = v.sqrt();
        g[p * d + p] = s;
        for r in p + 1..d {
            let mut w = g[r * d + p];
            for l in 0..p {
                w -= g[r * d + l] * g[p * d + l];
            }
            g[r * d + p] = w / s;
        }
    }
    true
}
