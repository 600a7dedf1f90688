//! Analytic parametrizations of the catalog surfaces and solids.
//!
//! Even ambient dimension `2n` uses a toric chart: one shape angle per
//! adjacent coordinate pair boundary minus one (`[0, pi/2]` each) plus one
//! full-period angle per pair. This keeps the per-axis trigonometric degree
//! low, which is what makes dimension-8 quadrature affordable. Odd ambient
//! dimensions use the classical hyperspherical chart.

use super::quadrature::Axis;
use std::sync::Arc;

/// A smooth parametrization of a surface or solid from a rectangular box,
/// with analytically supplied partial derivatives.
pub trait Chart: Send + Sync {
    fn ambient_dim(&self) -> usize;

    fn axes(&self) -> &[Axis];

    /// Sign `s` such that `s * det[x/|x| | J]` (surfaces) resp. `s * det J`
    /// (solids) is positive on the interior of the parameter box; composing
    /// with it realizes the outward-normal-first orientation.
    fn base_sign(&self) -> f64;

    /// Evaluate the chart: `point` has length `m`, `jac` is column-major of
    /// length `m * axes().len()` with column `j` holding the partial
    /// derivative along axis `j`.
    fn eval(&self, params: &[f64], point: &mut [f64], jac: &mut [f64]);
}

pub type ChartRef = Arc<dyn Chart>;

fn toric_base_sign(n: usize) -> f64 {
    if (n * (n - 1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Shared kernel: writes the unit-radius toric point and its derivatives.
///
/// `psi` has length `n-1`, `phi` length `n`. Outputs `sigma[k]` (radius
/// fraction of plane `k`) and `dsigma[k][j] = d sigma_k / d psi_j`.
struct ToricKernel {
    n: usize,
    sigma: Vec<f64>,
    dsigma: Vec<f64>, // (n) x (n-1), row-major
    cos_phi: Vec<f64>,
    sin_phi: Vec<f64>,
}

impl ToricKernel {
    fn new(n: usize) -> Self {
        ToricKernel {
            n,
            sigma: vec![0.0; n],
            dsigma: vec![0.0; n * n.saturating_sub(1)],
            cos_phi: vec![0.0; n],
            sin_phi: vec![0.0; n],
        }
    }

    fn compute(&mut self, psi: &[f64], phi: &[f64]) {
        let n = self.n;
        debug_assert_eq!(psi.len(), n - 1);
        debug_assert_eq!(phi.len(), n);
        let mut s = [0.0f64; 16];
        let mut c = [0.0f64; 16];
        for (j, &a) in psi.iter().enumerate() {
            s[j] = a.sin();
            c[j] = a.cos();
        }
        // sigma_k = prod_{l<k} s_l * (c_k if k < n-1 else 1)
        let mut pre = 1.0;
        for k in 0..n {
            self.sigma[k] = pre * if k < n - 1 { c[k] } else { 1.0 };
            if k < n - 1 {
                pre *= s[k];
            }
        }
        let cols = n - 1;
        for v in self.dsigma.iter_mut() {
            *v = 0.0;
        }
        for k in 0..n {
            let jmax = if k < n - 1 { k + 1 } else { n - 1 };
            for j in 0..jmax {
                let mut term = 1.0;
                for l in 0..k.min(n - 1) {
                    term *= if l == j { c[l] } else { s[l] };
                }
                if k < n - 1 {
                    term *= if j < k { c[k] } else { -s[k] };
                }
                self.dsigma[k * cols + j] = term;
            }
        }
        for (k, &a) in phi.iter().enumerate() {
            self.cos_phi[k] = a.cos();
            self.sin_phi[k] = a.sin();
        }
    }
}

/// Boundary sphere of a toric solid: `S^{2n-1}` of Euclidean radius
/// `radius`, optionally stretched by per-plane factors (ellipsoids).
pub struct ToricSphere {
    n: usize,
    radius: f64,
    plane_scales: Vec<f64>,
    axes: Vec<Axis>,
}

impl ToricSphere {
    pub fn new(n: usize, radius: f64, plane_scales: Option<Vec<f64>>) -> Self {
        assert!(n >= 1 && n <= 16);
        let scales = plane_scales.unwrap_or_else(|| vec![1.0; n]);
        assert_eq!(scales.len(), n);
        let mut axes = Vec::new();
        for _ in 0..n - 1 {
            axes.push(Axis::half_polar());
        }
        for _ in 0..n {
            axes.push(Axis::periodic());
        }
        ToricSphere { n, radius, plane_scales: scales, axes }
    }
}

impl Chart for ToricSphere {
    fn ambient_dim(&self) -> usize {
        2 * self.n
    }

    fn axes(&self) -> &[Axis] {
        &self.axes
    }

    fn base_sign(&self) -> f64 {
        toric_base_sign(self.n)
    }

    fn eval(&self, params: &[f64], point: &mut [f64], jac: &mut [f64]) {
        let n = self.n;
        let m = 2 * n;
        let d = m - 1;
        let mut kern = ToricKernel::new(n);
        kern.compute(&params[..n - 1], &params[n - 1..]);
        let r = self.radius;
        for v in jac.iter_mut() {
            *v = 0.0;
        }
        for k in 0..n {
            let rs = r * self.plane_scales[k];
            let (cp, sp) = (kern.cos_phi[k], kern.sin_phi[k]);
            point[2 * k] = rs * kern.sigma[k] * cp;
            point[2 * k + 1] = rs * kern.sigma[k] * sp;
            for j in 0..n - 1 {
                let dv = kern.dsigma[k * (n - 1) + j];
                if dv != 0.0 {
                    jac[j * m + 2 * k] = rs * dv * cp;
                    jac[j * m + 2 * k + 1] = rs * dv * sp;
                }
            }
            let col = n - 1 + k;
            debug_assert!(col < d);
            jac[col * m + 2 * k] = -rs * kern.sigma[k] * sp;
            jac[col * m + 2 * k + 1] = rs * kern.sigma[k] * cp;
        }
    }
}

/// Solid of revolution between radii `r_lo` and `r_hi` in the toric chart:
/// a ball (`r_lo = 0`), a shell, or an ellipsoid body (with plane scales).
pub struct ToricSolid {
    n: usize,
    plane_scales: Vec<f64>,
    axes: Vec<Axis>,
}

impl ToricSolid {
    pub fn new(n: usize, r_lo: f64, r_hi: f64, plane_scales: Option<Vec<f64>>) -> Self {
        assert!(n >= 1 && n <= 16);
        assert!(r_lo >= 0.0 && r_hi > r_lo);
        let scales = plane_scales.unwrap_or_else(|| vec![1.0; n]);
        assert_eq!(scales.len(), n);
        let mut axes = vec![Axis::radial(r_lo, r_hi)];
        for _ in 0..n - 1 {
            axes.push(Axis::half_polar());
        }
        for _ in 0..n {
            axes.push(Axis::periodic());
        }
        ToricSolid { n, plane_scales: scales, axes }
    }
}

impl Chart for ToricSolid {
    fn ambient_dim(&self) -> usize {
        2 * self.n
    }

    fn axes(&self) -> &[Axis] {
        &self.axes
    }

    fn base_sign(&self) -> f64 {
        toric_base_sign(self.n)
    }

    fn eval(&self, params: &[f64], point: &mut [f64], jac: &mut [f64]) {
        let n = self.n;
        let m = 2 * n;
        let r = params[0];
        let mut kern = ToricKernel::new(n);
        kern.compute(&params[1..n], &params[n..]);
        for v in jac.iter_mut() {
            *v = 0.0;
        }
        for k in 0..n {
            let sc = self.plane_scales[k];
            let (cp, sp) = (kern.cos_phi[k], kern.sin_phi[k]);
            let unit_x = sc * kern.sigma[k] * cp;
            let unit_y = sc * kern.sigma[k] * sp;
            point[2 * k] = r * unit_x;
            point[2 * k + 1] = r * unit_y;
            // radial column
            jac[2 * k] = unit_x;
            jac[2 * k + 1] = unit_y;
            for j in 0..n - 1 {
                let dv = kern.dsigma[k * (n - 1) + j];
                if dv != 0.0 {
                    jac[(1 + j) * m + 2 * k] = r * sc * dv * cp;
                    jac[(1 + j) * m + 2 * k + 1] = r * sc * dv * sp;
                }
            }
            let col = n + k;
            jac[col * m + 2 * k] = -r * sc * kern.sigma[k] * sp;
            jac[col * m + 2 * k + 1] = r * sc * kern.sigma[k] * cp;
        }
    }
}

/// Classical hyperspherical sphere chart for any ambient dimension >= 2;
/// used where the toric chart does not apply (odd dimensions).
pub struct HypersphericalSphere {
    m: usize,
    radius: f64,
    axes: Vec<Axis>,
}

impl HypersphericalSphere {
    pub fn new(m: usize, radius: f64) -> Self {
        assert!(m >= 2);
        let mut axes = Vec::new();
        for _ in 0..m - 2 {
            axes.push(Axis::polar());
        }
        axes.push(Axis::periodic());
        HypersphericalSphere { m, radius, axes }
    }
}

fn hyperspherical_eval(m: usize, r: f64, t: &[f64], point: &mut [f64], col: impl FnMut(usize, usize, f64)) {
    debug_assert_eq!(t.len(), m - 1);
    let mut s = [0.0f64; 16];
    let mut c = [0.0f64; 16];
    for (j, &a) in t.iter().enumerate() {
        s[j] = a.sin();
        c[j] = a.cos();
    }
    let mut pre = r;
    for i in 0..m {
        point[i] = pre * if i < m - 1 { c[i] } else { 1.0 };
        if i < m - 1 {
            pre *= s[i];
        }
    }
    let mut col = col;
    for i in 0..m {
        let involved = if i < m - 1 { i + 1 } else { m - 1 };
        for j in 0..involved {
            let mut term = r;
            let lim = i.min(m - 1);
            for l in 0..lim {
                term *= if l == j { c[l] } else { s[l] };
            }
            if i < m - 1 {
                term *= if j < i { c[i] } else { -s[i] };
            }
            col(i, j, term);
        }
    }
}

impl Chart for HypersphericalSphere {
    fn ambient_dim(&self) -> usize {
        self.m
    }

    fn axes(&self) -> &[Axis] {
        &self.axes
    }

    fn base_sign(&self) -> f64 {
        1.0
    }

    fn eval(&self, params: &[f64], point: &mut [f64], jac: &mut [f64]) {
        let m = self.m;
        for v in jac.iter_mut() {
            *v = 0.0;
        }
        hyperspherical_eval(m, self.radius, params, point, |i, j, v| {
            jac[j * m + i] = v;
        });
    }
}

/// Hyperspherical solid between two radii.
pub struct HypersphericalSolid {
    m: usize,
    axes: Vec<Axis>,
}

impl HypersphericalSolid {
    pub fn new(m: usize, r_lo: f64, r_hi: f64) -> Self {
        assert!(m >= 2);
        assert!(r_lo >= 0.0 && r_hi > r_lo);
        let mut axes = vec![Axis::radial(r_lo, r_hi)];
        for _ in 0..m - 2 {
            axes.push(Axis::polar());
        }
        axes.push(Axis::periodic());
        HypersphericalSolid { m, axes }
    }
}

impl Chart for HypersphericalSolid {
    fn ambient_dim(&self) -> usize {
        self.m
    }

    fn axes(&self) -> &[Axis] {
        &self.axes
    }

    fn base_sign(&self) -> f64 {
        1.0
    }

    fn eval(&self, params: &[f64], point: &mut [f64], jac: &mut [f64]) {
        let m = self.m;
        let r = params[0];
        for v in jac.iter_mut() {
            *v = 0.0;
        }
        hyperspherical_eval(m, r, &params[1..], point, |i, j, v| {
            jac[(1 + j) * m + i] = v;
        });
        for i in 0..m {
            jac[i] = point[i] / r;
        }
    }
}

/// `B^2_r x [-L, L]^{m-2}`: the compact cylinder truncation, volume only.
pub struct DiscBox {
    m: usize,
    axes: Vec<Axis>,
}

impl DiscBox {
    pub fn new(m: usize, disc_radius: f64, half_len: f64) -> Self {
        assert!(m >= 3);
        assert!(disc_radius > 0.0 && half_len > 0.0);
        let mut axes = vec![Axis::radial(0.0, disc_radius), Axis::periodic()];
        for _ in 0..m - 2 {
            axes.push(Axis::linear(-half_len, half_len));
        }
        DiscBox { m, axes }
    }
}

impl Chart for DiscBox {
    fn ambient_dim(&self) -> usize {
        self.m
    }

    fn axes(&self) -> &[Axis] {
        &self.axes
    }

    fn base_sign(&self) -> f64 {
        1.0
    }

    fn eval(&self, params: &[f64], point: &mut [f64], jac: &mut [f64]) {
        let m = self.m;
        let (rho, phi) = (params[0], params[1]);
        let (c, s) = (phi.cos(), phi.sin());
        for v in jac.iter_mut() {
            *v = 0.0;
        }
        point[0] = rho * c;
        point[1] = rho * s;
        jac[0] = c;
        jac[1] = s;
        jac[m] = -rho * s;
        jac[m + 1] = rho * c;
        for j in 2..m {
            point[j] = params[j];
            jac[j * m + j] = 1.0;
        }
    }
}

/// Image of a chart under a linear ambient map; needed for checking
/// invariance of integrals under linear coordinate changes.
pub struct LinearImage {
    inner: ChartRef,
    /// row-major m x m
    matrix: Vec<f64>,
    det_sign: f64,
}

impl LinearImage {
    pub fn new(inner: ChartRef, matrix: Vec<f64>) -> Self {
        let m = inner.ambient_dim();
        assert_eq!(matrix.len(), m * m);
        let mut buf = matrix.clone();
        let det = crate::forms::det_in_place(&mut buf, m);
        assert!(det != 0.0, "linear image requires an invertible matrix");
        LinearImage {
            inner,
            matrix,
            det_sign: det.signum(),
        }
    }
}

impl Chart for LinearImage {
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    fn axes(&self) -> &[Axis] {
        self.inner.axes()
    }

    fn base_sign(&self) -> f64 {
        self.inner.base_sign() * self.det_sign
    }

    fn eval(&self, params: &[f64], point: &mut [f64], jac: &mut [f64]) {
        let m = self.ambient_dim();
        let d = self.axes().len();
        let mut p = vec![0.0; m];
        let mut j = vec![0.0; m * d];
        self.inner.eval(params, &mut p, &mut j);
        for i in 0..m {
            let mut acc = 0.0;
            for l in 0..m {
                acc += self.matrix[i * m + l] * p[l];
            }
            point[i] = acc;
        }
        for cidx in 0..d {
            for i in 0..m {
                let mut acc = 0.0;
                for l in 0..m {
                    acc += self.matrix[i * m + l] * j[cidx * m + l];
                }
                jac[cidx * m + i] = acc;
            }
        }
    }
}
