//! Helicity of exact forms on closed oriented hypersurfaces, the boundary
//! helicity profile of a compact region, and the Stokes identity tying the
//! two together.
//!
//! For an exact k-form `sigma = d(alpha)` on a closed oriented
//! `(k*n - 1)`-manifold, the helicity is the integral of
//! `alpha ∧ sigma^{∧(n-1)}`. It does not depend on the choice of the
//! primitive, changes sign with the orientation, and scales as `C^n` when
//! the form is scaled by `C`. Only `n >= 2` is meaningful.

use crate::forms::{FormError, PolyForm};
use crate::geometry::{
    for_each_region_node, integrate_over_hypersurface, integrate_over_region, GeometryError,
    Hypersurface, QuadratureSpec, Region,
};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HelicityError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("witness is not exact: d(alpha) differs from sigma")]
    NotExact,
    #[error("degree {k} does not evenly divide ambient dimension {m} with order n >= 2")]
    BadStructure { m: usize, k: usize },
    #[error("order n must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("form is not maxipotent: top power changes sign over the region (min {min:.3e}, max {max:.3e})")]
    NotMaxipotent { min: f64, max: f64 },
    #[error("region {0:?} carries no boundary hypersurfaces")]
    NoBoundary(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
}

/// An exact form together with a chosen primitive: `sigma = d(alpha)`,
/// validated with exact rational equality at construction.
#[derive(Clone)]
pub struct ExactFormWitness {
    sigma: PolyForm,
    alpha: PolyForm,
}

impl ExactFormWitness {
    pub fn new(alpha: PolyForm, sigma: PolyForm) -> Result<Self, HelicityError> {
        if alpha.exterior_derivative() != sigma {
            return Err(HelicityError::NotExact);
        }
        Ok(ExactFormWitness { sigma, alpha })
    }

    /// Witness for `d(alpha)` with `alpha` as the primitive.
    pub fn from_primitive(alpha: PolyForm) -> Self {
        let sigma = alpha.exterior_derivative();
        ExactFormWitness { sigma, alpha }
    }

    /// The standard pair `(omega_st, lambda)` on `R^{2n}`.
    pub fn standard(n: usize) -> Self {
        ExactFormWitness {
            sigma: crate::forms::omega_standard(n),
            alpha: crate::forms::standard_primitive(n),
        }
    }

    /// Witness for `C * sigma` with primitive `C * alpha`.
    pub fn scaled(&self, c: &BigRational) -> Self {
        ExactFormWitness {
            sigma: self.sigma.scale(c),
            alpha: self.alpha.scale(c),
        }
    }

    pub fn sigma(&self) -> &PolyForm {
        &self.sigma
    }

    pub fn alpha(&self) -> &PolyForm {
        &self.alpha
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    pub fn degree(&self) -> usize {
        self.sigma.degree()
    }
}

/// Wedge order `n` for a degree-`k` form on an `m`-dimensional ambient
/// space; requires `k * n = m` with `n >= 2`.
pub fn wedge_order(m: usize, k: usize) -> Result<usize, HelicityError> {
    if k == 0 || m % k != 0 {
        return Err(HelicityError::BadStructure { m, k });
    }
    let n = m / k;
    if n < 2 {
        return Err(HelicityError::OrderTooSmall(n));
    }
    Ok(n)
}

/// Helicity of the witness on a closed oriented hypersurface: the integral
/// of `alpha ∧ sigma^{∧(n-1)}` where `n = m / k`.
pub fn helicity(
    surface: &Hypersurface,
    witness: &ExactFormWitness,
    spec: &QuadratureSpec,
) -> Result<f64, HelicityError> {
    let m = surface.ambient_dim();
    if witness.dim() != m {
        return Err(GeometryError::DimensionMismatch {
            left: witness.dim(),
            right: m,
        }
        .into());
    }
    let n = wedge_order(m, witness.degree())?;
    let integrand = witness.alpha.wedge(&witness.sigma.wedge_power(n - 1)?)?;
    Ok(integrate_over_hypersurface(&integrand, surface, spec)?)
}

/// Deviation between helicities computed from two primitives of the same
/// form. Exactly zero when the primitives coincide; otherwise quadrature
/// residual only.
pub fn primitive_independence(
    surface: &Hypersurface,
    sigma: &PolyForm,
    alpha1: &PolyForm,
    alpha2: &PolyForm,
    spec: &QuadratureSpec,
) -> Result<f64, HelicityError> {
    let w1 = ExactFormWitness::new(alpha1.clone(), sigma.clone())?;
    let w2 = ExactFormWitness::new(alpha2.clone(), sigma.clone())?;
    if alpha1 == alpha2 {
        return Ok(0.0);
    }
    let h1 = helicity(surface, &w1, spec)?;
    let h2 = helicity(surface, &w2, spec)?;
    Ok((h1 - h2).abs())
}

/// Both sides of Stokes' theorem for helicity on a compact region: the
/// volume integral of `sigma^{∧n}` against the region orientation versus
/// the sum of boundary helicities with induced orientations.
#[derive(Clone, Debug, Serialize)]
pub struct StokesCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub boundary_terms: Vec<(String, f64)>,
}

pub fn stokes_check(
    region: &Region,
    witness: &ExactFormWitness,
    spec: &QuadratureSpec,
) -> Result<StokesCheck, HelicityError> {
    let m = region.ambient_dim();
    if witness.dim() != m {
        return Err(GeometryError::DimensionMismatch {
            left: witness.dim(),
            right: m,
        }
        .into());
    }
    if region.boundary.is_empty() {
        return Err(HelicityError::NoBoundary(region.label.clone()));
    }
    let n = wedge_order(m, witness.degree())?;
    let top = witness.sigma.wedge_power(n)?;
    let lhs = integrate_over_region(&top, region, spec)?;
    let mut boundary_terms = Vec::new();
    let mut rhs = 0.0;
    for component in &region.boundary {
        let h = helicity(component, witness, spec)?;
        rhs += h;
        boundary_terms.push((component.label.clone(), h));
    }
    Ok(StokesCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        boundary_terms,
    })
}

/// Sign of a maxipotent form's top power over the region, sampled at all
/// volume quadrature nodes. Errors if a sign change (or an exact zero) is
/// detected.
pub fn maxipotent_sign(
    region: &Region,
    sigma: &PolyForm,
    spec: &QuadratureSpec,
) -> Result<f64, HelicityError> {
    let m = region.ambient_dim();
    let n = wedge_order(m, sigma.degree())?;
    let top = sigma.wedge_power(n)?;
    // top form has a single coefficient polynomial on dx_1 ∧ … ∧ dx_m
    let compiled = top.compile();
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for_each_region_node(region, spec, |point| {
        let mut value = 0.0;
        for term in &compiled.terms {
            for (exps, c) in &term.poly {
                let mut v = *c;
                for (i, &e) in exps.iter().enumerate() {
                    for _ in 0..e {
                        v *= point[i];
                    }
                }
                value += v;
            }
        }
        min = min.min(value);
        max = max.max(value);
    });
    if min > 0.0 {
        Ok(1.0)
    } else if max < 0.0 {
        Ok(-1.0)
    } else {
        Err(HelicityError::NotMaxipotent { min, max })
    }
}

/// One boundary component of a helicity profile.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ProfileComponent {
    pub label: String,
    pub h: f64,
}

/// Boundary helicities of a compact region with a maxipotent exact form,
/// with respect to the orientation the form induces. The sign partition
/// (positive / negative / zero components) is derived on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct HelicityProfile {
    pub k: usize,
    pub n: usize,
    pub components: Vec<ProfileComponent>,
}

impl HelicityProfile {
    pub fn new(
        k: usize,
        n: usize,
        components: Vec<ProfileComponent>,
    ) -> Result<Self, HelicityError> {
        if n < 2 {
            return Err(HelicityError::OrderTooSmall(n));
        }
        Ok(HelicityProfile { k, n, components })
    }

    /// Convenience constructor for synthetic profiles (k = 2, generated
    /// labels).
    pub fn synthetic(n: usize, values: &[f64]) -> Result<Self, HelicityError> {
        let components = values
            .iter()
            .enumerate()
            .map(|(i, &h)| ProfileComponent {
                label: format!("c{i}"),
                h,
            })
            .collect();
        HelicityProfile::new(2, n, components)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.h).collect()
    }

    pub fn total(&self) -> f64 {
        self.components.iter().map(|c| c.h).sum()
    }

    /// Indices with strictly positive helicity.
    pub fn positive(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&i| self.components[i].h > 0.0)
            .collect()
    }

    /// Indices with strictly negative helicity.
    pub fn negative(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&i| self.components[i].h < 0.0)
            .collect()
    }

    /// Indices with exactly zero helicity.
    pub fn zero(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&i| self.components[i].h == 0.0)
            .collect()
    }

    pub fn negative_total(&self) -> f64 {
        self.components
            .iter()
            .filter(|c| c.h < 0.0)
            .map(|c| c.h)
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ProfileRepr::from(self)).expect("profile serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, HelicityError> {
        let repr: ProfileRepr = serde_json::from_str(s)
            .map_err(|e| HelicityError::InvalidProfile(format!("JSON parse error: {e}")))?;
        repr.try_into()
    }
}

/// Interchange representation: `{k, n, components: [{label, h}]}`. The `k`
/// field defaults to 2 for hand-written profiles.
#[derive(Serialize, Deserialize)]
pub struct ProfileRepr {
    #[serde(default = "default_k")]
    pub k: usize,
    pub n: usize,
    pub components: Vec<ProfileComponent>,
}

fn default_k() -> usize {
    2
}

impl From<&HelicityProfile> for ProfileRepr {
    fn from(p: &HelicityProfile) -> Self {
        ProfileRepr {
            k: p.k,
            n: p.n,
            components: p.components.clone(),
        }
    }
}

impl TryFrom<ProfileRepr> for HelicityProfile {
    type Error = HelicityError;

    fn try_from(repr: ProfileRepr) -> Result<Self, HelicityError> {
        HelicityProfile::new(repr.k, repr.n, repr.components)
    }
}

/// Boundary helicity profile of a compact region with respect to the
/// orientation induced by the (maxipotent) form.
pub fn boundary_profile(
    region: &Region,
    witness: &ExactFormWitness,
    spec: &QuadratureSpec,
) -> Result<HelicityProfile, HelicityError> {
    let m = region.ambient_dim();
    let k = witness.degree();
    let n = wedge_order(m, k)?;
    if region.boundary.is_empty() {
        return Err(HelicityError::NoBoundary(region.label.clone()));
    }
    let sign = maxipotent_sign(region, &witness.sigma, spec)?;
    let mut components = Vec::new();
    for surf in &region.boundary {
        let h = helicity(surf, witness, spec)?;
        components.push(ProfileComponent {
            label: surf.label.clone(),
            h: sign * h,
        });
    }
    HelicityProfile::new(k, n, components)
}

/// Scaling law: helicity of `C * sigma` against `C^n` times the helicity of
/// `sigma`, sharing quadrature nodes.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingCheck {
    pub scaled: f64,
    pub predicted: f64,
    pub residual: f64,
}

pub fn scaling_check(
    surface: &Hypersurface,
    witness: &ExactFormWitness,
    c: &BigRational,
    spec: &QuadratureSpec,
) -> Result<ScalingCheck, HelicityError> {
    let n = wedge_order(surface.ambient_dim(), witness.degree())?;
    let base = helicity(surface, witness, spec)?;
    let scaled = helicity(surface, &witness.scaled(c), spec)?;
    let c_f64 = crate::forms::rational_to_f64(c);
    let predicted = c_f64.powi(n as i32) * base;
    Ok(ScalingCheck {
        scaled,
        predicted,
        residual: (scaled - predicted).abs(),
    })
}
