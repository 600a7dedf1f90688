//! Oriented parametrized integration regions in Euclidean space with
//! quadrature-based integration of differential forms.
//!
//! Integration is a tensor-product rule over each chart's parameter box.
//! Node loops are chunked; every chunk is summed with compensated
//! accumulation and chunk totals are combined in index order, so parallel
//! and serial runs agree bit for bit.

mod charts;
mod quadrature;
mod region;

pub use charts::{Chart, ChartRef, DiscBox, HypersphericalSolid, HypersphericalSphere, LinearImage, ToricSolid, ToricSphere};
pub use quadrature::{Axis, AxisKind, AxisRule, Neumaier, QuadratureSpec};
pub use region::{check_full_rank, Hypersurface, Region};

use crate::forms::{CompiledForm, FormError, PolyForm};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("form degree {got} does not match required degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("rank-deficient chart Jacobian at quadrature node {node_index}")]
    RankDeficient { node_index: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

const CHUNK: usize = 4096;

/// Integrate a compiled form over one chart. `gram_check` enables the
/// per-node full-rank test (hypersurfaces); the result does not include any
/// orientation sign.
fn integrate_chart(
    form: &CompiledForm,
    chart: &dyn Chart,
    rules: &[AxisRule],
    gram_check: bool,
    parallel: bool,
) -> Result<f64, GeometryError> {
    let m = chart.ambient_dim();
    let d = rules.len();
    let total: usize = rules.iter().map(|r| r.len()).product();
    if total == 0 {
        return Ok(0.0);
    }
    let nchunks = total.div_ceil(CHUNK);
    let lens: Vec<usize> = rules.iter().map(|r| r.len()).collect();

    let eval_chunk = |ci: usize| -> Result<f64, GeometryError> {
        let start = ci * CHUNK;
        let end = total.min(start + CHUNK);
        let mut digits = vec![0usize; d];
        let mut rem = start;
        for j in (0..d).rev() {
            digits[j] = rem % lens[j];
            rem /= lens[j];
        }
        let mut params = vec![0.0; d];
        let mut point = vec![0.0; m];
        let mut jac = vec![0.0; m * d];
        let mut acc = Neumaier::default();
        for lin in start..end {
            let mut weight = 1.0;
            for j in 0..d {
                params[j] = rules[j].nodes[digits[j]];
                weight *= rules[j].weights[digits[j]];
            }
            chart.eval(&params, &mut point, &mut jac);
            if gram_check && !region_gram_positive(&jac, m, d) {
                return Err(GeometryError::RankDeficient { node_index: lin });
            }
            acc.add(weight * form.evaluate(&point, &jac, d));
            // odometer increment, last axis fastest
            for j in (0..d).rev() {
                digits[j] += 1;
                if digits[j] < lens[j] {
                    break;
                }
                digits[j] = 0;
            }
        }
        Ok(acc.total())
    };

    let chunk_sums: Result<Vec<f64>, GeometryError> = if parallel {
        (0..nchunks).into_par_iter().map(eval_chunk).collect()
    } else {
        (0..nchunks).map(eval_chunk).collect()
    };
    let mut acc = Neumaier::default();
    for s in chunk_sums? {
        acc.add(s);
    }
    Ok(acc.total())
}

use region::gram_positive as region_gram_positive;

/// Integral of a degree-`(m-1)` form over a closed oriented hypersurface.
pub fn integrate_over_hypersurface(
    form: &PolyForm,
    surface: &Hypersurface,
    spec: &QuadratureSpec,
) -> Result<f64, GeometryError> {
    integrate_over_hypersurface_mode(form, surface, spec, true)
}

pub fn integrate_over_hypersurface_mode(
    form: &PolyForm,
    surface: &Hypersurface,
    spec: &QuadratureSpec,
    parallel: bool,
) -> Result<f64, GeometryError> {
    let m = surface.ambient_dim();
    if form.dim() != m {
        return Err(GeometryError::DimensionMismatch {
            left: form.dim(),
            right: m,
        });
    }
    if form.degree() != m - 1 {
        return Err(GeometryError::DegreeMismatch {
            expected: m - 1,
            got: form.degree(),
        });
    }
    let rules: Vec<AxisRule> = surface
        .chart
        .axes()
        .iter()
        .map(|a| spec.rule_for(a, m))
        .collect();
    let compiled = form.compile();
    let raw = integrate_chart(&compiled, surface.chart.as_ref(), &rules, true, parallel)?;
    Ok(raw * surface.effective_sign())
}

/// Integral of a top-degree form over a region with its positive
/// orientation.
pub fn integrate_over_region(
    form: &PolyForm,
    region: &Region,
    spec: &QuadratureSpec,
) -> Result<f64, GeometryError> {
    integrate_over_region_mode(form, region, spec, true)
}

pub fn integrate_over_region_mode(
    form: &PolyForm,
    region: &Region,
    spec: &QuadratureSpec,
    parallel: bool,
) -> Result<f64, GeometryError> {
    let m = region.ambient_dim();
    if form.dim() != m {
        return Err(GeometryError::DimensionMismatch {
            left: form.dim(),
            right: m,
        });
    }
    if form.degree() != m {
        return Err(GeometryError::DegreeMismatch {
            expected: m,
            got: form.degree(),
        });
    }
    let compiled = form.compile();
    let mut acc = Neumaier::default();
    for chart in &region.volume_charts {
        let rules: Vec<AxisRule> = chart.axes().iter().map(|a| spec.rule_for(a, m)).collect();
        let raw = integrate_chart(&compiled, chart.as_ref(), &rules, false, parallel)?;
        acc.add(raw * chart.base_sign());
    }
    Ok(acc.total())
}

/// Visit the ambient image of every volume quadrature node of a region.
pub fn for_each_region_node(
    region: &Region,
    spec: &QuadratureSpec,
    mut visit: impl FnMut(&[f64]),
) {
    let m = region.ambient_dim();
    for chart in &region.volume_charts {
        let rules: Vec<AxisRule> = chart.axes().iter().map(|a| spec.rule_for(a, m)).collect();
        let d = rules.len();
        let lens: Vec<usize> = rules.iter().map(|r| r.len()).collect();
        let total: usize = lens.iter().product();
        let mut params = vec![0.0; d];
        let mut point = vec![0.0; m];
        let mut jac = vec![0.0; m * d];
        let mut digits = vec![0usize; d];
        for _ in 0..total {
            for j in 0..d {
                params[j] = rules[j].nodes[digits[j]];
            }
            chart.eval(&params, &mut point, &mut jac);
            visit(&point);
            for j in (0..d).rev() {
                digits[j] += 1;
                if digits[j] < lens[j] {
                    break;
                }
                digits[j] = 0;
            }
        }
    }
}
