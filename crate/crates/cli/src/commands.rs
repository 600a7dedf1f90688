//! Subcommand implementations. Each handler builds a [`Report`]; the
//! binary decides the exit code from the report's checks.

use crate::config::RunConfig;
use crate::report::{Report, ReportBuilder};
use anyhow::{anyhow, bail, Context, Result};
use helicap::capacity::{
    cbar_bounds, counterexample::counterexample_witness, embedding_capacity_bounds,
    gromov_width_bounds, normalization_check, rule_base, standard_catalog, thinness_check, Bound,
    ModelDomain, ScaledDomain,
};
use helicap::geometry::Region;
use helicap::helicity::{
    boundary_profile, stokes_check, ExactFormWitness, HelicityProfile,
};
use helicap::recognition::{
    threshold_c0, threshold_c1, threshold_c2, verify_recognition, verify_separation,
    RecognitionError,
};
use helicap::suites;
use serde_json::json;
use std::path::{Path, PathBuf};

/// Shared region selection flags.
#[derive(Clone, Debug)]
pub struct RegionArgs {
    pub region: String,
    pub dim: usize,
    pub r: Option<f64>,
    pub r_out: Option<f64>,
    pub widths: Option<String>,
}

impl RegionArgs {
    pub fn build(&self) -> Result<Region> {
        let spec = match self.region.as_str() {
            "ball" => format!("ball:{}", self.r.unwrap_or(1.0)),
            "shell" => {
                let r = self.r.ok_or_else(|| anyhow!("shell requires --r"))?;
                let big = self.r_out.ok_or_else(|| anyhow!("shell requires --R"))?;
                format!("shell:{r}:{big}")
            }
            "ellipsoid" => {
                let widths = self
                    .widths
                    .as_ref()
                    .ok_or_else(|| anyhow!("ellipsoid requires --widths a1,a2,.."))?;
                format!("ellipsoid:{}", widths.replace(',', ":"))
            }
            "cylinder" => {
                let r = self.r.unwrap_or(1.0);
                let l = self.r_out.unwrap_or(1.0);
                format!("cylinder:{r}:{l}")
            }
            other => bail!("unknown region {other:?} (expected ball, shell, ellipsoid, cylinder)"),
        };
        Region::from_spec(&spec, self.dim).map_err(|e| anyhow!("{e}"))
    }

    fn echo(&self) -> serde_json::Value {
        json!({
            "region": self.region,
            "dim": self.dim,
            "r": self.r,
            "R": self.r_out,
            "widths": self.widths,
        })
    }
}

fn witness_for(region: &Region) -> Result<ExactFormWitness> {
    let m = region.ambient_dim();
    if m % 2 != 0 || m < 4 {
        bail!("helicity needs an even ambient dimension of at least 4, got {m}");
    }
    Ok(ExactFormWitness::standard(m / 2))
}

/// `helicity compute`: boundary helicity profile of a catalog region with
/// the standard form. The output is the profile interchange JSON.
pub fn cmd_helicity_compute(args: &RegionArgs, config: &RunConfig) -> Result<(HelicityProfile, String)> {
    let region = args.build()?;
    let witness = witness_for(&region)?;
    let profile = boundary_profile(&region, &witness, &config.quadrature())
        .map_err(|e| anyhow!("{e}"))?;
    let text = profile.to_json();
    if let Some(path) = &config.out {
        std::fs::write(path, &text)
            .with_context(|| format!("cannot write profile {}", path.display()))?;
    }
    Ok((profile, text))
}

/// `stokes`: both sides of Stokes' theorem for helicity on a region.
pub fn cmd_stokes(args: &RegionArgs, config: &RunConfig) -> Result<Report> {
    let region = args.build()?;
    let witness = witness_for(&region)?;
    let check = stokes_check(&region, &witness, &config.quadrature()).map_err(|e| anyhow!("{e}"))?;
    let mut rb = ReportBuilder::new("stokes", config);
    rb.inputs(args.echo());
    rb.outputs(&check);
    let tol = config.tolerances.stokes_rel;
    let rel = check.residual / (1.0 + check.lhs.abs());
    rb.check(
        "stokes-residual",
        rel <= tol,
        format!("relative residual {rel:.3e} (tolerance {tol:e})"),
    );
    Ok(rb.finish())
}

/// Load a helicity profile from the interchange JSON with diagnostics.
pub fn load_profile(path: &Path) -> Result<HelicityProfile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read profile {}", path.display()))?;
    HelicityProfile::from_json(&text)
        .map_err(|e| anyhow!("invalid profile {}: {e}", path.display()))
}

pub fn cmd_recognition_c0(path: &Path, config: &RunConfig) -> Result<Report> {
    let profile = load_profile(path)?;
    let h = profile.values();
    let mut rb = ReportBuilder::new("recognition c0", config);
    rb.inputs(json!({"profile": path.display().to_string(), "n": profile.n, "h": h}));
    rb.outputs(json!({
        "c1": threshold_c1(&h, profile.n),
        "c2": threshold_c2(&h, profile.n),
        "c0": threshold_c0(&h, profile.n),
    }));
    Ok(rb.finish())
}

pub fn cmd_recognition_keylemma(path: &Path, config: &RunConfig) -> Result<Report> {
    let profile = load_profile(path)?;
    let report = verify_separation(&profile, config.cap).map_err(|e| anyhow!("{e}"))?;
    let mut rb = ReportBuilder::new("recognition keylemma", config);
    rb.inputs(json!({"profile": path.display().to_string(), "h": profile.values()}));
    rb.outputs(&report);
    rb.check(
        "separation",
        report.pass,
        format!(
            "worst violator {} against c0 {}",
            report.worst_violator_cmax, report.c0
        ),
    );
    Ok(rb.finish())
}

pub fn cmd_recognition_verify(path: &Path, config: &RunConfig) -> Result<Report> {
    let profile = load_profile(path)?;
    let report = map_recognition(verify_recognition(&profile, config.cap))?;
    let mut rb = ReportBuilder::new("recognition verify", config);
    rb.inputs(json!({"profile": path.display().to_string(), "h": profile.values()}));
    rb.outputs(&report);
    rb.check(
        "forced-rescaling",
        report.pass,
        format!("spectrum {:?} forces C = {}", report.spectrum, report.forced_c),
    );
    Ok(rb.finish())
}

pub fn cmd_recognition_spectrum(
    path: &Path,
    csv: Option<&PathBuf>,
    config: &RunConfig,
) -> Result<Report> {
    let profile = load_profile(path)?;
    let report = map_recognition(verify_recognition(&profile, config.cap))?;
    if let Some(csv_path) = csv {
        let rows: Vec<String> = report
            .spectrum
            .iter()
            .map(|(lo, hi)| format!("{lo},{hi}"))
            .collect();
        crate::report::write_csv(csv_path, "lo,hi", &rows)?;
    }
    let mut rb = ReportBuilder::new("recognition spectrum", config);
    rb.inputs(json!({"profile": path.display().to_string()}));
    rb.outputs(&report);
    rb.check("forced-rescaling", report.pass, format!("{:?}", report.spectrum));
    Ok(rb.finish())
}

fn map_recognition<T>(r: Result<T, RecognitionError>) -> Result<T> {
    r.map_err(|e| anyhow!("{e}"))
}

/// Parse a capacity domain spec: `ball:r`, `cylinder`, `shell:r:R`,
/// `ellipsoid:a1:..`, with `n` from the ambient dimension.
pub fn parse_domain(spec: &str, n: usize) -> Result<ModelDomain> {
    let parts: Vec<&str> = spec.split(':').collect();
    let parse = |s: &str| -> Result<f64> {
        s.parse::<f64>()
            .map_err(|_| anyhow!("bad numeric parameter {s:?} in {spec:?}"))
    };
    let domain = match parts.as_slice() {
        ["ball"] => ModelDomain::ball(n, 1.0),
        ["ball", r] => ModelDomain::ball(n, parse(r)?),
        ["cylinder"] => ModelDomain::cylinder(n),
        ["shell", a, b] => ModelDomain::shell(n, parse(a)?, parse(b)?),
        ["ellipsoid", rest @ ..] if !rest.is_empty() => {
            let widths = rest.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
            ModelDomain::ellipsoid(&widths)
        }
        _ => bail!("unrecognized domain spec {spec:?}"),
    };
    domain.map_err(|e| anyhow!("{e}"))
}

fn bound_json(bound: &Bound) -> serde_json::Value {
    let derivation: Vec<String> = bound
        .lower_chain
        .iter()
        .map(|a| format!("lower: {:?}({})", a.rule, a.note))
        .chain(
            bound
                .upper_chain
                .iter()
                .map(|a| format!("upper: {:?}({})", a.rule, a.note)),
        )
        .collect();
    json!({
        "lower": bound.lower,
        "upper": if bound.upper.is_finite() { json!(bound.upper) } else { json!("inf") },
        "derivation": derivation,
    })
}

pub fn cmd_capacity_bounds(
    from: &str,
    to: &str,
    dim: usize,
    from_scale: f64,
    to_scale: f64,
    config: &RunConfig,
) -> Result<Report> {
    if dim % 2 != 0 || dim == 0 {
        bail!("--dim must be a positive even number, got {dim}");
    }
    let n = dim / 2;
    let base = ScaledDomain::new(parse_domain(from, n)?, from_scale).map_err(|e| anyhow!("{e}"))?;
    let target = ScaledDomain::new(parse_domain(to, n)?, to_scale).map_err(|e| anyhow!("{e}"))?;
    let bound = embedding_capacity_bounds(&base, &target).map_err(|e| anyhow!("{e}"))?;
    let width = gromov_width_bounds(&target).map_err(|e| anyhow!("{e}"))?;
    let cbar = cbar_bounds(&base, &target).map_err(|e| anyhow!("{e}"))?;
    let mut rb = ReportBuilder::new("capacity bounds", config);
    rb.inputs(json!({"from": from, "to": to, "dim": dim, "from_scale": from_scale, "to_scale": to_scale}));
    rb.outputs(json!({
        "embedding_capacity": bound_json(&bound),
        "gromov_width": bound_json(&width),
        "cbar": bound_json(&cbar),
    }));
    rb.check(
        "bound-consistency",
        bound.lower <= bound.upper,
        format!("[{}, {}]", bound.lower, bound.upper),
    );
    Ok(rb.finish())
}

pub fn cmd_capacity_axioms(csv: Option<&PathBuf>, config: &RunConfig) -> Result<Report> {
    let axiom = suites::suite_capacity_axioms(config.seed, 1);
    let mut rb = ReportBuilder::new("capacity axioms", config);
    let mut table = Vec::new();
    let mut rows = Vec::new();
    for n in [2usize, 3] {
        for domain in standard_catalog(n) {
            let scaled = ScaledDomain::unit(domain.clone());
            let w = gromov_width_bounds(&scaled).map_err(|e| anyhow!("{e}"))?;
            let norm = normalization_check(&scaled).map_err(|e| anyhow!("{e}"))?;
            let thin = thinness_check(&scaled).map_err(|e| anyhow!("{e}"))?;
            rows.push(format!(
                "{},{},{},{},{:?},{:?}",
                2 * n,
                domain.label(),
                w.lower,
                w.upper,
                norm,
                thin
            ));
            table.push(json!({
                "dim": 2 * n,
                "domain": domain.label(),
                "width": bound_json(&w),
                "normalization": norm,
                "thinness": thin,
            }));
        }
    }
    if let Some(path) = csv {
        crate::report::write_csv(path, "dim,domain,width_lower,width_upper,normalized,thin", &rows)?;
    }
    rb.outputs(json!({"suite": axiom, "rules": rule_base(), "catalog": table}));
    rb.check("capacity-axioms", axiom.pass, axiom.detail.clone());
    Ok(rb.finish())
}

pub fn cmd_capacity_counterexample(config: &RunConfig) -> Result<Report> {
    let report = counterexample_witness();
    let mut rb = ReportBuilder::new("capacity counterexample", config);
    rb.outputs(&report);
    rb.check(
        "linear-flow-symplectic",
        report.symplectic_exact,
        "pullback of the standard form is exact",
    );
    rb.check(
        "segment-covers-puncture",
        report.endpoint_hits_puncture,
        format!("endpoint {:?}", report.segment_endpoint),
    );
    rb.check(
        "grid-inclusion",
        report.grid_violations == 0 && report.grid_points >= 100_000,
        format!(
            "{} grid points, {} violations",
            report.grid_points, report.grid_violations
        ),
    );
    Ok(rb.finish())
}

/// End-to-end pipeline: quadrature-derived shell profile feeding the
/// separation and forced-rescaling verdicts, with the wrap-around
/// bookkeeping `(C^n - 1) |h(inner)|` evaluated at the forced constant.
pub fn cmd_pipeline_shell(r: f64, r_out: f64, n: usize, config: &RunConfig) -> Result<Report> {
    if !(r > 0.0) || !(r_out > r) {
        bail!("pipeline shell requires 0 < r < R, got r = {r}, R = {r_out}");
    }
    if n < 2 {
        bail!("pipeline shell requires n >= 2, got {n}");
    }
    let region = Region::shell(2 * n, r, r_out).map_err(|e| anyhow!("{e}"))?;
    let witness = ExactFormWitness::standard(n);
    let spec = config.quadrature();
    let profile = boundary_profile(&region, &witness, &spec).map_err(|e| anyhow!("{e}"))?;
    let separation = verify_separation(&profile, config.cap).map_err(|e| anyhow!("{e}"))?;
    let recognition = map_recognition(verify_recognition(&profile, config.cap))?;
    let inner = profile
        .components
        .iter()
        .find(|c| c.label == "inner")
        .ok_or_else(|| anyhow!("shell profile lacks an inner component"))?;
    let forced = recognition.forced_c;
    let residual_volume = (forced.powi(n as i32) - 1.0) * inner.h.abs();

    let mut rb = ReportBuilder::new("pipeline shell", config);
    rb.inputs(json!({"r": r, "R": r_out, "n": n}));
    rb.outputs(json!({
        "profile": serde_json::from_str::<serde_json::Value>(&profile.to_json())?,
        "c0": separation.c0,
        "separation": separation,
        "recognition": recognition,
        "forced_c": forced,
        "figure_residual_volume": residual_volume,
    }));
    rb.check(
        "profile-total-positive",
        profile.total() > 0.0,
        format!("total {}", profile.total()),
    );
    rb.check("separation", separation.pass, format!("c0 = {}", separation.c0));
    rb.check(
        "forced-rescaling",
        recognition.pass,
        format!("forced C = {forced}"),
    );
    rb.check(
        "figure-residual-zero",
        residual_volume == 0.0,
        format!("(C^n - 1)|h(inner)| = {residual_volume}"),
    );
    Ok(rb.finish())
}

/// Run the randomized verification suites.
pub fn cmd_suite(count: usize, config: &RunConfig) -> Result<Report> {
    let outcomes = suites::run_all(config.seed, count);
    let mut rb = ReportBuilder::new("suite", config);
    rb.inputs(json!({"seed": config.seed, "count": count}));
    rb.outputs(&outcomes);
    for o in &outcomes {
        rb.check(&o.name, o.pass, format!("{} checks; {}", o.checks, o.detail));
    }
    Ok(rb.finish())
}
