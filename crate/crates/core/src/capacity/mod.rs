//! Rule-based certified intervals for embedding capacities and Gromov
//! width on a catalog of model symplectic domains.
//!
//! Capacities of catalog domains are generally not known exactly; every
//! value is therefore reported as a [`Bound`] interval whose endpoints
//! carry derivation chains. Lower bounds come from explicit inclusions
//! (rescale-and-translate), upper bounds from volume monotonicity and from
//! the non-squeezing obstruction applied through inscribed balls and
//! enclosing cylinders. Non-squeezing itself enters as an axiom-level
//! external fact; it is applied, never re-derived.
//!
//! Conventions: `Ball(r)` is the Euclidean-radius-`r` ball and
//! `(B, a·ω_st)` is isomorphic to the radius-`sqrt(a)` ball, so capacity
//! values are "radius squared" numbers; `Ellipsoid(a_1..a_n)` uses the
//! disc widths `a_i` (the ball of radius r is the ellipsoid with all
//! widths `pi r^2`).

pub mod counterexample;

use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CapacityError {
    #[error("dimension mismatch: domain lives in R^{left} but target in R^{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid model domain: {0}")]
    InvalidDomain(String),
    #[error(
        "rule base inconsistency: lower bound {lower} (via {lower_chain}) exceeds upper bound \
         {upper} (via {upper_chain})"
    )]
    InconsistentBound {
        lower: f64,
        upper: f64,
        lower_chain: String,
        upper_chain: String,
    },
}

/// Axiom-level facts the evaluator may apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RuleId {
    /// Explicit rescale-and-translate inclusion between catalog domains.
    Inclusion,
    /// Gromov's non-squeezing obstruction (external theorem).
    NonSqueeze,
    /// Volume monotonicity of form-preserving embeddings.
    Volume,
    /// Conformality of the ambient scaling action.
    Scaling,
    /// Monotonicity chaining through an intermediate domain.
    Compose,
}

/// Provenance class of a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    ExternalTheorem,
    Geometry,
    Arithmetic,
}

pub fn rule_provenance(rule: RuleId) -> Provenance {
    match rule {
        RuleId::NonSqueeze => Provenance::ExternalTheorem,
        RuleId::Inclusion | RuleId::Volume => Provenance::Geometry,
        RuleId::Scaling | RuleId::Compose => Provenance::Arithmetic,
    }
}

/// An axiom-level fact of the rule base.
#[derive(Clone, Debug, Serialize)]
pub struct RuleFact {
    pub rule: RuleId,
    pub statement: &'static str,
    pub provenance: Provenance,
}

/// The immutable rule base behind every emitted [`Bound`].
pub fn rule_base() -> Vec<RuleFact> {
    [
        (
            RuleId::Inclusion,
            "if a translate of sqrt(u) * M lies in M', then (M, u*omega) embeds in M'",
        ),
        (
            RuleId::NonSqueeze,
            "a ball of width u embeds in a cylinder of width s^2 only if u <= s^2",
        ),
        (
            RuleId::Volume,
            "a form-preserving embedding of (M, u*omega) in M' forces u^n vol(M) <= vol(M')",
        ),
        (
            RuleId::Scaling,
            "c_{(M, s*omega)}((M', s'*omega)) = (s'/s) * c_M(M')",
        ),
        (
            RuleId::Compose,
            "an embedding restricts to any included subdomain",
        ),
    ]
    .into_iter()
    .map(|(rule, statement)| RuleFact {
        rule,
        statement,
        provenance: rule_provenance(rule),
    })
    .collect()
}

/// One application of a rule inside a derivation chain.
#[derive(Clone, Debug, Serialize)]
pub struct RuleApp {
    pub rule: RuleId,
    pub note: String,
}

impl RuleApp {
    fn new(rule: RuleId, note: impl Into<String>) -> Self {
        RuleApp {
            rule,
            note: note.into(),
        }
    }
}

/// Certified interval with derivation chains. Missing sides default to
/// `0` and `+inf`.
#[derive(Clone, Debug, Serialize)]
pub struct Bound {
    pub lower: f64,
    pub upper: f64,
    pub lower_chain: Vec<RuleApp>,
    pub upper_chain: Vec<RuleApp>,
}

impl Bound {
    fn validated(mut self) -> Result<Bound, CapacityError> {
        if self.lower.is_finite() && self.upper.is_finite() && self.lower > self.upper {
            // mathematically tied routes may disagree by rounding; weaken the
            // lower claim rather than report a rounding tie as inconsistency
            if self.lower - self.upper <= 1e-9 * (1.0 + self.upper.abs()) {
                self.lower = self.upper;
            } else {
                return Err(CapacityError::InconsistentBound {
                    lower: self.lower,
                    upper: self.upper,
                    lower_chain: format_chain(&self.lower_chain),
                    upper_chain: format_chain(&self.upper_chain),
                });
            }
        }
        Ok(self)
    }

    fn scaled(mut self, factor: f64) -> Bound {
        if factor != 1.0 {
            self.lower *= factor;
            self.upper *= factor;
            let note = format!("conformal factor {factor}");
            self.lower_chain.push(RuleApp::new(RuleId::Scaling, note.clone()));
            self.upper_chain.push(RuleApp::new(RuleId::Scaling, note));
        }
        self
    }
}

fn format_chain(chain: &[RuleApp]) -> String {
    chain
        .iter()
        .map(|a| format!("{:?}({})", a.rule, a.note))
        .collect::<Vec<_>>()
        .join(" -> ")
}

/// Catalog shapes, all carrying the standard form.
#[derive(Clone, Debug, PartialEq)]
pub enum DomainKind {
    Ball { radius: f64 },
    Cylinder,
    Shell { r_in: f64, r_out: f64 },
    Ellipsoid { widths: Vec<f64> },
}

/// A model domain in `R^{2n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelDomain {
    pub kind: DomainKind,
    pub n: usize,
}

impl ModelDomain {
    pub fn ball(n: usize, radius: f64) -> Result<Self, CapacityError> {
        if !(radius > 0.0) {
            return Err(CapacityError::InvalidDomain(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        Ok(ModelDomain {
            kind: DomainKind::Ball { radius },
            n,
        })
    }

    pub fn cylinder(n: usize) -> Result<Self, CapacityError> {
        if n < 2 {
            return Err(CapacityError::InvalidDomain(
                "cylinder requires n >= 2".into(),
            ));
        }
        Ok(ModelDomain {
            kind: DomainKind::Cylinder,
            n,
        })
    }

    pub fn shell(n: usize, r_in: f64, r_out: f64) -> Result<Self, CapacityError> {
        if !(r_in > 0.0) || !(r_out > r_in) {
            return Err(CapacityError::InvalidDomain(format!(
                "shell radii must satisfy 0 < r < R, got {r_in}, {r_out}"
            )));
        }
        Ok(ModelDomain {
            kind: DomainKind::Shell { r_in, r_out },
            n,
        })
    }

    /// Widths are sorted ascending on construction.
    pub fn ellipsoid(widths: &[f64]) -> Result<Self, CapacityError> {
        if widths.is_empty() || widths.iter().any(|&a| !(a > 0.0)) {
            return Err(CapacityError::InvalidDomain(format!(
                "ellipsoid widths must be positive, got {widths:?}"
            )));
        }
        let mut w = widths.to_vec();
        w.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(ModelDomain {
            kind: DomainKind::Ellipsoid { widths: w.clone() },
            n: w.len(),
        })
    }

    pub fn label(&self) -> String {
        match &self.kind {
            DomainKind::Ball { radius } => format!("ball({radius})"),
            DomainKind::Cylinder => "cylinder".into(),
            DomainKind::Shell { r_in, r_out } => format!("shell({r_in},{r_out})"),
            DomainKind::Ellipsoid { widths } => format!("ellipsoid{widths:?}"),
        }
    }

    /// Total form volume, i.e. the integral of `omega^n`.
    pub fn volume(&self) -> f64 {
        let n = self.n as i32;
        match &self.kind {
            DomainKind::Ball { radius } => PI.powi(n) * radius.powi(2 * n),
            DomainKind::Cylinder => f64::INFINITY,
            DomainKind::Shell { r_in, r_out } => {
                PI.powi(n) * (r_out.powi(2 * n) - r_in.powi(2 * n))
            }
            DomainKind::Ellipsoid { widths } => widths.iter().product(),
        }
    }

    /// Largest `u` with a translate of the radius-`sqrt(u)` ball inside
    /// the domain.
    fn inscribed_ball(&self) -> f64 {
        match &self.kind {
            DomainKind::Ball { radius } => radius * radius,
            DomainKind::Cylinder => 1.0,
            DomainKind::Shell { r_in, r_out } => {
                let g = 0.5 * (r_out - r_in);
                g * g
            }
            DomainKind::Ellipsoid { widths } => widths[0] / PI,
        }
    }

    /// Smallest `s^2` with the domain inside a cylinder of radius `s` over
    /// some symplectic coordinate plane (infinite when none exists).
    fn enclosing_cylinder(&self) -> f64 {
        match &self.kind {
            DomainKind::Ball { radius } => radius * radius,
            DomainKind::Cylinder => 1.0,
            DomainKind::Shell { r_out, .. } => r_out * r_out,
            DomainKind::Ellipsoid { widths } => widths[0] / PI,
        }
    }

    /// Radius^2 of the smallest enclosing Euclidean ball (infinite for the
    /// cylinder).
    fn enclosing_ball(&self) -> f64 {
        match &self.kind {
            DomainKind::Ball { radius } => radius * radius,
            DomainKind::Cylinder => f64::INFINITY,
            DomainKind::Shell { r_out, .. } => r_out * r_out,
            DomainKind::Ellipsoid { widths } => widths[widths.len() - 1] / PI,
        }
    }
}

/// A model domain with a conformal scale: the object `(M, scale * omega)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledDomain {
    pub domain: ModelDomain,
    pub scale: f64,
}

impl ScaledDomain {
    pub fn new(domain: ModelDomain, scale: f64) -> Result<Self, CapacityError> {
        if !(scale > 0.0) {
            return Err(CapacityError::InvalidDomain(format!(
                "conformal scale must be positive, got {scale}"
            )));
        }
        Ok(ScaledDomain { domain, scale })
    }

    pub fn unit(domain: ModelDomain) -> Self {
        ScaledDomain { domain, scale: 1.0 }
    }
}

/// Supremum of `u > 0` such that a translate of `sqrt(u) * domain` is
/// contained in `target` (0 when none exists). Sound but not necessarily
/// sharp; this is the Inclusion rule.
fn inclusion_sup(domain: &ModelDomain, target: &ModelDomain) -> f64 {
    use DomainKind::*;
    let direct = match (&domain.kind, &target.kind) {
        (Ball { radius: r }, Ball { radius: p }) => (p / r) * (p / r),
        (Ball { radius: r }, Cylinder) => 1.0 / (r * r),
        (Ball { radius: r }, Shell { r_in, r_out }) => {
            let g = 0.5 * (r_out - r_in);
            (g / r) * (g / r)
        }
        (Ball { radius: r }, Ellipsoid { widths }) => widths[0] / PI / (r * r),
        (Cylinder, Cylinder) => 1.0,
        (Cylinder, _) => 0.0,
        (Shell { r_out, .. }, Ball { radius: p }) => (p / r_out) * (p / r_out),
        (Shell { r_out, .. }, Cylinder) => 1.0 / (r_out * r_out),
        (
            Shell { r_in: a, r_out: b },
            Shell {
                r_in: a2,
                r_out: b2,
            },
        ) => {
            // concentric: need u*b <= b2 and u*a >= a2 simultaneously
            let hi = (b2 / b) * (b2 / b);
            let lo = (a2 / a) * (a2 / a);
            if lo <= hi {
                hi
            } else {
                0.0
            }
        }
        (Shell { r_out, .. }, Ellipsoid { widths }) => widths[0] / PI / (r_out * r_out),
        (Ellipsoid { widths }, Ball { radius: p }) => {
            PI * p * p / widths[widths.len() - 1]
        }
        (Ellipsoid { widths }, Cylinder) => PI / widths[0],
        (Ellipsoid { widths: a }, Ellipsoid { widths: b }) => a
            .iter()
            .zip(b)
            .map(|(x, y)| y / x)
            .fold(f64::INFINITY, f64::min),
        (Ellipsoid { .. }, Shell { .. }) => 0.0,
    };
    // generic route: enclosing ball of the domain into an inscribed ball of
    // the target
    let enclosing = domain.enclosing_ball();
    let via_ball = if enclosing.is_finite() {
        target.inscribed_ball() / enclosing
    } else {
        0.0
    };
    direct.max(via_ball)
}

/// Certified bounds for the embedding capacity of `base` evaluated on
/// `target`.
pub fn embedding_capacity_bounds(
    base: &ScaledDomain,
    target: &ScaledDomain,
) -> Result<Bound, CapacityError> {
    if base.domain.n != target.domain.n {
        return Err(CapacityError::DimensionMismatch {
            left: 2 * base.domain.n,
            right: 2 * target.domain.n,
        });
    }
    let m = &base.domain;
    let t = &target.domain;
    let n = m.n;

    // lower: inclusion rule
    let lower = inclusion_sup(m, t);
    let lower_chain = if lower > 0.0 {
        vec![RuleApp::new(
            RuleId::Inclusion,
            format!("sqrt(u)*{} fits in {}", m.label(), t.label()),
        )]
    } else {
        Vec::new()
    };

    // upper candidates
    let mut upper = f64::INFINITY;
    let mut upper_chain: Vec<RuleApp> = Vec::new();

    let vol_m = m.volume();
    let vol_t = t.volume();
    if vol_t.is_finite() {
        let (candidate, note) = if vol_m.is_finite() {
            (
                (vol_t / vol_m).powf(1.0 / n as f64),
                format!("u^n vol({}) <= vol({})", m.label(), t.label()),
            )
        } else {
            (
                0.0,
                format!("infinite-volume {} cannot embed in {}", m.label(), t.label()),
            )
        };
        if candidate < upper {
            upper = candidate;
            upper_chain = vec![RuleApp::new(RuleId::Volume, note)];
        }
    }

    let inner = m.inscribed_ball();
    let outer_cyl = t.enclosing_cylinder();
    if outer_cyl.is_finite() {
        let candidate = outer_cyl / inner;
        if candidate < upper {
            upper = candidate;
            upper_chain = vec![
                RuleApp::new(
                    RuleId::Inclusion,
                    format!("ball of width {inner} inside {}", m.label()),
                ),
                RuleApp::new(
                    RuleId::Compose,
                    "restrict the embedding to the inscribed ball".to_string(),
                ),
                RuleApp::new(
                    RuleId::NonSqueeze,
                    format!("{} sits inside a cylinder of width {outer_cyl}", t.label()),
                ),
            ];
        }
    }

    let factor = target.scale / base.scale;
    Bound {
        lower,
        upper,
        lower_chain,
        upper_chain,
    }
    .scaled(factor)
    .validated()
}

/// Gromov width bounds: the embedding capacity of the unit ball.
pub fn gromov_width_bounds(target: &ScaledDomain) -> Result<Bound, CapacityError> {
    let ball = ScaledDomain::unit(ModelDomain::ball(target.domain.n, 1.0)?);
    embedding_capacity_bounds(&ball, target)
}

/// Bounds for `max(c_base, w)` applied to `target` (componentwise max).
pub fn cbar_bounds(base: &ScaledDomain, target: &ScaledDomain) -> Result<Bound, CapacityError> {
    let c = embedding_capacity_bounds(base, target)?;
    let w = gromov_width_bounds(target)?;
    let (lower, lower_chain) = if c.lower >= w.lower {
        (c.lower, c.lower_chain)
    } else {
        (w.lower, w.lower_chain)
    };
    let (upper, upper_chain) = if c.upper >= w.upper {
        (c.upper, c.upper_chain)
    } else {
        (w.upper, w.upper_chain)
    };
    Bound {
        lower,
        upper,
        lower_chain,
        upper_chain,
    }
    .validated()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormalizationVerdict {
    /// Upper bound of `c_base(Z) <= 1`.
    Normalized,
    /// Lower bound of `c_base(Z) > 1`.
    NotNormalized,
    /// The interval straddles 1.
    Inconclusive,
}

/// Whether `max(c_base, w)` is a normalized capacity, decided from the
/// bound on `c_base(Z)`.
pub fn normalization_check(base: &ScaledDomain) -> Result<NormalizationVerdict, CapacityError> {
    let z = ScaledDomain::unit(ModelDomain::cylinder(base.domain.n)?);
    let bound = embedding_capacity_bounds(base, &z)?;
    Ok(if bound.upper <= 1.0 {
        NormalizationVerdict::Normalized
    } else if bound.lower > 1.0 {
        NormalizationVerdict::NotNormalized
    } else {
        NormalizationVerdict::Inconclusive
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThinnessVerdict {
    /// `w(M) * c_M(Z) < 1` certified.
    Holds,
    /// `w(M) * c_M(Z) >= 1` certified.
    Fails,
    Inconclusive,
}

/// Interval test of the product `w(M) * c_M(Z)` against 1.
pub fn thinness_check(domain: &ScaledDomain) -> Result<ThinnessVerdict, CapacityError> {
    let z = ScaledDomain::unit(ModelDomain::cylinder(domain.domain.n)?);
    let w = gromov_width_bounds(domain)?;
    let c = embedding_capacity_bounds(domain, &z)?;
    Ok(if w.upper * c.upper < 1.0 {
        ThinnessVerdict::Holds
    } else if w.lower * c.lower >= 1.0 {
        ThinnessVerdict::Fails
    } else {
        ThinnessVerdict::Inconclusive
    })
}

/// A reference catalog of model domains in `R^{2n}`.
pub fn standard_catalog(n: usize) -> Vec<ModelDomain> {
    let mut list = vec![
        ModelDomain::ball(n, 0.5).unwrap(),
        ModelDomain::ball(n, 1.0).unwrap(),
        ModelDomain::ball(n, 2.0).unwrap(),
        ModelDomain::cylinder(n).unwrap(),
        ModelDomain::shell(n, 1.0, 2.0).unwrap(),
        ModelDomain::shell(n, 1.0, 1.1).unwrap(),
        ModelDomain::shell(n, 0.5, 3.0).unwrap(),
    ];
    let widths: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    list.push(ModelDomain::ellipsoid(&widths).unwrap());
    let widths: Vec<f64> = (1..=n).map(|i| 0.5 + i as f64).collect();
    list.push(ModelDomain::ellipsoid(&widths).unwrap());
    list.push(ModelDomain::ellipsoid(&vec![PI; n]).unwrap());
    list
}

/// Largest conformality violation of an evaluator over the catalog and the
/// given scale set: bounds of `(A, a*omega)` must equal `a` times the
/// bounds of `A` exactly.
pub fn conformality_check(
    base: &ScaledDomain,
    domains: &[ModelDomain],
    scales: &[f64],
) -> Result<f64, CapacityError> {
    let mut worst = 0.0f64;
    for d in domains {
        if d.n != base.domain.n {
            continue;
        }
        let plain = embedding_capacity_bounds(base, &ScaledDomain::unit(d.clone()))?;
        for &a in scales {
            let scaled = embedding_capacity_bounds(base, &ScaledDomain::new(d.clone(), a)?)?;
            let dl = (scaled.lower - a * plain.lower).abs();
            let du = if plain.upper.is_finite() {
                (scaled.upper - a * plain.upper).abs()
            } else {
                if scaled.upper.is_finite() {
                    f64::INFINITY
                } else {
                    0.0
                }
            };
            worst = worst.max(dl).max(du);
        }
    }
    Ok(worst)
}

/// Monotonicity over catalog inclusions: whenever `A` includes into `B` at
/// unit scale, the lower bound of `c(A)` must not exceed the upper bound of
/// `c(B)`. Returns the largest violation (0 when none).
pub fn monotonicity_check(
    base: &ScaledDomain,
    domains: &[ModelDomain],
) -> Result<f64, CapacityError> {
    let mut worst = 0.0f64;
    for a in domains {
        for b in domains {
            if a.n != base.domain.n || b.n != base.domain.n {
                continue;
            }
            if inclusion_sup(a, b) < 1.0 {
                continue; // no known unit-scale morphism
            }
            let ca = embedding_capacity_bounds(base, &ScaledDomain::unit(a.clone()))?;
            let cb = embedding_capacity_bounds(base, &ScaledDomain::unit(b.clone()))?;
            if ca.lower > cb.upper {
                worst = worst.max(ca.lower - cb.upper);
            }
        }
    }
    Ok(worst)
}

/// Pairwise rule-base consistency: every bound over the catalog product
/// must satisfy `lower <= upper` (the constructor turns violations into
/// errors naming both chains).
pub fn consistency_check(domains: &[ModelDomain]) -> Result<usize, CapacityError> {
    let mut checked = 0;
    for a in domains {
        for b in domains {
            if a.n != b.n {
                continue;
            }
            embedding_capacity_bounds(&ScaledDomain::unit(a.clone()), &ScaledDomain::unit(b.clone()))?;
            checked += 1;
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(n: usize, r: f64) -> ScaledDomain {
        ScaledDomain::unit(ModelDomain::ball(n, r).unwrap())
    }

    fn cyl(n: usize) -> ScaledDomain {
        ScaledDomain::unit(ModelDomain::cylinder(n).unwrap())
    }

    #[test]
    fn unit_ball_into_itself() {
        let b = ball(2, 1.0);
        let bound = embedding_capacity_bounds(&b, &b).unwrap();
        assert_eq!(bound.lower, 1.0);
        assert_eq!(bound.upper, 1.0);
    }

    #[test]
    fn nonsqueezing_anchor() {
        let bound = embedding_capacity_bounds(&ball(2, 1.0), &cyl(2)).unwrap();
        assert_eq!((bound.lower, bound.upper), (1.0, 1.0));
        assert!(bound
            .upper_chain
            .iter()
            .any(|a| a.rule == RuleId::NonSqueeze));
    }

    #[test]
    fn ball_into_ball_scaling() {
        for r in [0.5, 1.0, 2.0, 3.5] {
            let bound = embedding_capacity_bounds(&ball(2, 1.0), &ball(2, r)).unwrap();
            assert!((bound.lower - r * r).abs() < 1e-12);
            assert!((bound.upper - r * r).abs() < 1e-12);
        }
    }

    #[test]
    fn gromov_width_of_ball_and_cylinder() {
        let w = gromov_width_bounds(&ball(2, 1.0)).unwrap();
        assert_eq!((w.lower, w.upper), (1.0, 1.0));
        let w = gromov_width_bounds(&cyl(2)).unwrap();
        assert_eq!((w.lower, w.upper), (1.0, 1.0));
    }

    #[test]
    fn gromov_width_of_thin_shell() {
        let shell = ScaledDomain::unit(ModelDomain::shell(2, 1.0, 1.1).unwrap());
        let w = gromov_width_bounds(&shell).unwrap();
        assert!((w.lower - 0.0025).abs() < 1e-12, "lower {}", w.lower);
        let vol_upper = (1.1f64.powi(4) - 1.0).sqrt();
        assert!(w.upper <= 1.21f64.min(vol_upper) + 1e-12, "upper {}", w.upper);
    }

    #[test]
    fn ellipsoid_width_comes_from_smallest_disc() {
        // w(E(1, 2)): ball of width u fits iff u <= 1/pi * pi = ... width
        // a_1 / pi * pi = a_1; enclosing cylinder gives the same, so [a1, a1]
        let e = ScaledDomain::unit(ModelDomain::ellipsoid(&[1.0, 2.0]).unwrap());
        let w = gromov_width_bounds(&e).unwrap();
        assert!((w.lower - 1.0 / PI).abs() < 1e-12);
        assert!((w.upper - 1.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn cylinder_domain_cannot_embed_in_compact_targets() {
        let bound = embedding_capacity_bounds(&cyl(2), &ball(2, 1.0)).unwrap();
        assert_eq!((bound.lower, bound.upper), (0.0, 0.0));
        let bound = embedding_capacity_bounds(&cyl(2), &cyl(2)).unwrap();
        assert_eq!((bound.lower, bound.upper), (1.0, 1.0));
    }

    #[test]
    fn volume_rule_never_applied_to_cylinder_target() {
        let bound = embedding_capacity_bounds(&ball(2, 1.0), &cyl(2)).unwrap();
        assert!(bound.upper_chain.iter().all(|a| a.rule != RuleId::Volume));
    }

    #[test]
    fn conformality_is_exact() {
        let catalog = standard_catalog(2);
        let scales = [0.25, 0.5, 1.0, 2.0, 4.0];
        for base in [ball(2, 1.0), ball(2, 2.0), cyl(2)] {
            let worst = conformality_check(&base, &catalog, &scales).unwrap();
            assert_eq!(worst, 0.0);
        }
        // base-side conformality: (B, 2ω) halves both bounds
        let b2 = ScaledDomain::new(ModelDomain::ball(2, 1.0).unwrap(), 2.0).unwrap();
        let plain = embedding_capacity_bounds(&ball(2, 1.0), &ball(2, 1.5)).unwrap();
        let scaled = embedding_capacity_bounds(&b2, &ball(2, 1.5)).unwrap();
        assert_eq!(scaled.lower, 0.5 * plain.lower);
        assert_eq!(scaled.upper, 0.5 * plain.upper);
    }

    #[test]
    fn monotonicity_has_no_violations() {
        let catalog = standard_catalog(2);
        for base in [ball(2, 1.0), ball(2, 0.5), cyl(2)] {
            assert_eq!(monotonicity_check(&base, &catalog).unwrap(), 0.0);
        }
    }

    #[test]
    fn catalog_bounds_are_consistent() {
        let checked = consistency_check(&standard_catalog(2)).unwrap();
        assert!(checked >= 100);
        let checked = consistency_check(&standard_catalog(3)).unwrap();
        assert!(checked >= 100);
    }

    #[test]
    fn shell_into_larger_ball_is_ordered() {
        // Shell(1,2) ⊂ Ball(2): monotone bounds
        let w_shell = gromov_width_bounds(&ScaledDomain::unit(
            ModelDomain::shell(2, 1.0, 2.0).unwrap(),
        ))
        .unwrap();
        let w_ball = gromov_width_bounds(&ball(2, 2.0)).unwrap();
        assert!(w_shell.lower <= w_ball.upper);
    }

    #[test]
    fn cbar_dominates_width() {
        let shell = ScaledDomain::unit(ModelDomain::shell(2, 1.0, 2.0).unwrap());
        let targets = standard_catalog(2);
        for t in targets {
            let t = ScaledDomain::unit(t);
            let w = gromov_width_bounds(&t).unwrap();
            let cb = cbar_bounds(&shell, &t).unwrap();
            assert!(cb.lower >= w.lower);
        }
        // base = B, target = B: both arguments are [1, 1]
        let cb = cbar_bounds(&ball(2, 1.0), &ball(2, 1.0)).unwrap();
        assert_eq!((cb.lower, cb.upper), (1.0, 1.0));
        // base = Shell(1,2), target = Z: lower >= w(Z) lower = 1
        let cb = cbar_bounds(&shell, &cyl(2)).unwrap();
        assert!(cb.lower >= 1.0);
    }

    #[test]
    fn normalization_verdicts() {
        assert_eq!(
            normalization_check(&ball(2, 1.0)).unwrap(),
            NormalizationVerdict::Normalized
        );
        // Ball(2): c_{Ball(2)}(Z) = 1/4 <= 1
        assert_eq!(
            normalization_check(&ball(2, 2.0)).unwrap(),
            NormalizationVerdict::Normalized
        );
        // Ball(1/2): c(Z) = 4 > 1
        assert_eq!(
            normalization_check(&ball(2, 0.5)).unwrap(),
            NormalizationVerdict::NotNormalized
        );
        // scale chosen as the exact value of c_base(Z) renormalizes
        let b = ModelDomain::ball(2, 0.5).unwrap();
        let c_z = embedding_capacity_bounds(
            &ScaledDomain::unit(b.clone()),
            &cyl(2),
        )
        .unwrap();
        assert_eq!(c_z.lower, c_z.upper);
        let rescaled = ScaledDomain::new(b, c_z.upper).unwrap();
        assert_eq!(
            normalization_check(&rescaled).unwrap(),
            NormalizationVerdict::Normalized
        );
        let z_bound = embedding_capacity_bounds(&rescaled, &cyl(2)).unwrap();
        assert_eq!(z_bound.upper, 1.0);
    }

    #[test]
    fn thinness_verdicts() {
        assert_eq!(
            thinness_check(&ball(2, 1.0)).unwrap(),
            ThinnessVerdict::Fails
        );
        let shell = ModelDomain::shell(2, 1.0, 1.05).unwrap();
        let v = thinness_check(&ScaledDomain::unit(shell.clone())).unwrap();
        assert!(
            v == ThinnessVerdict::Holds || v == ThinnessVerdict::Inconclusive,
            "{v:?}"
        );
        // verdict is invariant under form scaling
        for a in [0.25, 0.5, 2.0, 4.0] {
            let scaled = ScaledDomain::new(shell.clone(), a).unwrap();
            assert_eq!(thinness_check(&scaled).unwrap(), v);
        }
    }

    #[test]
    fn dimension_mismatch_is_error() {
        assert!(matches!(
            embedding_capacity_bounds(&ball(2, 1.0), &ball(3, 1.0)),
            Err(CapacityError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(ModelDomain::ball(2, 0.0).is_err());
        assert!(ModelDomain::shell(2, 2.0, 1.0).is_err());
        assert!(ModelDomain::ellipsoid(&[]).is_err());
        assert!(ScaledDomain::new(ModelDomain::ball(2, 1.0).unwrap(), -1.0).is_err());
    }

    #[test]
    fn ellipsoid_widths_sorted() {
        let e = ModelDomain::ellipsoid(&[3.0, 1.0, 2.0]).unwrap();
        match e.kind {
            DomainKind::Ellipsoid { widths } => assert_eq!(widths, vec![1.0, 2.0, 3.0]),
            _ => unreachable!(),
        }
    }
}
