//! Acceptance suite: every criterion below is checked at its stated
//! tolerance and prints one PASS/FAIL line. Run with
//! `cargo test -p helicap-cli --test acceptance -- --nocapture` to see the
//! lines on success.

use helicap::capacity::counterexample::counterexample_witness;
use helicap::capacity::{embedding_capacity_bounds, ModelDomain, ScaledDomain};
use helicap::geometry::{QuadratureSpec, Region};
use helicap::helicity::{helicity, stokes_check, ExactFormWitness};
use helicap::recognition::threshold_c0;
use helicap::suites;
use helicap_cli::commands;
use helicap_cli::config::RunConfig;
use std::f64::consts::PI;
use std::time::Instant;

struct Criterion {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn record(results: &mut Vec<Criterion>, name: &'static str, pass: bool, detail: String) {
    println!(
        "acceptance {name}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    results.push(Criterion { name, pass, detail });
}

const SEED: u64 = 2026;

#[test]
fn acceptance() {
    let mut results = Vec::new();
    let spec = QuadratureSpec::default();

    // 1. helicity of S^3 with the standard form equals pi^2 within 1e-6
    //    relative, in under 5 seconds
    {
        let t0 = Instant::now();
        let ball = Region::ball(4, 1.0).unwrap();
        let h = helicity(&ball.boundary[0], &ExactFormWitness::standard(2), &spec).unwrap();
        let elapsed = t0.elapsed().as_secs_f64();
        let rel = (h - PI * PI).abs() / (PI * PI);
        record(
            &mut results,
            "criterion 1 (S^3 helicity)",
            rel <= 1e-6 && elapsed < 5.0,
            format!("h = {h:.10}, relative error {rel:.2e}, {elapsed:.2}s"),
        );
    }

    // 2. Stokes for helicity: residual <= 1e-6 relative on ball(1),
    //    shell(1,2), shell(1,1.02) in dimensions 4 and 8, plus 20 random
    //    exact maxipotent perturbations; under 2 minutes total
    {
        let t0 = Instant::now();
        let mut worst = 0.0f64;
        let mut all = true;
        let mut detail = String::new();
        for (dim, n) in [(4usize, 2usize), (8, 4)] {
            let regions = [
                Region::ball(dim, 1.0).unwrap(),
                Region::shell(dim, 1.0, 2.0).unwrap(),
                Region::shell(dim, 1.0, 1.02).unwrap(),
            ];
            for region in &regions {
                let chk = stokes_check(region, &ExactFormWitness::standard(n), &spec).unwrap();
                let rel = chk.residual / (1.0 + chk.lhs.abs());
                worst = worst.max(rel);
                if rel > 1e-6 {
                    all = false;
                    detail = format!("dim {dim} {}: residual {rel:.2e}", region.label);
                }
            }
        }
        // 20 random exact maxipotent perturbations on the dim-4 regions
        let perturbed = suites::suite_stokes_helicity(SEED, 20);
        if !perturbed.pass {
            all = false;
            detail = perturbed.detail.clone();
        }
        let elapsed = t0.elapsed().as_secs_f64();
        record(
            &mut results,
            "criterion 2 (Stokes for helicity, dims 4 and 8)",
            all && elapsed < 120.0,
            if all {
                format!("worst relative residual {worst:.2e}; perturbations: {}; {elapsed:.1}s", perturbed.detail)
            } else {
                format!("{detail}; {elapsed:.1}s")
            },
        );
    }

    // 3. scaling law h(C sigma) = C^n h(sigma) to 1e-9 relative for
    //    C in {0.5, 2, 10} on catalog hypersurfaces
    {
        let outcome = suites::suite_scaling_law(SEED, 1);
        record(
            &mut results,
            "criterion 3 (scaling law)",
            outcome.pass,
            outcome.detail,
        );
    }

    // 4. closed-form thresholds match the 1e-6-step grid oracle within
    //    1e-5 on 200 random profiles; the worked profile gives
    //    c0 = 0.866025 +- 1e-6
    {
        let outcome = suites::suite_threshold_oracle(SEED, 200);
        let c0 = threshold_c0(&[2.0, 1.0, -0.5], 2);
        let worked = (c0 - 0.866025).abs() <= 1e-6;
        record(
            &mut results,
            "criterion 4 (threshold oracle)",
            outcome.pass && worked,
            format!("{}; worked profile c0 = {c0:.7}", outcome.detail),
        );
    }

    // 5. separation: on 200 random profiles every non-separating
    //    assignment has max feasible C <= c0 + 1e-9
    {
        let outcome = suites::suite_separation(SEED, 200);
        record(
            &mut results,
            "criterion 5 (separation feasibility)",
            outcome.pass,
            format!("{} assignments checked; {}", outcome.checks, outcome.detail),
        );
    }

    // 6. forced rescaling: on 200 random profiles with negative mass the
    //    spectrum avoids (c0, 1) and contains 1; under 1 minute
    {
        let t0 = Instant::now();
        let outcome = suites::suite_forced_rescaling(SEED, 200);
        let elapsed = t0.elapsed().as_secs_f64();
        record(
            &mut results,
            "criterion 6 (forced rescaling)",
            outcome.pass && elapsed < 60.0,
            format!("{} assignments; {}; {elapsed:.1}s", outcome.checks, outcome.detail),
        );
    }

    // 7. capacity axiom suite: zero monotonicity/conformality violations,
    //    c_B(Z) = [1, 1], and no inconsistent bound over the catalog
    {
        let outcome = suites::suite_capacity_axioms(SEED, 1);
        let b = ScaledDomain::unit(ModelDomain::ball(2, 1.0).unwrap());
        let z = ScaledDomain::unit(ModelDomain::cylinder(2).unwrap());
        let bound = embedding_capacity_bounds(&b, &z).unwrap();
        let anchor = bound.lower == 1.0 && bound.upper == 1.0;
        record(
            &mut results,
            "criterion 7 (capacity axioms)",
            outcome.pass && anchor,
            format!("{}; c_B(Z) = [{}, {}]", outcome.detail, bound.lower, bound.upper),
        );
    }

    // 8. counterexample witness: exactly symplectic linear flow, the slit
    //    endpoint hits the puncture, 1e5-point grid confirms memberships;
    //    under 10 seconds
    {
        let t0 = Instant::now();
        let report = counterexample_witness();
        let elapsed = t0.elapsed().as_secs_f64();
        record(
            &mut results,
            "criterion 8 (compactness counterexample)",
            report.pass && elapsed < 10.0,
            format!(
                "symplectic residual exact: {}; endpoint {:?}; {} grid points, {} violations; {elapsed:.1}s",
                report.symplectic_exact,
                report.segment_endpoint,
                report.grid_points,
                report.grid_violations
            ),
        );
    }

    // 9. end-to-end pipeline on shell(1,2), n = 2: quadrature profile
    //    feeds recognition, returns forced C = 1 with zero wrap-around
    //    residual volume
    {
        let config = RunConfig::default();
        let report = commands::cmd_pipeline_shell(1.0, 2.0, 2, &config).unwrap();
        let forced = report.outputs["forced_c"].as_f64().unwrap();
        let residual = report.outputs["figure_residual_volume"].as_f64().unwrap();
        let all_checks = report.all_pass();
        record(
            &mut results,
            "criterion 9 (shell pipeline)",
            all_checks && forced == 1.0 && residual == 0.0,
            format!("forced C = {forced}, residual volume = {residual}"),
        );
    }

    // full randomized suite batch at the documented default (seed 0,
    // count 100): every suite must pass
    {
        let outcomes = suites::run_all(0, 100);
        let all = outcomes.iter().all(|o| o.pass);
        let detail = outcomes
            .iter()
            .map(|o| format!("{}:{}", o.name, if o.pass { "ok" } else { "FAIL" }))
            .collect::<Vec<_>>()
            .join(", ");
        record(&mut results, "property suite (seed 0, count 100)", all, detail);
    }

    let failures: Vec<&Criterion> = results.iter().filter(|c| !c.pass).collect();
    assert!(
        failures.is_empty(),
        "failed criteria: {:?}",
        failures
            .iter()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
    );
}
