//! Feasibility analysis of boundary-component assignments.
//!
//! An embedding of a compact region into another induces a partition of the
//! two boundary-component sets in which every block contains exactly one
//! domain component; such partitions are encoded here as total maps from
//! target components to domain components ([`Assignment`]). Each block must
//! satisfy the helicity inequality
//! `-C^n * h(domain) + sum of assigned target helicities >= 0`,
//! whose solution set in `C > 0` is an interval ([`FeasibleCSet`]).
//!
//! The thresholds [`threshold_c1`], [`threshold_c2`] and their maximum
//! [`threshold_c0`] bound the rescaling constants at which a sign-mixing
//! assignment can still be feasible: [`verify_separation`] checks by
//! exhaustive enumeration that every non-separating assignment is
//! infeasible above `c0`, and [`verify_recognition`] checks that the
//! feasible spectrum above `c0` collapses to `C = 1` whenever some boundary
//! component has negative helicity.

use crate::helicity::HelicityProfile;
use serde::Serialize;
use thiserror::Error;

/// Absolute slack on block inequalities; helicities may carry quadrature
/// noise around 1e-8, and interval endpoints inherit this slack.
pub const FEASIBILITY_SLACK: f64 = 1e-12;

/// Slack for spectrum comparisons against `c0` and `1`; kept three orders
/// above the feasibility slack.
pub const SPECTRUM_SLACK: f64 = 1e-9;

/// Default cap on the number of enumerated assignments.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

#[derive(Debug, Error)]
pub enum RecognitionError {
    #[error("assignment enumeration would produce {count} maps, exceeding the cap {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error(
        "profile has no negative-helicity mass (negative total {total}); the recognition \
         hypothesis requires a boundary component of negative helicity"
    )]
    NoNegativeComponent { total: f64 },
    #[error("positive component {domain} pairs with {count} positive targets instead of exactly one")]
    PositivePairingFailed { domain: usize, count: usize },
    #[error("positive pairing is not a bijection onto the positive targets")]
    PairingNotBijective,
    #[error("paired components differ in helicity: {left} vs {right} (tolerance {tol:e})")]
    PairingNotHelicityPreserving { left: f64, right: f64, tol: f64 },
}

/// Total map from target boundary components to domain boundary components.
/// Block `i` consists of domain component `i` together with every target
/// component mapped to `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub map: Vec<usize>,
}

impl Assignment {
    pub fn identity(len: usize) -> Self {
        Assignment {
            map: (0..len).collect(),
        }
    }

    pub fn targets_of(&self, domain_index: usize) -> impl Iterator<Item = usize> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter(move |&(_, &d)| d == domain_index)
            .map(|(t, _)| t)
    }
}

/// Iterator over all `|domain|^{|target|}` assignments, in base-`|domain|`
/// counting order.
pub struct AssignmentIter {
    domain_len: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for AssignmentIter {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        let state = self.current.as_mut()?;
        let out = Assignment { map: state.clone() };
        // increment, least significant digit first
        let mut done = true;
        for digit in state.iter_mut() {
            *digit += 1;
            if *digit < self.domain_len {
                done = false;
                break;
            }
            *digit = 0;
        }
        if done {
            self.current = None;
        }
        Some(out)
    }
}

/// All total maps from `target_len` components to `domain_len` components,
/// each exactly once. Errors when `domain_len^target_len` exceeds `cap`.
pub fn enumerate_assignments(
    domain_len: usize,
    target_len: usize,
    cap: u128,
) -> Result<AssignmentIter, RecognitionError> {
    let count = (domain_len as u128)
        .checked_pow(target_len as u32)
        .unwrap_or(u128::MAX);
    if count > cap {
        return Err(RecognitionError::CapExceeded { count, cap });
    }
    let current = if count == 0 {
        None
    } else {
        Some(vec![0usize; target_len])
    };
    Ok(AssignmentIter {
        domain_len,
        current,
    })
}

/// Left-hand side of the block inequality for block `i`:
/// `-C^n h(i) + sum over assigned targets`.
pub fn block_value(
    domain_h: &[f64],
    target_h: &[f64],
    assignment: &Assignment,
    i: usize,
    n: usize,
    c: f64,
) -> f64 {
    let mut s = 0.0;
    for t in assignment.targets_of(i) {
        s += target_h[t];
    }
    -c.powi(n as i32) * domain_h[i] + s
}

/// Whether block `i` satisfies its inequality at `C = c`, up to the
/// feasibility slack.
pub fn block_inequality(
    domain_h: &[f64],
    target_h: &[f64],
    assignment: &Assignment,
    i: usize,
    n: usize,
    c: f64,
) -> bool {
    block_value(domain_h, target_h, assignment, i, n, c) >= -FEASIBILITY_SLACK
}

/// Solution set in `C > 0` of a conjunction of block inequalities: an
/// interval, possibly empty or unbounded.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeasibleCSet {
    /// `Some((lo, hi))` is `{C > 0 : lo <= C <= hi}`; `lo = 0` imposes no
    /// lower bound beyond positivity, `hi` may be infinite.
    pub interval: Option<(f64, f64)>,
}

impl FeasibleCSet {
    pub fn all() -> Self {
        FeasibleCSet {
            interval: Some((0.0, f64::INFINITY)),
        }
    }

    pub fn empty() -> Self {
        FeasibleCSet { interval: None }
    }

    pub fn is_empty(&self) -> bool {
        self.interval.is_none()
    }

    pub fn contains(&self, c: f64) -> bool {
        match self.interval {
            Some((lo, hi)) => c > 0.0 && lo <= c && c <= hi,
            None => false,
        }
    }

    fn intersect_upper(&mut self, hi: f64) {
        if let Some((lo, h)) = self.interval {
            let new_hi = h.min(hi);
            self.interval = if new_hi <= 0.0 || lo > new_hi {
                None
            } else {
                Some((lo, new_hi))
            };
        }
    }

    fn intersect_lower(&mut self, lo: f64) {
        if let Some((l, hi)) = self.interval {
            let new_lo = l.max(lo);
            self.interval = if new_lo > hi { None } else { Some((new_lo, hi)) };
        }
    }

    /// Supremum of the set intersected with `(0, 1]`, if nonempty.
    pub fn sup_within_unit(&self) -> Option<f64> {
        let (lo, hi) = self.interval?;
        let hi = hi.min(1.0);
        if hi <= 0.0 || lo > hi {
            None
        } else {
            Some(hi)
        }
    }
}

/// Exact interval of `C > 0` on which every block inequality (with its
/// feasibility slack) holds.
pub fn feasible_interval(
    domain_h: &[f64],
    target_h: &[f64],
    assignment: &Assignment,
    n: usize,
) -> FeasibleCSet {
    feasible_interval_with_slack(domain_h, target_h, assignment, n, FEASIBILITY_SLACK)
}

/// [`feasible_interval`] with an explicit slack; `slack = 0` gives the
/// exact solution set of the unrelaxed inequalities.
pub fn feasible_interval_with_slack(
    domain_h: &[f64],
    target_h: &[f64],
    assignment: &Assignment,
    n: usize,
    slack: f64,
) -> FeasibleCSet {
    let mut set = FeasibleCSet::all();
    let inv_n = 1.0 / n as f64;
    for (i, &h) in domain_h.iter().enumerate() {
        let mut s = 0.0;
        for t in assignment.targets_of(i) {
            s += target_h[t];
        }
        let slacked = s + slack;
        if h > 0.0 {
            if slacked < 0.0 {
                return FeasibleCSet::empty();
            }
            // C <= (slacked / h)^{1/n}
            set.intersect_upper((slacked / h).powf(inv_n));
        } else if h < 0.0 {
            if slacked < 0.0 {
                // C >= (slacked / h)^{1/n} with slacked/h > 0
                set.intersect_lower((slacked / h).powf(inv_n));
            }
        } else if slacked < 0.0 {
            return FeasibleCSet::empty();
        }
        if set.is_empty() {
            return set;
        }
    }
    set
}

/// True iff no block mixes a positive-helicity element with a
/// negative-helicity element (the block's domain component counts).
pub fn separates(domain_h: &[f64], target_h: &[f64], assignment: &Assignment) -> bool {
    for (i, &h) in domain_h.iter().enumerate() {
        let mut has_pos = h > 0.0;
        let mut has_neg = h < 0.0;
        for t in assignment.targets_of(i) {
            has_pos |= target_h[t] > 0.0;
            has_neg |= target_h[t] < 0.0;
        }
        if has_pos && has_neg {
            return false;
        }
    }
    true
}

/// Largest `C in [0, 1]` at which some strictly ordered pair of positive
/// components can satisfy `h' >= C^n h`; `0` when no such pair exists.
pub fn threshold_c1(h: &[f64], n: usize) -> f64 {
    let inv_n = 1.0 / n as f64;
    let mut best = 0.0f64;
    for &a in h.iter().filter(|&&v| v > 0.0) {
        for &b in h.iter().filter(|&&v| v > 0.0) {
            if a > b {
                best = best.max((b / a).powf(inv_n).min(1.0));
            }
        }
    }
    best
}

/// Largest `C in [0, 1]` at which some positive/negative pair can satisfy
/// `(1 - C^n) h(+) >= -h(-)`; `0` when either sign class is empty.
pub fn threshold_c2(h: &[f64], n: usize) -> f64 {
    let inv_n = 1.0 / n as f64;
    let mut best = 0.0f64;
    for &p in h.iter().filter(|&&v| v > 0.0) {
        for &q in h.iter().filter(|&&v| v < 0.0) {
            let ratio = 1.0 + q / p;
            if ratio > 0.0 {
                best = best.max(ratio.powf(inv_n).min(1.0));
            }
        }
    }
    best
}

/// `max(c1, c2)`: above this threshold every feasible assignment separates
/// positive from negative helicity components.
pub fn threshold_c0(h: &[f64], n: usize) -> f64 {
    threshold_c1(h, n).max(threshold_c2(h, n))
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub c0: f64,
    /// Largest `sup(feasible ∩ (0, 1])` over non-separating assignments;
    /// `-inf` when every non-separating assignment is infeasible.
    pub worst_violator_cmax: f64,
    pub non_separating: u64,
    pub total_assignments: u64,
    pub pass: bool,
}

/// Exhaustively checks, in the self-assignment setting (domain = target =
/// the given profile), that every non-separating assignment is infeasible
/// above `c0` (up to the spectrum slack).
pub fn verify_separation(
    profile: &HelicityProfile,
    cap: u128,
) -> Result<SeparationReport, RecognitionError> {
    let h = profile.values();
    let n = profile.n;
    let c0 = threshold_c0(&h, n);
    let mut worst = f64::NEG_INFINITY;
    let mut non_separating = 0u64;
    let mut total = 0u64;
    for assignment in enumerate_assignments(h.len(), h.len(), cap)? {
        total += 1;
        if separates(&h, &h, &assignment) {
            continue;
        }
        non_separating += 1;
        if let Some(sup) = feasible_interval(&h, &h, &assignment, n).sup_within_unit() {
            worst = worst.max(sup);
        }
    }
    Ok(SeparationReport {
        c0,
        worst_violator_cmax: worst,
        non_separating,
        total_assignments: total,
        pass: worst <= c0 + SPECTRUM_SLACK,
    })
}

/// For a separating assignment feasible above `c0`: the pairing sending
/// each positive domain component to the unique positive target component
/// in its block. Verifies uniqueness, bijectivity, and helicity
/// preservation (within `1e-12`), reporting the failing claim otherwise.
pub fn extract_permutation(
    domain_h: &[f64],
    target_h: &[f64],
    assignment: &Assignment,
) -> Result<Vec<(usize, usize)>, RecognitionError> {
    let tol = 1e-12;
    let mut pairs = Vec::new();
    let mut hit = vec![false; target_h.len()];
    for (i, &h) in domain_h.iter().enumerate() {
        if h <= 0.0 {
            continue;
        }
        let positives: Vec<usize> = assignment
            .targets_of(i)
            .filter(|&t| target_h[t] > 0.0)
            .collect();
        if positives.len() != 1 {
            return Err(RecognitionError::PositivePairingFailed {
                domain: i,
                count: positives.len(),
            });
        }
        let t = positives[0];
        if hit[t] {
            return Err(RecognitionError::PairingNotBijective);
        }
        hit[t] = true;
        pairs.push((i, t));
    }
    // every positive target must be claimed by some positive domain block
    for (t, &v) in target_h.iter().enumerate() {
        if v > 0.0 && !hit[t] {
            return Err(RecognitionError::PairingNotBijective);
        }
    }
    for &(i, t) in &pairs {
        if (domain_h[i] - target_h[t]).abs() > tol {
            return Err(RecognitionError::PairingNotHelicityPreserving {
                left: domain_h[i],
                right: target_h[t],
                tol,
            });
        }
    }
    Ok(pairs)
}

#[derive(Clone, Debug, Serialize)]
pub struct RecognitionReport {
    pub c0: f64,
    /// Merged feasible-C spectrum intersected with `(c0, 1]`.
    pub spectrum: Vec<(f64, f64)>,
    pub forced_c: f64,
    pub total_assignments: u64,
    pub pass: bool,
}

/// Verifies the forced rescaling `C = 1`: the feasible-C spectrum over all
/// assignments, intersected with `(c0, 1]`, must avoid
/// `(c0 + slack, 1 - slack)` and contain `C = 1`. Requires the profile to
/// carry strictly negative helicity mass.
pub fn verify_recognition(
    profile: &HelicityProfile,
    cap: u128,
) -> Result<RecognitionReport, RecognitionError> {
    let neg_total = profile.negative_total();
    if !(neg_total < 0.0) {
        return Err(RecognitionError::NoNegativeComponent { total: neg_total });
    }
    let h = profile.values();
    let n = profile.n;
    let c0 = threshold_c0(&h, n);
    let mut raw: Vec<(f64, f64)> = Vec::new();
    let mut total = 0u64;
    for assignment in enumerate_assignments(h.len(), h.len(), cap)? {
        total += 1;
        if let Some((lo, hi)) = feasible_interval(&h, &h, &assignment, n).interval {
            let lo = lo.max(c0);
            let hi = hi.min(1.0);
            if hi > c0 && lo <= hi {
                raw.push((lo, hi));
            }
        }
    }
    raw.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut spectrum: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in raw {
        match spectrum.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => spectrum.push((lo, hi)),
        }
    }
    let gap_lo = c0 + SPECTRUM_SLACK;
    let gap_hi = 1.0 - SPECTRUM_SLACK;
    let gap_clear = spectrum
        .iter()
        .all(|&(lo, hi)| !(hi > gap_lo && lo < gap_hi));
    let contains_one = spectrum.iter().any(|&(lo, hi)| lo <= 1.0 && hi >= 1.0);
    Ok(RecognitionReport {
        c0,
        spectrum,
        forced_c: 1.0,
        total_assignments: total,
        pass: gap_clear && contains_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn profile(n: usize, values: &[f64]) -> HelicityProfile {
        HelicityProfile::synthetic(n, values).unwrap()
    }

    #[test]
    fn c1_worked_examples() {
        assert!((threshold_c1(&[2.0, 1.0], 2) - 0.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(threshold_c1(&[3.0, 3.0], 2), 0.0);
        assert_eq!(threshold_c1(&[], 2), 0.0);
        assert_eq!(threshold_c1(&[-1.0, -2.0], 2), 0.0);
    }

    #[test]
    fn c2_worked_examples() {
        let c2 = threshold_c2(&[2.0, 1.0, -0.5], 2);
        assert!((c2 - 0.75f64.sqrt()).abs() < 1e-12);
        assert_eq!(threshold_c2(&[2.0, 1.0], 2), 0.0);
        // pairs with 1 + h-/h+ <= 0 contribute empty sets
        assert_eq!(threshold_c2(&[1.0, -1.0], 2), 0.0);
        assert_eq!(threshold_c2(&[1.0, -2.5], 2), 0.0);
    }

    #[test]
    fn c0_worked_examples() {
        let h = [2.0, 1.0, -0.5];
        let c0 = threshold_c0(&h, 2);
        assert!((c0 - 0.8660254037844386).abs() < 1e-6);
        assert_eq!(threshold_c0(&[], 2), 0.0);
        assert_eq!(threshold_c0(&[1.0, -1.0], 2), 0.0);
    }

    #[test]
    fn block_inequality_examples() {
        let h = [1.0];
        let a = Assignment::identity(1);
        // self block at C = 1: value 0, holds
        assert!(block_inequality(&h, &h, &a, 0, 2, 1.0));
        // h = 1, target sum 0.5, C = 0.8: -0.64 + 0.5 < 0
        let d = [1.0];
        let t = [0.5];
        let a = Assignment { map: vec![0] };
        assert!(!block_inequality(&d, &t, &a, 0, 2, 0.8));
        assert!((block_value(&d, &t, &a, 0, 2, 0.8) - (-0.14)).abs() < 1e-12);
        // negative domain, empty targets: always true
        let d = [-1.0];
        let a = Assignment { map: vec![] };
        assert!(block_inequality(&d, &[], &a, 0, 2, 5.0));
    }

    #[test]
    fn feasible_interval_examples() {
        // identity assignment contains C = 1
        let h = [2.0, 1.0, -0.5];
        let a = Assignment::identity(3);
        let set = feasible_interval(&h, &h, &a, 2);
        assert!(set.contains(1.0));

        // single block h = 2, S = 1, n = 2: (0, sqrt(0.5)]
        let set = feasible_interval(&[2.0], &[1.0], &Assignment { map: vec![0] }, 2);
        let (lo, hi) = set.interval.unwrap();
        assert_eq!(lo, 0.0);
        assert!((hi - 0.5f64.sqrt()).abs() < 1e-9);

        // h = 1, S = -0.5: empty
        let set = feasible_interval(&[1.0], &[-0.5], &Assignment { map: vec![0] }, 2);
        assert!(set.is_empty());
    }

    #[test]
    fn feasible_interval_matches_block_inequalities() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..200 {
            let len = rng.gen_range(1..=4);
            let n = if rng.gen_bool(0.5) { 2 } else { 3 };
            let h: Vec<f64> = (0..len)
                .map(|_| {
                    let mag = rng.gen_range(0.1..10.0f64);
                    if rng.gen_bool(0.5) {
                        mag
                    } else {
                        -mag
                    }
                })
                .collect();
            let a = Assignment {
                map: (0..len).map(|_| rng.gen_range(0..len)).collect(),
            };
            let set = feasible_interval(&h, &h, &a, n);
            for _ in 0..100 {
                let c = rng.gen_range(1e-3..1.5f64);
                let brute = (0..len).all(|i| block_inequality(&h, &h, &a, i, n, c));
                assert_eq!(set.contains(c), brute, "c = {c}, set = {set:?}");
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let count = |d, t| enumerate_assignments(d, t, 1 << 30).unwrap().count();
        assert_eq!(count(2, 2), 4);
        assert_eq!(count(3, 3), 27);
        assert_eq!(count(1, 5), 1);
        assert_eq!(count(4, 0), 1); // the empty map
        assert!(matches!(
            enumerate_assignments(10, 20, 1000),
            Err(RecognitionError::CapExceeded { .. })
        ));
    }

    #[test]
    fn separates_examples() {
        let h = [2.0, -1.0];
        assert!(separates(&h, &h, &Assignment::identity(2)));
        // negative target onto positive domain component
        assert!(!separates(&h, &h, &Assignment { map: vec![0, 0] }));
        // no negative components: vacuous
        let h = [2.0, 1.0];
        for a in enumerate_assignments(2, 2, 100).unwrap() {
            assert!(separates(&h, &h, &a));
        }
    }

    #[test]
    fn separation_on_shell_profile() {
        let p = profile(2, &[16.0 * PI * PI, -PI * PI]);
        let report = verify_separation(&p, 1000).unwrap();
        assert_eq!(report.total_assignments, 4);
        assert!(report.pass, "{report:?}");
        assert!((report.c0 - (15.0f64 / 16.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn separation_on_worked_profile() {
        let p = profile(2, &[2.0, 1.0, -0.5]);
        let report = verify_separation(&p, 1000).unwrap();
        assert_eq!(report.total_assignments, 27);
        assert!(report.pass);
        assert!(report.worst_violator_cmax <= 0.8660254037844386 + 1e-9);
    }

    #[test]
    fn separation_vacuous_without_negatives() {
        let p = profile(2, &[2.0, 1.0]);
        let report = verify_separation(&p, 1000).unwrap();
        assert!(report.pass);
        assert_eq!(report.non_separating, 0);
        assert_eq!(report.worst_violator_cmax, f64::NEG_INFINITY);
    }

    #[test]
    fn permutation_identity_and_swap() {
        let h = [1.0, 2.0, -0.3];
        let pairs = extract_permutation(&h, &h, &Assignment::identity(3)).unwrap();
        assert_eq!(pairs, vec![(0, 0), (1, 1)]);

        // equal positive components swapped at C = 1
        let h = [3.0, 3.0];
        let swap = Assignment { map: vec![1, 0] };
        assert!(feasible_interval(&h, &h, &swap, 2).contains(1.0));
        let pairs = extract_permutation(&h, &h, &swap).unwrap();
        assert_eq!(pairs, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn permutation_failure_reports_claim() {
        // three positive targets in one positive block
        let h = [5.0, 1.0, 1.0];
        let a = Assignment { map: vec![0, 0, 0] };
        assert!(matches!(
            extract_permutation(&h, &h, &a),
            Err(RecognitionError::PositivePairingFailed {
                domain: 0,
                count: 3
            })
        ));
        // helicity mismatch
        let a = Assignment { map: vec![1, 0, 2] };
        assert!(matches!(
            extract_permutation(&h, &h, &a),
            Err(RecognitionError::PairingNotHelicityPreserving { .. })
        ));
    }

    #[test]
    fn recognition_on_shell_profile() {
        let p = profile(2, &[16.0 * PI * PI, -PI * PI]);
        let report = verify_recognition(&p, 1000).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.forced_c, 1.0);
    }

    #[test]
    fn recognition_on_worked_profile() {
        let p = profile(2, &[2.0, 1.0, -0.5]);
        let report = verify_recognition(&p, 1000).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn recognition_requires_negative_mass() {
        let p = profile(2, &[1.0]);
        assert!(matches!(
            verify_recognition(&p, 1000),
            Err(RecognitionError::NoNegativeComponent { .. })
        ));
    }
}
