//! Property-based invariants over randomly generated forms and profiles.

use helicap::forms::{MultiIndex, PolyForm, Polynomial};
use helicap::recognition::{
    block_inequality, feasible_interval, threshold_c0, threshold_c1, threshold_c2, Assignment,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

#[derive(Clone, Debug)]
struct FormSpec {
    dim: usize,
    degree: usize,
    terms: Vec<(Vec<u8>, Vec<(Vec<u16>, i64, i64)>)>,
}

fn combinations(dim: usize, degree: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..degree).collect();
    loop {
        out.push(idx.iter().map(|&i| (i + 1) as u8).collect());
        let k = idx.len();
        if k == 0 {
            break;
        }
        let mut advanced = false;
        for i in (0..k).rev() {
            if idx[i] < dim - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    out
}

fn form_strategy(max_dim: usize) -> impl Strategy<Value = FormSpec> {
    (2..=max_dim).prop_flat_map(move |dim| {
        (0..=2usize.min(dim)).prop_flat_map(move |degree| {
            let combos = combinations(dim, degree);
            let monomial = (
                proptest::collection::vec(0u16..=2, dim),
                -5i64..=5,
                1i64..=4,
            );
            let term = proptest::sample::select(combos)
                .prop_flat_map(move |idx| {
                    proptest::collection::vec(monomial.clone(), 1..=2)
                        .prop_map(move |monos| (idx.clone(), monos))
                });
            proptest::collection::vec(term, 0..=3).prop_map(move |terms| FormSpec {
                dim,
                degree,
                terms,
            })
        })
    })
}

fn build(spec: &FormSpec) -> PolyForm {
    let mut acc = PolyForm::zero(spec.dim, spec.degree);
    for (idx, monos) in &spec.terms {
        let mut poly = Polynomial::zero(spec.dim);
        for (exps, num, den) in monos {
            poly = poly.add(&Polynomial::monomial(
                spec.dim,
                exps.clone(),
                BigRational::new(BigInt::from(*num), BigInt::from(*den)),
            ));
        }
        let term = PolyForm::from_terms(
            spec.dim,
            spec.degree,
            vec![(MultiIndex::new(idx.clone(), spec.dim).unwrap(), poly)],
        )
        .unwrap();
        acc = acc.add(&term).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_graded_commutativity(a in form_strategy(5), b in form_strategy(5)) {
        prop_assume!(a.dim == b.dim && a.degree + b.degree <= a.dim);
        let fa = build(&a);
        let fb = build(&b);
        let ab = fa.wedge(&fb).unwrap();
        let ba = fb.wedge(&fa).unwrap();
        let sign = if (a.degree * b.degree) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(ab, ba.scale_int(sign));
    }

    #[test]
    fn exterior_derivative_squares_to_zero(a in form_strategy(6)) {
        let fa = build(&a);
        prop_assert!(fa.exterior_derivative().exterior_derivative().is_zero());
    }

    #[test]
    fn json_round_trip_is_identity(a in form_strategy(5)) {
        let fa = build(&a);
        let back = PolyForm::from_json(&fa.to_json()).unwrap();
        prop_assert_eq!(fa, back);
    }

    #[test]
    fn evaluate_alternation(
        a in form_strategy(4),
        seed in proptest::array::uniform8(-1.0f64..1.0),
    ) {
        prop_assume!(a.degree == 2);
        let fa = build(&a);
        let dim = a.dim;
        let point: Vec<f64> = (0..dim).map(|i| seed[i % 8]).collect();
        let v1: Vec<f64> = (0..dim).map(|i| seed[(i + 1) % 8] + 0.1).collect();
        let v2: Vec<f64> = (0..dim).map(|i| seed[(i + 3) % 8] - 0.2).collect();
        let fwd = fa.evaluate(&point, &[v1.clone(), v2.clone()]).unwrap();
        let rev = fa.evaluate(&point, &[v2, v1]).unwrap();
        prop_assert_eq!(fwd, -rev);
    }
}

fn profile_strategy() -> impl Strategy<Value = (Vec<f64>, usize)> {
    (
        proptest::collection::vec(
            prop_oneof![
                3 => (0.1f64..10.0),
                3 => (0.1f64..10.0).prop_map(|v| -v),
                1 => Just(0.0),
            ],
            1..=4,
        ),
        prop_oneof![Just(2usize), Just(3usize)],
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn thresholds_bounded_by_one((h, n) in profile_strategy()) {
        let c1 = threshold_c1(&h, n);
        let c2 = threshold_c2(&h, n);
        let c0 = threshold_c0(&h, n);
        prop_assert!((0.0..=1.0).contains(&c1));
        prop_assert!((0.0..=1.0).contains(&c2));
        prop_assert_eq!(c0, c1.max(c2));
    }

    #[test]
    fn interval_matches_pointwise_feasibility(
        (h, n) in profile_strategy(),
        map_seed in proptest::collection::vec(0usize..4, 4),
        cs in proptest::collection::vec(1e-3f64..1.5, 16),
    ) {
        let len = h.len();
        let assignment = Assignment {
            map: (0..len).map(|t| map_seed[t] % len).collect(),
        };
        let set = feasible_interval(&h, &h, &assignment, n);
        for &c in &cs {
            let brute = (0..len).all(|i| block_inequality(&h, &h, &assignment, i, n, c));
            prop_assert_eq!(set.contains(c), brute, "C = {}", c);
        }
    }

    #[test]
    fn identity_assignment_always_feasible_at_one((h, n) in profile_strategy()) {
        let set = feasible_interval(&h, &h, &Assignment::identity(h.len()), n);
        prop_assert!(set.contains(1.0));
    }
}
