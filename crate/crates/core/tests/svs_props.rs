use gn_core::corpus::{
    random_form, random_invertible, random_nonzero_form, random_svs, rng, zero_hessian_corpus,
    SvsSample,
};
use gn_core::error::GnError;
use gn_core::hessian::FormSystem;
use gn_core::poly::{int, MultiPoly, RationalFunction};
use gn_core::svs::*;
use gn_core::{parse_polynomial, Rational};
use proptest::prelude::*;
use rand::Rng;

fn p(s: &str, n: usize) -> MultiPoly {
    parse_polynomial(s, Some(n)).unwrap()
}

fn sample(seed: u64) -> (SvsSample, MultiPoly) {
    let mut r = rng(seed);
    let n = r.gen_range(2..=5);
    let degree = r.gen_range(1..=3);
    let s = random_svs(&mut r, n, degree);
    let d = r.gen_range(1..=4);
    let f = random_form(&mut r, n, d, 0.5);
    (s, f)
}

fn proportional(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    match a[i].scalar_ratio(&b[i]) {
        Some(c) => a.iter().zip(b).all(|(x, y)| *x == y.scale(&c)),
        None => false,
    }
}

fn taylor_vanishes(f: &MultiPoly, h: &FormSystem) -> bool {
    let d = f.total_degree().finite().unwrap_or(0);
    (1..=d).all(|j| {
        taylor_coefficient(f, Direction::System(h), j)
            .unwrap()
            .is_zero()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operator_shift_identity(seed in any::<u64>()) {
        let (s, f) = sample(seed);
        for i in 0..=3u32 {
            let lhs = apply_operator(&s.h, &taylor_coefficient(&f, Direction::System(&s.h), i).unwrap()).unwrap();
            let rhs = taylor_coefficient(&f, Direction::System(&s.h), i + 1).unwrap();
            prop_assert_eq!(lhs, rhs.scale(&int(i64::from(i) + 1)));
        }
    }

    #[test]
    fn membership_conditions_agree(seed in any::<u64>()) {
        let (s, f) = sample(seed);
        let mut candidates = s.members.clone();
        candidates.push(f);
        for g in &candidates {
            let member = is_in_sol(&s.h, g).unwrap();
            prop_assert_eq!(member, taylor_vanishes(g, &s.h));
            prop_assert_eq!(member, is_shift_invariant(g, &s.h).unwrap());
        }
        for m in &s.members {
            prop_assert!(is_in_sol(&s.h, m).unwrap());
        }
    }

    #[test]
    fn factors_of_members_are_members(seed in any::<u64>()) {
        let (s, f) = sample(seed);
        let (a, b) = (&s.members[0], &s.members[1]);
        prop_assert!(is_in_sol(&s.h, &(a * b)).unwrap());
        // a non-member times a member leaves the ring
        if !f.is_zero() && !is_in_sol(&s.h, &f).unwrap() {
            prop_assert!(!is_in_sol(&s.h, &(&f * a)).unwrap());
            prop_assert!(!is_in_sol(&s.h, &(&f * &(&f * b))).unwrap());
        }
        prop_assert!(is_in_sol(&s.h, &(a + &a.scale(&int(3)))).unwrap());
    }

    #[test]
    fn self_substitution_vanishes_for_random_systems(seed in any::<u64>()) {
        let (s, _) = sample(seed);
        prop_assert!(is_self_vanishing(&s.h));
        prop_assert!(self_substitution_vanishes(&s.h).unwrap());
    }

    /// `D_{x'}(y') f'(x') = D_x(y) f(x)` for `x' = A x`, `y' = A y`.
    #[test]
    fn operator_is_coordinate_free(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let fd = r.gen_range(1..=4);
        let f = random_nonzero_form(&mut r, n, fd, 0.6);
        let hd = r.gen_range(0..=2);
        let h = FormSystem::new((0..n).map(|j| {
            if j == 0 { random_nonzero_form(&mut r, n, hd, 0.7) } else { random_form(&mut r, n, hd, 0.5) }
        }).collect()).unwrap();
        let a = random_invertible(&mut r, n);
        let back = a.inverse().unwrap().linear_forms();
        let f_new = f.compose(&back).unwrap();
        let h_new = FormSystem::new(
            a.apply(h.forms()).unwrap().iter().map(|c| c.compose(&back).unwrap()).collect()
        ).unwrap();
        let lhs = apply_operator(&h_new, &f_new).unwrap();
        let rhs = apply_operator(&h, &f).unwrap().compose(&back).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn extraction_routes_agree_and_respect_the_rank_bound() {
    let mut checked = 0;
    for c in zero_hessian_corpus(31, 40, 6) {
        let cert = match extract_reduced_svs(&c.form) {
            Ok(cert) => cert,
            Err(GnError::UnsupportedCorank { .. }) => continue,
            Err(e) => panic!("{:?}: {e}", c.family),
        };
        assert!(cert.checks().all());
        let report = rank_bound_report(cert.h()).unwrap();
        assert!(
            report.satisfied,
            "{:?} rank {}",
            c.family, report.jacobian_rank
        );

        let partials = FormSystem::gradient(&c.form).unwrap();
        let cap = default_relation_cap(c.form.total_degree().finite().unwrap());
        let g = find_minimal_relation(&partials, cap).unwrap();
        let by_relation = svs_from_relation(&g, &partials).unwrap();
        assert!(
            proportional(cert.h().forms(), by_relation.h().forms()),
            "{:?}: {:?} vs {:?}",
            c.family,
            cert.h().forms(),
            by_relation.h().forms()
        );
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} corank-one forms");
}

#[test]
fn birational_elimination_on_corpus() {
    for c in zero_hessian_corpus(32, 16, 5) {
        let Ok(cert) = extract_reduced_svs(&c.form) else {
            continue;
        };
        let (sub, image) = eliminate_birational(&c.form, &cert).unwrap();
        assert_eq!(image, RationalFunction::from_poly(c.form.clone()));
        assert!(sub.s()[sub.pivot()].is_zero());
    }
}

#[test]
fn canonical_cubic_golden() {
    let f = p("x1^2*x3+x1*x2*x4+x2^2*x5", 5);
    let cert = extract_reduced_svs(&f).unwrap();
    let expected = ["0", "0", "x2^2", "-2*x1*x2", "x1^2"].map(|s| p(s, 5));
    assert!(proportional(cert.h().forms(), &expected));
    assert!(cert.checks().all());
    let partials = FormSystem::gradient(&f).unwrap();
    let g = find_minimal_relation(&partials, 6).unwrap();
    assert!(proportional(
        std::slice::from_ref(&g),
        &[p("x3*x5-x4^2", 5)]
    ));
    let by_relation = svs_from_relation(&g, &partials).unwrap();
    assert!(proportional(by_relation.h().forms(), &expected));
}

#[test]
fn rank_bound_counterexample() {
    let a = "(x1*x4-x2*x3)";
    let h = FormSystem::new(
        [
            format!("x5^2*({a}*x1-x5^2*x2)"),
            format!("{a}*({a}*x1-x5^2*x2)"),
            format!("x5^2*({a}*x3-x5^2*x4)"),
            format!("{a}*({a}*x3-x5^2*x4)"),
            "0".to_string(),
        ]
        .iter()
        .map(|s| p(s, 5))
        .collect(),
    )
    .unwrap();
    assert!(is_self_vanishing(&h));
    assert!(self_substitution_vanishes(&h).unwrap());
    let report = rank_bound_report(&h).unwrap();
    assert_eq!(report.jacobian_rank, 3);
    assert!(!report.satisfied);
    let closure = linear_closure_structure(&h).unwrap();
    assert_eq!(closure.s, 3);
    assert!(!closure.holds);
    assert_eq!(image_dimension(&h), 2);
}

#[test]
fn linear_elimination_of_binary_powers() {
    let f = p("(2*x1-3*x2)^5", 2);
    let lin = eliminate_linear(&f).unwrap();
    assert_eq!(lin.span_dim, 1);
    assert!(!lin.form.involves(1));
    let back = lin.transform.linear_forms();
    assert_eq!(lin.form.compose(&back).unwrap(), f);
    let rational_multiple = p("x1^3", 2).scale(&Rational::new(1.into(), 3.into()));
    assert_eq!(eliminate_linear(&rational_multiple).unwrap().span_dim, 1);
}
