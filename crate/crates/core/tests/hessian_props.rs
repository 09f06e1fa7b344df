use gn_core::corpus::{random_invertible, random_nonzero_form, rng, zero_hessian_corpus};
use gn_core::hessian::{
    has_zero_hessian, hessian_corank, hessian_matrix, jacobian_matrix, transcendence_degree,
};
use gn_core::poly::{MultiPoly, Rational};
use gn_core::{parse_polynomial, FormSystem};
use proptest::prelude::*;
use rand::Rng;

fn p(s: &str, n: usize) -> MultiPoly {
    parse_polynomial(s, Some(n)).unwrap()
}

/// A rational point where the Hessian determinant is nonzero proves a
/// nonvanishing Hessian without any symbolic rank computation.
fn nonzero_at_some_point(f: &MultiPoly, r: &mut impl Rng) -> bool {
    let h = hessian_matrix(f).unwrap();
    (0..5).any(|_| {
        let point: Vec<Rational> = (0..f.nvars())
            .map(|_| Rational::from_integer(r.gen_range(-50i64..=50).into()))
            .collect();
        let values = h.evaluate(&point).unwrap();
        let m = gn_core::QMatrix::from_rows(values).unwrap();
        m.rank() == f.nvars()
    })
}

#[test]
fn examples() {
    assert!(has_zero_hessian(&p("(x1+x2)^4", 2)).unwrap());
    assert!(!has_zero_hessian(&p("x1^3+x2^3+x3^3", 3)).unwrap());
    assert!(has_zero_hessian(&p("x1^2*x3+x1*x2*x4+x2^2*x5", 5)).unwrap());
    assert_eq!(
        hessian_matrix(&p("x1^3+x2^3+x3^3", 3))
            .unwrap()
            .determinant()
            .unwrap(),
        p("216*x1*x2*x3", 3)
    );
    assert!(hessian_matrix(&p("x1+x2^2", 2)).is_err());
    assert!(hessian_matrix(&p("x1", 2)).is_err());
    let s = FormSystem::new(vec![p("x1^2", 2), p("x1*x2", 2)]).unwrap();
    assert_eq!(
        jacobian_matrix(&s),
        gn_core::PolyMatrix::from_rows(vec![
            vec![p("2*x1", 2), p("0", 2)],
            vec![p("x2", 2), p("x1", 2)]
        ])
        .unwrap()
    );
    let id = FormSystem::new((0..4).map(|j| MultiPoly::var(4, j)).collect()).unwrap();
    assert_eq!(transcendence_degree(&id), 4);
    let partials = FormSystem::gradient(&p("(x1+x2)^5", 2)).unwrap();
    assert_eq!(transcendence_degree(&partials), 1);
}

#[test]
fn canonical_cubic_hessian_block() {
    let f = p("x1^2*x3+x1*x2*x4+x2^2*x5", 5);
    let h = hessian_matrix(&f).unwrap();
    assert!(h.is_symmetric());
    for i in 2..5 {
        for j in 2..5 {
            assert!(h.get(i, j).is_zero());
        }
    }
    assert_eq!(jacobian_matrix(&FormSystem::gradient(&f).unwrap()), h);
    assert!(h.determinant().unwrap().is_zero());
    assert_eq!(hessian_corank(&f).unwrap(), 1);
}

#[test]
fn zero_hessian_agrees_with_determinant_on_small_forms() {
    let mut r = rng(21);
    let corpus = zero_hessian_corpus(4, 16, 4);
    for c in corpus.iter().filter(|c| c.form.nvars() <= 4) {
        assert!(hessian_matrix(&c.form)
            .unwrap()
            .determinant()
            .unwrap()
            .is_zero());
        assert!(has_zero_hessian(&c.form).unwrap());
    }
    for _ in 0..20 {
        let n = r.gen_range(2..=4);
        let d = r.gen_range(2..=4);
        let f = random_nonzero_form(&mut r, n, d, 0.6);
        let exact = hessian_matrix(&f).unwrap().determinant().unwrap().is_zero();
        assert_eq!(has_zero_hessian(&f).unwrap(), exact, "{f}");
    }
}

#[test]
fn zero_hessian_iff_partials_dependent() {
    let mut r = rng(22);
    for c in zero_hessian_corpus(7, 24, 6) {
        let n = c.form.nvars();
        let partials = FormSystem::gradient(&c.form).unwrap();
        assert!(has_zero_hessian(&c.form).unwrap());
        assert!(transcendence_degree(&partials) < n);
    }
    for _ in 0..24 {
        let n = r.gen_range(2..=5);
        let d = r.gen_range(2..=6);
        let f = random_nonzero_form(&mut r, n, d, 0.7);
        let zero = has_zero_hessian(&f).unwrap();
        let partials = FormSystem::gradient(&f).unwrap();
        assert_eq!(zero, transcendence_degree(&partials) < n);
        if !zero {
            assert!(nonzero_at_some_point(&f, &mut r), "{f}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hessian_is_symmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let d = r.gen_range(2..=5);
        let f = random_nonzero_form(&mut r, n, d, 0.5);
        prop_assert!(hessian_matrix(&f).unwrap().is_symmetric());
    }

    /// With `x' = A x` and `f'(x') = f(A^{-1} x')`, the gradient of `f'`
    /// is `A^{-T}` times the gradient of `f`.
    #[test]
    fn gradient_transforms_by_inverse_transpose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let d = r.gen_range(1..=4);
        let f = random_nonzero_form(&mut r, n, d, 0.6);
        let a = random_invertible(&mut r, n);
        let back = a.inverse().unwrap().linear_forms();
        let f_new = f.compose(&back).unwrap();
        let expected: Vec<MultiPoly> = a
            .inverse()
            .unwrap()
            .transpose()
            .apply(&f.gradient())
            .unwrap()
            .into_iter()
            .map(|g| g.compose(&back).unwrap())
            .collect();
        prop_assert_eq!(f_new.gradient(), expected);
    }
}
