use gn_core::corpus::{random_unimodular, rng};
use gn_core::gn_forms::*;
use gn_core::hessian::{has_zero_hessian, hessian_matrix};
use gn_core::parse_polynomial;
use gn_core::poly::{MultiPoly, PolyMatrix, QMatrix, Rational};
use rand::Rng;

const SHAPES: [(u32, u32); 6] = [(0, 1), (1, 0), (1, 1), (0, 2), (1, 2), (2, 1)];

fn sample(seed: u64) -> (DeltaData, GnSample) {
    let mut r = rng(seed);
    loop {
        let shape = SHAPES[r.gen_range(0..SHAPES.len())];
        let d = random_delta_data(&mut r, shape);
        let degree = r.gen_range(3..=8);
        if d.delta_degree() > degree {
            continue;
        }
        let s = generate_gn_form(&d, &DegreeProfile::new(degree), seed).unwrap();
        return (d, s);
    }
}

/// The Hessian at a rational point is singular whenever the determinant
/// vanishes identically.
fn singular_at(f: &MultiPoly, point: &[Rational]) -> bool {
    let values = hessian_matrix(f).unwrap().evaluate(point).unwrap();
    QMatrix::from_rows(values).unwrap().rank() < f.nvars()
}

#[test]
fn generated_forms_have_zero_hessian() {
    let mut r = rng(100);
    for seed in 0..100 {
        let (_, s) = sample(seed);
        assert!(has_zero_hessian(&s.form).unwrap(), "seed {seed}");
        let point: Vec<Rational> = (0..5)
            .map(|_| Rational::from_integer(r.gen_range(-20i64..=20).into()))
            .collect();
        assert!(singular_at(&s.form, &point), "seed {seed}");
    }
}

#[test]
fn representation_recovers_the_generating_polynomial() {
    for seed in 0..100 {
        let (d, s) = sample(seed);
        // x1, x2, Delta are algebraically independent, so P is unique
        assert_eq!(
            represent_in_delta_algebra(&s.form, &d).unwrap(),
            s.p,
            "seed {seed}"
        );
        assert_eq!(d.substitute(&s.p).unwrap(), s.form);
    }
}

#[test]
fn partials_in_the_fiber_are_multiples_of_the_minors() {
    for seed in 0..40 {
        let (d, s) = sample(seed);
        let grad: Vec<MultiPoly> = (2..5).map(|i| s.form.derivative(i).unwrap()).collect();
        let minors = d.signed_minors();
        let (j, m) = minors
            .iter()
            .enumerate()
            .find(|(_, m)| !m.is_zero())
            .unwrap();
        let c = grad[j].exact_div(m).expect("divisible by the pivot minor");
        for (g, m) in grad.iter().zip(&minors) {
            assert_eq!(*g, &c * m);
        }
    }
}

#[test]
fn structure_pipeline_on_transformed_forms() {
    let mut delta_reports = 0;
    for seed in 0..30 {
        let (_, s) = sample(seed);
        let mut r = rng(seed ^ 7);
        let a = random_unimodular(&mut r, 5, 3);
        let f = s.form.compose(&a.linear_forms()).unwrap();
        match check_quinary_structure(&f).unwrap() {
            QuinaryReport::Delta {
                transformed,
                delta,
                p,
                frame,
                ..
            } => {
                assert_eq!(delta.substitute(&p).unwrap(), transformed);
                let back = frame.inverse().unwrap().linear_forms();
                assert_eq!(f.compose(&back).unwrap(), transformed);
                delta_reports += 1;
            }
            QuinaryReport::Linear(lin) => {
                assert!(lin.span_dim < 5);
            }
            QuinaryReport::Failed { stage, message } => panic!("seed {seed}: {stage}: {message}"),
        }
    }
    assert!(delta_reports >= 10, "{delta_reports}");
}

#[test]
fn canonical_cubic_matrix() {
    let p = |s: &str| parse_polynomial(s, Some(5)).unwrap();
    let a = PolyMatrix::from_rows(vec![
        vec![p("x1"), p("x2"), p("0")],
        vec![p("0"), p("x1"), p("x2")],
    ])
    .unwrap();
    let d = build_delta(&a).unwrap();
    assert!(d.coprime());
    assert_eq!(d.delta(), &p("x2^2*x3-x1*x2*x4+x1^2*x5"));
    assert!(build_delta(
        &PolyMatrix::from_rows(vec![
            vec![p("x1"), p("x2"), p("x3")],
            vec![p("0"), p("x1"), p("x2")],
        ])
        .unwrap()
    )
    .is_err());
}
