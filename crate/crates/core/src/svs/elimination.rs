use num_traits::{One, Zero};

use super::certificate::SvsCertificate;
use super::operator::{is_in_sol, is_self_vanishing};
use crate::error::{GnError, Identity, Result};
use crate::hessian::FormSystem;
use crate::poly::{coefficient_matrix, substitute, MultiPoly, QMatrix, Rational, RationalFunction};

/// The rational coordinates `s_i = x_i - (h_i / h_p) x_p` attached to a
/// pivot `p` with `h_p != 0`; `s_p = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirationalSubstitution {
    pivot: usize,
    s: Vec<RationalFunction>,
    h: FormSystem,
}

impl BirationalSubstitution {
    pub fn new(h: &FormSystem, pivot: usize) -> Result<Self> {
        let n = h.nvars();
        if pivot >= n || h.len() != n {
            return Err(GnError::IndexOutOfRange {
                index: pivot,
                nvars: n,
            });
        }
        let hp = h.get(pivot);
        if hp.is_zero() {
            return Err(GnError::Domain(format!("h_{} is zero", pivot + 1)));
        }
        let xp = MultiPoly::var(n, pivot);
        let s = (0..n)
            .map(|i| {
                if i == pivot {
                    return Ok(RationalFunction::zero(n));
                }
                let num = &(&MultiPoly::var(n, i) * hp) - &(h.get(i) * &xp);
                RationalFunction::new(num, hp.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BirationalSubstitution {
            pivot,
            s,
            h: h.clone(),
        })
    }

    /// 0-based index of the pivot variable.
    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn s(&self) -> &[RationalFunction] {
        &self.s
    }

    /// `x_j = s_j + (h_j(s) / h_p(s)) x_p` written out in `x`, with `h(s)`
    /// computed by substitution.
    pub fn inverse_images(&self) -> Result<Vec<RationalFunction>> {
        let n = self.s.len();
        let h_at_s = self
            .h
            .forms()
            .iter()
            .map(|hj| substitute(hj, &self.s))
            .collect::<Result<Vec<_>>>()?;
        let xp = RationalFunction::from_poly(MultiPoly::var(n, self.pivot));
        let hp = &h_at_s[self.pivot];
        (0..n)
            .map(|j| self.s[j].add(&h_at_s[j].div(hp)?.mul(&xp)?))
            .collect()
    }
}

/// Eliminates the pivot variable (the largest index with `h_p != 0`):
/// returns the substitution together with `f(s_1, ..., s_n)`, where
/// `s_p = 0`, after checking exactly that it equals `f`, that `h(s) = h`
/// and that the inverse map gives back every `x_j`.
pub fn eliminate_birational(
    f: &MultiPoly,
    c: &SvsCertificate,
) -> Result<(BirationalSubstitution, RationalFunction)> {
    let h = c.h();
    if !is_in_sol(h, f)? {
        return Err(GnError::Domain(
            "the form is not annihilated by D(h)".into(),
        ));
    }
    if !is_self_vanishing(h) {
        return Err(GnError::CertificateInvalid(Identity::SelfVanishing));
    }
    let n = f.nvars();
    let pivot = (0..n)
        .rev()
        .find(|&j| !h.get(j).is_zero())
        .expect("form systems are nonzero");
    let sub = BirationalSubstitution::new(h, pivot)?;
    let image = substitute(f, sub.s())?;
    if image != RationalFunction::from_poly(f.clone()) {
        return Err(GnError::CertificateInvalid(Identity::ShiftInvariance));
    }
    for hj in h.forms() {
        if substitute(hj, sub.s())? != RationalFunction::from_poly(hj.clone()) {
            return Err(GnError::CertificateInvalid(Identity::SelfSubstitutionZero));
        }
    }
    for (j, xj) in sub.inverse_images()?.iter().enumerate() {
        if *xj != RationalFunction::from_poly(MultiPoly::var(n, j)) {
            return Err(GnError::Domain(format!(
                "inverse map does not recover x{}",
                j + 1
            )));
        }
    }
    Ok((sub, image))
}

/// A constant change of coordinates `x' = A x` after which the form only
/// involves the first `span_dim` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearElimination {
    /// `A`; the new form is `f'(x') = f(A^{-1} x')`.
    pub transform: QMatrix,
    pub inverse: QMatrix,
    pub form: MultiPoly,
    /// Dimension of the span of the partials of `f`.
    pub span_dim: usize,
}

/// Detects linear relations among the partials of `f`. When the partials
/// span a space of dimension `s < n`, returns an invertible `A` such that
/// `f(A^{-1} x')` does not involve `x'_{s+1}, ..., x'_n`.
pub fn eliminate_linear(f: &MultiPoly) -> Option<LinearElimination> {
    let n = f.nvars();
    let partials = f.gradient();
    let relations: Vec<Vec<Rational>> = if partials.iter().all(MultiPoly::is_zero) {
        (0..n).map(|i| unit(n, i)).collect()
    } else {
        coefficient_matrix(&partials).left_nullspace()
    };
    if relations.is_empty() {
        return None;
    }
    let rref = QMatrix::from_rows(relations.clone())
        .expect("rectangular")
        .rref();
    let relation_rows: Vec<Vec<Rational>> = (0..rref.pivots.len())
        .map(|i| rref.matrix.row(i).to_vec())
        .collect();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .filter(|i| !rref.pivots.contains(i))
        .map(|i| unit(n, i))
        .collect();
    let span_dim = rows.len();
    rows.extend(relation_rows);
    // x = B^T x', so the relation rows of B become the eliminated directions.
    let b = QMatrix::from_rows(rows).expect("square");
    let inverse = b.transpose();
    let transform = inverse
        .inverse()
        .expect("completion by unit vectors is invertible");
    let images = inverse.linear_forms();
    let form = f.compose(&images).expect("arity matches");
    debug_assert!((span_dim..n).all(|j| !form.involves(j)));
    Some(LinearElimination {
        transform,
        inverse,
        form,
        span_dim,
    })
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_polynomial;
    use crate::svs::certificate::extract_reduced_svs;

    fn p(s: &str, n: usize) -> MultiPoly {
        parse_polynomial(s, Some(n)).unwrap()
    }

    fn rf(num: &str, den: &str) -> RationalFunction {
        RationalFunction::new(p(num, 5), p(den, 5)).unwrap()
    }

    #[test]
    fn canonical_cubic_birational() {
        let f = p("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5);
        let c = extract_reduced_svs(&f).unwrap();
        let (sub, image) = eliminate_birational(&f, &c).unwrap();
        assert_eq!(sub.pivot(), 4);
        let expected = vec![
            rf("x1", "1"),
            rf("x2", "1"),
            rf("x1^2*x3 - x2^2*x5", "x1^2"),
            rf("x1*x4 + 2*x2*x5", "x1"),
            RationalFunction::zero(5),
        ];
        assert_eq!(sub.s(), expected.as_slice());
        assert_eq!(image, RationalFunction::from_poly(f));
    }

    #[test]
    fn constant_system_drops_last_variable() {
        let f = p("x1^2 + x1*x2", 3);
        let c = extract_reduced_svs(&f).unwrap();
        let (sub, image) = eliminate_birational(&f, &c).unwrap();
        assert_eq!(sub.pivot(), 2);
        assert_eq!(sub.s()[0], RationalFunction::from_poly(p("x1", 3)));
        assert_eq!(sub.s()[1], RationalFunction::from_poly(p("x2", 3)));
        assert_eq!(image.as_poly(), Some(&f));
    }

    #[test]
    fn rejects_form_outside_sol() {
        let f = p("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5);
        let c = extract_reduced_svs(&f).unwrap();
        assert!(matches!(
            eliminate_birational(&p("x5^3", 5), &c),
            Err(GnError::Domain(_))
        ));
    }

    #[test]
    fn linear_elimination_of_power_of_sum() {
        let e = eliminate_linear(&p("(x1+x2)^3", 2)).unwrap();
        assert_eq!(e.span_dim, 1);
        assert_eq!(e.form, p("x1^3", 2));
        assert_eq!(
            e.transform.checked_mul(&e.inverse).unwrap(),
            QMatrix::identity(2)
        );
    }

    #[test]
    fn linear_elimination_cases() {
        assert!(eliminate_linear(&p("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5)).is_none());
        let e = eliminate_linear(&p("x1^2", 3)).unwrap();
        assert_eq!(e.span_dim, 1);
        assert_eq!(e.form, p("x1^2", 3));
        let e = eliminate_linear(&p("(x1+2*x2-x3)^2*x4 + x4^3", 4)).unwrap();
        assert_eq!(e.span_dim, 2);
        assert!(!e.form.involves(2) && !e.form.involves(3));
    }
}
