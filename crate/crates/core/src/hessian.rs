//! Hessian and Jacobian matrices, the zero-Hessian predicate and
//! transcendence degrees of form systems.

use crate::error::{GnError, Result};
use crate::poly::{certified_rank, Degree, MultiPoly, PolyMatrix};

/// Vector of homogeneous forms of one common degree in a fixed number of
/// variables. Individual entries may vanish, the vector as a whole may not.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormSystem {
    nvars: usize,
    forms: Vec<MultiPoly>,
    degree: u32,
}

impl FormSystem {
    pub fn new(forms: Vec<MultiPoly>) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(GnError::Domain("empty form system".into()));
        };
        let nvars = first.nvars();
        if forms.iter().any(|p| p.nvars() != nvars) {
            return Err(GnError::Dimension(
                "forms have different variable counts".into(),
            ));
        }
        let mut degree = None;
        for (i, p) in forms.iter().enumerate() {
            match p.homogeneous_degree() {
                None => {
                    return Err(GnError::Domain(format!(
                        "component {} is not homogeneous",
                        i + 1
                    )))
                }
                Some(Degree::MinusInfinity) => {}
                Some(Degree::Finite(d)) => match degree {
                    None => degree = Some(d),
                    Some(e) if e != d => {
                        return Err(GnError::Domain(format!(
                            "components have degrees {e} and {d}"
                        )))
                    }
                    _ => {}
                },
            }
        }
        let Some(degree) = degree else {
            return Err(GnError::Domain("form system is identically zero".into()));
        };
        Ok(FormSystem {
            nvars,
            forms,
            degree,
        })
    }

    /// The partial derivatives of a homogeneous `f` of positive degree.
    pub fn gradient(f: &MultiPoly) -> Result<Self> {
        if !f.is_homogeneous() {
            return Err(GnError::Domain("form is not homogeneous".into()));
        }
        Self::new(f.gradient())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[MultiPoly] {
        &self.forms
    }

    pub fn get(&self, i: usize) -> &MultiPoly {
        &self.forms[i]
    }

    /// Common degree of the nonzero components.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    pub fn into_forms(self) -> Vec<MultiPoly> {
        self.forms
    }
}

fn check_hessian_input(f: &MultiPoly) -> Result<()> {
    match f.homogeneous_degree() {
        None => Err(GnError::Domain("form is not homogeneous".into())),
        Some(Degree::Finite(d)) if d >= 2 => Ok(()),
        Some(d) => Err(GnError::Domain(format!(
            "Hessian needs degree at least 2, got {d}"
        ))),
    }
}

/// Symmetric matrix of second partials of a homogeneous `f` of degree >= 2.
pub fn hessian_matrix(f: &MultiPoly) -> Result<PolyMatrix> {
    check_hessian_input(f)?;
    let n = f.nvars();
    let grad = f.gradient();
    let mut entries = vec![MultiPoly::zero(n); n * n];
    for i in 0..n {
        for j in i..n {
            let e = grad[i].diff(j);
            entries[j * n + i] = e.clone();
            entries[i * n + j] = e;
        }
    }
    PolyMatrix::new(n, n, entries)
}

/// Decides exactly whether `det(d^2 f / dx_i dx_j)` vanishes identically,
/// through the certified rank: a nonsingular specialization proves the
/// determinant nonzero, a verified polynomial null vector proves it zero.
pub fn has_zero_hessian(f: &MultiPoly) -> Result<bool> {
    let h = hessian_matrix(f)?;
    Ok(certified_rank(&h) < f.nvars())
}

/// `n` minus the rank of the Hessian over the rational function field.
pub fn hessian_corank(f: &MultiPoly) -> Result<usize> {
    let h = hessian_matrix(f)?;
    Ok(f.nvars() - certified_rank(&h))
}

/// Entry `(i, j)` is `d f_i / d x_j`.
pub fn jacobian_matrix(s: &FormSystem) -> PolyMatrix {
    let n = s.nvars();
    PolyMatrix::from_fn(s.len(), n, n, |i, j| s.get(i).diff(j))
}

/// Rank of the Jacobian, which equals the transcendence degree of the field
/// generated by the forms.
pub fn transcendence_degree(s: &FormSystem) -> usize {
    certified_rank(&jacobian_matrix(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_polynomial;

    fn p(s: &str, n: usize) -> MultiPoly {
        parse_polynomial(s, Some(n)).unwrap()
    }

    #[test]
    fn hessian_of_x1x2() {
        let h = hessian_matrix(&p("x1*x2", 2)).unwrap();
        assert_eq!(h.get(0, 0), &MultiPoly::zero(2));
        assert_eq!(h.get(0, 1), &MultiPoly::one(2));
        assert_eq!(h.get(1, 0), &MultiPoly::one(2));
    }

    #[test]
    fn hessian_of_cube_of_sum() {
        let h = hessian_matrix(&p("(x1+x2)^3", 2)).unwrap();
        let six = p("6*x1 + 6*x2", 2);
        assert!(h.entries().iter().all(|e| *e == six));
    }

    #[test]
    fn canonical_cubic_hessian_block() {
        let h = hessian_matrix(&p("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5)).unwrap();
        assert!(h.is_symmetric());
        for i in 2..5 {
            for j in 2..5 {
                assert!(h.get(i, j).is_zero());
            }
        }
        assert_eq!(h.get(0, 0), &p("2*x3", 5));
        assert_eq!(h.get(1, 4), &p("2*x2", 5));
    }

    #[test]
    fn rejects_bad_hessian_input() {
        assert!(matches!(
            hessian_matrix(&p("x1 + x2^2", 2)),
            Err(GnError::Domain(_))
        ));
        assert!(matches!(
            hessian_matrix(&p("x1", 2)),
            Err(GnError::Domain(_))
        ));
    }

    #[test]
    fn zero_hessian_examples() {
        assert!(has_zero_hessian(&p("(x1+x2)^4", 2)).unwrap());
        assert!(!has_zero_hessian(&p("x1^3+x2^3+x3^3", 3)).unwrap());
        assert!(has_zero_hessian(&p("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5)).unwrap());
    }

    #[test]
    fn fermat_cubic_determinant() {
        let h = hessian_matrix(&p("x1^3+x2^3+x3^3", 3)).unwrap();
        assert_eq!(h.determinant().unwrap(), p("216*x1*x2*x3", 3));
    }

    #[test]
    fn zero_hessian_in_six_variables_uses_rank() {
        let f = p("x1^2*x3 + x1*x2*x4 + x2^2*x5 + x6^3", 6);
        assert!(has_zero_hessian(&f).unwrap());
        let g = p("x1^3 + x2^3 + x3^3 + x4^3 + x5^3 + x6^3", 6);
        assert!(!has_zero_hessian(&g).unwrap());
    }

    #[test]
    fn jacobians() {
        let s = FormSystem::new(vec![p("x1", 2), p("x2", 2)]).unwrap();
        assert_eq!(jacobian_matrix(&s), PolyMatrix::identity(2, 2));
        let s = FormSystem::new(vec![p("x1^2", 2), p("x1*x2", 2)]).unwrap();
        let j = jacobian_matrix(&s);
        assert_eq!(j.row(0), &[p("2*x1", 2), MultiPoly::zero(2)]);
        assert_eq!(j.row(1), &[p("x2", 2), p("x1", 2)]);
        let f = p("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5);
        let grad = FormSystem::gradient(&f).unwrap();
        assert_eq!(jacobian_matrix(&grad), hessian_matrix(&f).unwrap());
    }

    #[test]
    fn transcendence_degrees() {
        let coords = FormSystem::new((0..4).map(|i| MultiPoly::var(4, i)).collect()).unwrap();
        assert_eq!(transcendence_degree(&coords), 4);
        let grad = FormSystem::gradient(&p("(x1+x2)^5", 2)).unwrap();
        assert_eq!(transcendence_degree(&grad), 1);
    }

    #[test]
    fn canonical_svs_has_transcendence_degree_two() {
        // Rows (0,2x2), (-2x2,-2x1), (2x1,0) of the Jacobian: the minor on
        // rows 3 and 5 is -4 x1 x2, and there are only two nonzero columns.
        let s = FormSystem::new(vec![
            MultiPoly::zero(5),
            MultiPoly::zero(5),
            p("x2^2", 5),
            p("-2*x1*x2", 5),
            p("x1^2", 5),
        ])
        .unwrap();
        let j = jacobian_matrix(&s);
        assert_eq!(
            j.submatrix(&[2, 4], &[0, 1]).determinant().unwrap(),
            p("-4*x1*x2", 5)
        );
        assert_eq!(transcendence_degree(&s), 2);
    }

    #[test]
    fn form_system_invariants() {
        assert!(FormSystem::new(vec![MultiPoly::zero(2), MultiPoly::zero(2)]).is_err());
        assert!(FormSystem::new(vec![p("x1", 2), p("x2^2", 2)]).is_err());
        assert!(FormSystem::new(vec![p("x1", 2), p("x1", 3)]).is_err());
        let s = FormSystem::new(vec![MultiPoly::zero(2), p("x1*x2", 2)]).unwrap();
        assert_eq!(s.degree(), 2);
    }
}
