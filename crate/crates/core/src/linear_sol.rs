//! Solution rings of constant-coefficient operator systems
//! `D(a^(1)), ..., D(a^(k))`, generated by the maximal minors of the matrix
//! bordered with the row of variables.

use num_traits::Zero;

use crate::error::{GnError, Result};
use crate::poly::{coefficient_matrix, MultiPoly, PolyMatrix, QMatrix, Rational};

/// `k x n` rational matrix of rank `k < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantSystem {
    a: QMatrix,
}

impl ConstantSystem {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let a = QMatrix::from_rows(rows)?;
        let (k, n) = (a.rows(), a.cols());
        if k == 0 {
            return Err(GnError::Dimension(
                "operator system needs at least one row".into(),
            ));
        }
        if k >= n {
            return Err(GnError::Dimension(format!(
                "a {k}x{n} system needs fewer rows than columns"
            )));
        }
        if a.rank() != k {
            return Err(GnError::DegenerateMatrix(
                "rows are linearly dependent".into(),
            ));
        }
        Ok(ConstantSystem { a })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.a
    }

    pub fn k(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }
}

/// Lexicographically ordered `size`-subsets of `0..n`.
pub(crate) fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(
        start: usize,
        n: usize,
        size: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < size - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, size, current, out);
            current.pop();
        }
    }
    rec(0, n, size, &mut current, &mut out);
    out
}

/// All `(k+1) x (k+1)` minors of `A` bordered below by `(x_1, ..., x_n)`,
/// one per column subset in lexicographic order. Zero minors are kept so
/// the list is indexed by subsets.
pub fn sol_generators(system: &ConstantSystem) -> Vec<MultiPoly> {
    let (k, n) = (system.k(), system.n());
    let bordered = PolyMatrix::from_fn(k + 1, n, n, |i, j| {
        if i < k {
            MultiPoly::constant(n, system.a.get(i, j).clone())
        } else {
            MultiPoly::var(n, j)
        }
    });
    let rows: Vec<usize> = (0..=k).collect();
    combinations(n, k + 1)
        .iter()
        .map(|cols| {
            bordered
                .submatrix(&rows, cols)
                .determinant()
                .expect("square submatrix")
        })
        .collect()
}

/// Dimension of the linear span of a list of polynomials.
pub fn span_dimension(polys: &[MultiPoly]) -> usize {
    if polys.iter().all(MultiPoly::is_zero) {
        return 0;
    }
    coefficient_matrix(polys).rank()
}

/// `D(a) f = 0` for every row `a` of the system.
pub fn sol_membership(f: &MultiPoly, system: &ConstantSystem) -> Result<bool> {
    let n = system.n();
    if f.nvars() != n {
        return Err(GnError::Dimension(format!(
            "polynomial in {} variables against a system in {n} variables",
            f.nvars()
        )));
    }
    let partials = f.gradient();
    for i in 0..system.k() {
        let mut acc = MultiPoly::zero(n);
        for (j, d) in partials.iter().enumerate() {
            let c = system.a.get(i, j);
            if !c.is_zero() && !d.is_zero() {
                acc = acc + d.scale(c);
            }
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_polynomial;
    use crate::poly::int;

    fn system(rows: &[&[i64]]) -> ConstantSystem {
        ConstantSystem::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn p(s: &str, n: usize) -> MultiPoly {
        parse_polynomial(s, Some(n)).unwrap()
    }

    #[test]
    fn coordinate_rows() {
        let s = system(&[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(sol_generators(&s), vec![p("x3", 3)]);
        let s = system(&[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]]);
        let gens = sol_generators(&s);
        assert_eq!(gens.len(), 10);
        let nonzero: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        assert_eq!(nonzero, vec![p("x3", 5), p("x4", 5), p("x5", 5)]);
    }

    #[test]
    fn single_row() {
        let s = system(&[&[1, 1]]);
        assert_eq!(sol_generators(&s), vec![p("x2 - x1", 2)]);
        assert!(sol_membership(&p("(x2-x1)^3", 2), &s).unwrap());
    }

    #[test]
    fn membership() {
        let s = system(&[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]]);
        assert!(sol_membership(&p("x3^2*x4", 5), &s).unwrap());
        assert!(!sol_membership(&p("x1", 5), &s).unwrap());
        assert!(sol_membership(&p("x1", 4), &system(&[&[0, 1, 0, 0]])).unwrap());
        assert!(sol_membership(&p("x1", 3), &s).is_err());
    }

    #[test]
    fn construction_errors() {
        assert!(ConstantSystem::new(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).is_err());
        assert!(ConstantSystem::new(vec![vec![int(1), int(0)], vec![int(0), int(1)]]).is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn span_has_dimension_n_minus_k() {
        let s = system(&[&[1, 2, 3, 4], &[0, 1, -1, 2]]);
        let gens = sol_generators(&s);
        assert_eq!(span_dimension(&gens), 2);
        assert!(gens.iter().all(|g| sol_membership(g, &s).unwrap()));
    }
}
