use super::operator::{apply_unchecked, is_self_vanishing};
use crate::error::{GnError, Result};
use crate::hessian::{transcendence_degree, FormSystem};
use crate::poly::{coefficient_matrix, MultiPoly, QMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankBoundReport {
    pub jacobian_rank: usize,
    pub nvars: usize,
    /// `jacobian_rank <= nvars / 2`.
    pub satisfied: bool,
}

/// Compares the Jacobian rank of a self-vanishing system with `n/2`.
///
/// The bound is guaranteed only for systems that arise from forms with
/// vanishing Hessian; arbitrary self-vanishing systems can exceed it.
pub fn rank_bound_report(h: &FormSystem) -> Result<RankBoundReport> {
    if !is_self_vanishing(h) {
        return Err(GnError::Domain("system is not self-vanishing".into()));
    }
    let jacobian_rank = transcendence_degree(h);
    let nvars = h.nvars();
    Ok(RankBoundReport {
        jacobian_rank,
        nvars,
        satisfied: 2 * jacobian_rank <= nvars,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearClosure {
    /// Dimension of the span of the components, minus one.
    pub s: usize,
    /// Whether `D(w) h_k = 0` for every basis vector `w` and every `k`.
    pub holds: bool,
    /// Reduced echelon basis of the span of the coefficient vectors of `h`.
    pub basis: Vec<Vec<Rational>>,
}

impl LinearClosure {
    /// Basis of the linear forms vanishing on the span.
    pub fn annihilator(&self, n: usize) -> Vec<Vec<Rational>> {
        if self.basis.is_empty() {
            return (0..n)
                .map(|i| {
                    let mut v = vec![Rational::from_integer(0.into()); n];
                    v[i] = Rational::from_integer(1.into());
                    v
                })
                .collect();
        }
        QMatrix::from_rows(self.basis.clone())
            .expect("rectangular")
            .nullspace()
    }
}

/// Writing `h = sum_m v_m x^m` with constant vectors `v_m`, computes a basis
/// of the span of the `v_m` (the cone over the linear closure of the image
/// of `x -> h(x)`) and tests whether each basis direction annihilates every
/// component of `h`.
pub fn linear_closure_structure(h: &FormSystem) -> Result<LinearClosure> {
    if !is_self_vanishing(h) {
        return Err(GnError::Domain("system is not self-vanishing".into()));
    }
    let n = h.nvars();
    let rref = coefficient_matrix(h.forms()).transpose().rref();
    let basis: Vec<Vec<Rational>> = (0..rref.pivots.len())
        .map(|i| rref.matrix.row(i).to_vec())
        .collect();
    let holds = basis.iter().all(|w| {
        let direction: Vec<MultiPoly> = w
            .iter()
            .map(|c| MultiPoly::constant(n, c.clone()))
            .collect();
        h.forms()
            .iter()
            .all(|hk| apply_unchecked(&direction, hk).is_zero())
    });
    Ok(LinearClosure {
        s: basis.len() - 1,
        holds,
        basis,
    })
}

/// Projective dimension of the closure of the image of `x -> h(x)`:
/// transcendence degree minus one, and `0` for constant systems.
pub fn image_dimension(h: &FormSystem) -> usize {
    if h.is_constant() {
        return 0;
    }
    transcendence_degree(h).saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_polynomial;
    use crate::poly::int;

    fn sys(items: &[&str], n: usize) -> FormSystem {
        FormSystem::new(
            items
                .iter()
                .map(|s| parse_polynomial(s, Some(n)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn canonical_h() -> FormSystem {
        sys(&["0", "0", "x2^2", "-2*x1*x2", "x1^2"], 5)
    }

    fn unit(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|j| int(i64::from(i == j))).collect()
    }

    #[test]
    fn canonical_rank_bound() {
        let r = rank_bound_report(&canonical_h()).unwrap();
        assert_eq!(r.jacobian_rank, 2);
        assert!(r.satisfied);
        let c = rank_bound_report(&sys(&["1", "0", "2"], 3)).unwrap();
        assert_eq!(c.jacobian_rank, 0);
        assert!(c.satisfied);
    }

    #[test]
    fn rank_bound_needs_self_vanishing() {
        assert!(rank_bound_report(&sys(&["x2", "x1"], 2)).is_err());
    }

    #[test]
    fn canonical_linear_closure() {
        let lc = linear_closure_structure(&canonical_h()).unwrap();
        assert_eq!(lc.s, 2);
        assert!(lc.holds);
        assert_eq!(lc.basis, vec![unit(5, 2), unit(5, 3), unit(5, 4)]);
        assert_eq!(lc.annihilator(5), vec![unit(5, 0), unit(5, 1)]);
    }

    #[test]
    fn constant_linear_closure() {
        let lc = linear_closure_structure(&sys(&["1", "0", "2"], 3)).unwrap();
        assert_eq!(lc.s, 0);
        assert!(lc.holds);
    }

    #[test]
    fn image_dimensions() {
        assert_eq!(image_dimension(&sys(&["1", "0", "2"], 3)), 0);
        assert_eq!(image_dimension(&canonical_h()), 1);
        let h = sys(&["x1^2", "x1*x2", "x2^2", "0"], 4);
        assert_eq!(image_dimension(&h), 1);
    }
}
