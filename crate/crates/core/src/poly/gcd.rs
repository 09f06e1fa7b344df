//! Multivariate GCD over the rationals.
//!
//! Recursive content / primitive-part decomposition with respect to one
//! main variable at a time; the univariate step runs a subresultant
//! pseudo-remainder sequence whose coefficients live in the polynomial ring
//! of the remaining variables.

use super::MultiPoly;
use crate::error::{GnError, Result};

/// GCD of `a` and `b`, primitive over the integers with positive leading
/// coefficient. Coprime inputs give the constant `1`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    if a.nvars() != b.nvars() {
        return Err(GnError::Dimension(format!(
            "gcd of polynomials in {} and {} variables",
            a.nvars(),
            b.nvars()
        )));
    }
    if a.is_zero() && b.is_zero() {
        return Err(GnError::UndefinedInput("gcd(0, 0)".into()));
    }
    Ok(gcd_nonzero(a, b))
}

/// GCD of a list; zero entries are skipped. Errors when every entry is zero.
pub fn gcd_list(polys: &[MultiPoly]) -> Result<MultiPoly> {
    let mut acc: Option<MultiPoly> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => p.primitive(),
            Some(g) => {
                if g.nvars() != p.nvars() {
                    return Err(GnError::Dimension("gcd_list arity mismatch".into()));
                }
                gcd_nonzero(&g, p)
            }
        });
        if acc.as_ref().is_some_and(MultiPoly::is_constant) {
            break;
        }
    }
    acc.ok_or_else(|| GnError::UndefinedInput("gcd of zero polynomials".into()))
}

fn gcd_nonzero(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(n);
    }
    if a.scalar_ratio(b).is_some() {
        return a.primitive();
    }
    let var = (0..n)
        .find(|&i| a.involves(i) || b.involves(i))
        .expect("non-constant polynomial involves a variable");

    let cont_a = content_in(a, var);
    let cont_b = content_in(b, var);
    let cont = gcd_nonzero(&cont_a, &cont_b);
    let pp_a = a.exact_div(&cont_a).expect("content divides");
    let pp_b = b.exact_div(&cont_b).expect("content divides");

    if pp_a.degree_in(var) == 0 || pp_b.degree_in(var) == 0 {
        return cont.primitive();
    }
    let g = subresultant_gcd(pp_a, pp_b, var);
    let g = if g.degree_in(var) == 0 {
        MultiPoly::one(n)
    } else {
        let c = content_in(&g, var);
        g.exact_div(&c).expect("content divides")
    };
    (&cont * &g).primitive()
}

/// GCD of the coefficients of `p` viewed as a polynomial in `x_{var+1}`.
fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let coeffs = p.coefficients_in(var);
    let mut acc: Option<MultiPoly> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = Some(match acc {
            None => c.primitive(),
            Some(g) => gcd_nonzero(&g, c),
        });
        if acc.as_ref().is_some_and(MultiPoly::is_constant) {
            return MultiPoly::one(p.nvars());
        }
    }
    acc.unwrap_or_else(|| MultiPoly::one(p.nvars()))
}

fn leading_coeff_in(p: &MultiPoly, var: usize) -> MultiPoly {
    p.coefficients_in(var)
        .pop()
        .unwrap_or_else(|| MultiPoly::zero(p.nvars()))
}

fn var_power(n: usize, var: usize, e: u32) -> MultiPoly {
    MultiPoly::var(n, var).pow(e)
}

/// Pseudo-remainder of `a` by `b` in `x_{var+1}`:
/// `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let n = a.nvars();
    let db = b.degree_in(var);
    let lcb = leading_coeff_in(b, var);
    let da = a.degree_in(var);
    if a.is_zero() || da < db {
        return a.clone();
    }
    let mut steps = da - db + 1;
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = leading_coeff_in(&r, var);
        let s = &lr * &var_power(n, var, dr - db);
        r = &(&lcb * &r) - &(&s * b);
        steps -= 1;
    }
    if steps > 0 {
        r = &lcb.pow(steps) * &r;
    }
    r
}

/// Last nonzero element of the subresultant PRS of two primitive
/// polynomials of positive degree in `x_{var+1}`.
fn subresultant_gcd(a: MultiPoly, b: MultiPoly, var: usize) -> MultiPoly {
    let n = a.nvars();
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    let mut g = MultiPoly::one(n);
    let mut h = MultiPoly::one(n);
    loop {
        let delta = a.degree_in(var) - b.degree_in(var);
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(var) == 0 {
            return MultiPoly::one(n);
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r
            .exact_div(&divisor)
            .expect("subresultant division is exact");
        g = leading_coeff_in(&a, var);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact"),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn monomial_gcd() {
        let a = &x(2, 0).pow(2) * &x(2, 1);
        let b = &x(2, 0) * &x(2, 1).pow(2);
        assert_eq!(gcd(&a, &b).unwrap(), &x(2, 0) * &x(2, 1));
    }

    #[test]
    fn difference_of_squares_gcd() {
        let a = &x(2, 0).pow(2) - &x(2, 1).pow(2);
        let b = &x(2, 0) + &x(2, 1);
        assert_eq!(gcd(&a, &b).unwrap(), b);
    }

    #[test]
    fn coprime_minors_of_canonical_matrix() {
        // The three 2x2 minors of [[0,-2x2,2x1],[2x2,-2x1,0]] up to sign.
        let n = 2;
        let four = MultiPoly::from_int(n, 4);
        let minors = vec![
            &four * &x(n, 1).pow(2),
            -(&four * &(&x(n, 0) * &x(n, 1))),
            &four * &x(n, 0).pow(2),
        ];
        assert!(gcd_list(&minors).unwrap().is_one());
    }

    #[test]
    fn both_zero_is_undefined() {
        let z = MultiPoly::zero(3);
        assert!(matches!(gcd(&z, &z), Err(GnError::UndefinedInput(_))));
    }

    #[test]
    fn gcd_with_zero_is_primitive_other() {
        let a = x(2, 0).scale(&crate::poly::int(-6));
        assert_eq!(gcd(&a, &MultiPoly::zero(2)).unwrap(), x(2, 0));
    }

    #[test]
    fn multivariate_common_factor() {
        let n = 3;
        let common = &(&x(n, 0) * &x(n, 1)) - &x(n, 2).pow(2);
        let a = &common * &(&x(n, 0) + &x(n, 2));
        let b = &common * &(&x(n, 1).pow(2) + &x(n, 0));
        assert_eq!(gcd(&a, &b).unwrap(), common.primitive());
    }
}
