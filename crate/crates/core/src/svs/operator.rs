use crate::error::{GnError, Result};
use crate::hessian::FormSystem;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};

use crate::poly::intpoly::IntPoly;
use crate::poly::{int, MultiPoly, Rational};

fn check_operator_arity(h: &FormSystem, f: &MultiPoly) -> Result<()> {
    if h.len() != f.nvars() || h.nvars() != f.nvars() {
        return Err(GnError::Dimension(format!(
            "system of {} forms in {} variables applied to a polynomial in {} variables",
            h.len(),
            h.nvars(),
            f.nvars()
        )));
    }
    Ok(())
}

/// `D(h) f = sum_j h_j * df/dx_j`.
pub fn apply_operator(h: &FormSystem, f: &MultiPoly) -> Result<MultiPoly> {
    check_operator_arity(h, f)?;
    Ok(apply_unchecked(h.forms(), f))
}

pub(crate) fn apply_unchecked(h: &[MultiPoly], f: &MultiPoly) -> MultiPoly {
    h.iter().enumerate().filter(|(_, hj)| !hj.is_zero()).fold(
        MultiPoly::zero(f.nvars()),
        |acc, (j, hj)| {
            let d = f.diff(j);
            if d.is_zero() {
                acc
            } else {
                acc + hj * &d
            }
        },
    )
}

/// Direction of a Taylor coefficient: a block of fresh variables
/// `y_1..y_n` (placed after `x_1..x_n`) or a form system substituted for
/// them.
#[derive(Debug, Clone, Copy)]
pub enum Direction<'a> {
    Fresh,
    System(&'a FormSystem),
}

/// `f^(j)(x, y) = (1/j!) D_x(y)^j f(x)`, where `y` does not depend on `x`.
///
/// With [`Direction::Fresh`] the result lives in `2n` variables; with a
/// system `h` it is `f^(j)(x, h)` in `n` variables.
pub fn taylor_coefficient(f: &MultiPoly, direction: Direction<'_>, j: u32) -> Result<MultiPoly> {
    let n = f.nvars();
    match direction {
        Direction::Fresh => {
            let mut current = f.extend(2 * n);
            for k in 0..j {
                let mut next = MultiPoly::zero(2 * n);
                for i in 0..n {
                    let d = current.diff(i);
                    if !d.is_zero() {
                        next = next + &MultiPoly::var(2 * n, n + i) * &d;
                    }
                }
                current = next.scale(&int(i64::from(k) + 1).recip());
                if current.is_zero() {
                    break;
                }
            }
            Ok(current)
        }
        Direction::System(h) => {
            check_operator_arity(h, f)?;
            Ok(taylor_expansion(f, h.forms(), j, j)
                .pop()
                .expect("one order"))
        }
    }
}

/// `f^(j)(x, h)` for `j` in `lo..=hi`, from
/// `f(x + t h) = sum_alpha t^|alpha| (d^alpha f)(x) h^alpha / alpha!`.
/// Each multi-index is visited once, with nondecreasing variable indices.
/// The sums run over integers: with `f = F / a` and `h = H / b`,
/// `j! a b^j f^(j) = sum_|alpha|=j (j! / alpha!) (d^alpha F) H^alpha`.
pub(crate) fn taylor_expansion(f: &MultiPoly, h: &[MultiPoly], lo: u32, hi: u32) -> Vec<MultiPoly> {
    struct Walk {
        h: Vec<IntPoly>,
        lo: u32,
        hi: u32,
        out: Vec<IntPoly>,
    }

    impl Walk {
        // `weight` is depth!/alpha!, `run` the multiplicity of index `last`.
        fn visit(
            &mut self,
            deriv: &IntPoly,
            hpow: &IntPoly,
            weight: &BigInt,
            depth: u32,
            last: usize,
            run: u32,
        ) {
            if depth >= self.lo {
                let term = deriv.mul(hpow);
                self.out[(depth - self.lo) as usize].add_scaled(&term, weight);
            }
            if depth == self.hi {
                return;
            }
            for i in last..self.h.len() {
                if self.h[i].is_zero() {
                    continue;
                }
                let d = deriv.diff(i);
                if d.is_zero() {
                    continue;
                }
                let m = if i == last { run + 1 } else { 1 };
                let w = weight * BigInt::from(depth + 1) / BigInt::from(m);
                let next = hpow.mul(&self.h[i]);
                self.visit(&d, &next, &w, depth + 1, i, m);
            }
        }
    }

    let n = f.nvars();
    let (big_f, a) = IntPoly::from_poly(f);
    let b = h
        .iter()
        .fold(BigInt::one(), |acc, hi| acc.lcm(&IntPoly::from_poly(hi).1));
    let scaled: Vec<IntPoly> = h
        .iter()
        .map(|hi| IntPoly::from_poly(&hi.scale(&Rational::from_integer(b.clone()))).0)
        .collect();
    let mut walk = Walk {
        h: scaled,
        lo,
        hi,
        out: vec![IntPoly::default(); (hi - lo + 1) as usize],
    };
    walk.visit(&big_f, &IntPoly::one(n), &BigInt::one(), 0, 0, 0);
    let mut factorial: BigInt = (1..=lo).map(BigInt::from).product();
    let mut out = Vec::with_capacity(walk.out.len());
    for (j, c) in (lo..=hi).zip(&walk.out) {
        if j > lo {
            factorial *= BigInt::from(j);
        }
        let den = &factorial * &a * Pow::pow(&b, j);
        out.push(c.to_poly(n, &den));
    }
    out
}

/// Membership in `sol(h; K[x])`: `D(h) f = 0`.
pub fn is_in_sol(h: &FormSystem, f: &MultiPoly) -> Result<bool> {
    Ok(apply_operator(h, f)?.is_zero())
}

/// Every component of `h` lies in `sol(h; K[x])`.
pub fn is_self_vanishing(h: &FormSystem) -> bool {
    if h.len() != h.nvars() {
        return false;
    }
    h.forms()
        .iter()
        .all(|hk| apply_unchecked(h.forms(), hk).is_zero())
}

/// `f(x + t h(x))` in `K[x][t]`, with `t` as the last of `n + 1` variables.
pub fn shift(f: &MultiPoly, h: &FormSystem) -> Result<MultiPoly> {
    check_operator_arity(h, f)?;
    let n = f.nvars();
    let top = f.total_degree().finite().unwrap_or(0);
    let t = MultiPoly::var(n + 1, n);
    Ok(taylor_expansion(f, h.forms(), 0, top)
        .into_iter()
        .zip(0..)
        .fold(MultiPoly::zero(n + 1), |acc, (c, j)| {
            acc + &c.extend(n + 1) * &t.pow(j)
        }))
}

/// `f(x + t h) = f(x)` identically in `t`: every positive power of `t`
/// has a zero coefficient.
pub fn is_shift_invariant(f: &MultiPoly, h: &FormSystem) -> Result<bool> {
    check_operator_arity(h, f)?;
    let top = f.total_degree().finite().unwrap_or(0);
    if top == 0 {
        return Ok(true);
    }
    Ok(taylor_expansion(f, h.forms(), 1, top)
        .iter()
        .all(MultiPoly::is_zero))
}

/// `h_j(h_1, ..., h_n) = 0` for every `j`; vacuous for constant systems.
pub fn self_substitution_vanishes(h: &FormSystem) -> Result<bool> {
    if h.is_constant() {
        return Ok(true);
    }
    for hj in h.forms() {
        if !hj.compose(h.forms())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
