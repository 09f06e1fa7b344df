//! Polynomials with integer coefficients in a hash map, for long exact
//! accumulations where reducing a rational after every step dominates.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Monomial, MultiPoly, Rational};

#[derive(Debug, Clone, Default)]
pub(crate) struct IntPoly {
    terms: HashMap<Monomial, BigInt>,
}

impl IntPoly {
    /// `(P, D)` with `p = P / D` and `P` integral.
    pub(crate) fn from_poly(p: &MultiPoly) -> (IntPoly, BigInt) {
        let den = p
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = p
            .terms()
            .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
            .collect();
        (IntPoly { terms }, den)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = IntPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// `self += c * other`.
    pub(crate) fn add_scaled(&mut self, other: &IntPoly, c: &BigInt) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self / den` as a rational polynomial.
    pub(crate) fn to_poly(&self, nvars: usize, den: &BigInt) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), Rational::new(c.clone(), den.clone()));
        }
        p
    }

    pub(crate) fn diff(&self, index: usize) -> IntPoly {
        let mut out = IntPoly::default();
        for (m, c) in &self.terms {
            let e = m.exp(index);
            if e > 0 {
                out.add_term(m.with_exp(index, e - 1), c * BigInt::from(e));
            }
        }
        out
    }

    pub(crate) fn one(nvars: usize) -> IntPoly {
        let mut out = IntPoly::default();
        out.add_term(Monomial::one(nvars), BigInt::one());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_polynomial;

    #[test]
    fn products_match_rational_arithmetic() {
        let a = parse_polynomial("1/2*x1 - 2/3*x2 + 5", Some(2)).unwrap();
        let b = parse_polynomial("3/4*x1^2 + x2/5", Some(2)).unwrap();
        let (ia, da) = IntPoly::from_poly(&a);
        let (ib, db) = IntPoly::from_poly(&b);
        assert_eq!(ia.mul(&ib).to_poly(2, &(da * db)), &a * &b);
        let mut acc = IntPoly::default();
        acc.add_scaled(&ia, &BigInt::from(2));
        acc.add_scaled(&ia, &BigInt::from(-2));
        assert!(acc.is_zero());
    }
}
