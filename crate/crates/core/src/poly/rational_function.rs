use std::fmt;

use super::gcd::gcd;
use super::MultiPoly;
use crate::error::{GnError, Result};

/// Quotient of two polynomials kept in lowest terms with a monic
/// denominator (graded-lex leading coefficient 1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(GnError::Dimension(
                "numerator and denominator arity differ".into(),
            ));
        }
        if den.is_zero() {
            return Err(GnError::UndefinedInput("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: MultiPoly::one(n),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den).expect("denominator is nonzero");
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides"),
                    den.exact_div(&g).expect("gcd divides"),
                )
            }
        };
        let lc = den.leading_coefficient().recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: MultiPoly::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial value when the denominator is 1.
    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.den == other.den {
            return Self::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        let num = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        Self::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(GnError::UndefinedInput("division by zero".into()));
        }
        Self::new(
            self.num.checked_mul(&other.den)?,
            self.den.checked_mul(&other.num)?,
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

/// Substitutes rational-function images for the variables of `p`.
///
/// All images share one variable count `m`; the result lives in `m`
/// variables and is returned in lowest terms. Polynomial images produce a
/// polynomial result without any GCD work.
pub fn substitute(p: &MultiPoly, images: &[RationalFunction]) -> Result<RationalFunction> {
    if images.len() != p.nvars() {
        return Err(GnError::Dimension(format!(
            "{} images for {} variables",
            images.len(),
            p.nvars()
        )));
    }
    let target = images.first().map_or(0, RationalFunction::nvars);
    if images.iter().any(|r| r.nvars() != target) {
        return Err(GnError::Dimension(
            "substitution images have different variable counts".into(),
        ));
    }
    if images.iter().all(RationalFunction::is_polynomial) {
        let polys: Vec<MultiPoly> = images.iter().map(|r| r.num.clone()).collect();
        return Ok(RationalFunction::from_poly(p.compose(&polys)?));
    }

    // Clear denominators: p(n_i / d_i) * prod d_i^{deg_i p}.
    let degrees: Vec<u32> = (0..p.nvars()).map(|i| p.degree_in(i)).collect();
    let num_powers: Vec<Vec<MultiPoly>> = images
        .iter()
        .zip(&degrees)
        .map(|(r, &d)| powers(&r.num, d))
        .collect();
    let den_powers: Vec<Vec<MultiPoly>> = images
        .iter()
        .zip(&degrees)
        .map(|(r, &d)| powers(&r.den, d))
        .collect();
    let mut num = MultiPoly::zero(target);
    for (m, c) in p.terms() {
        let mut t = MultiPoly::constant(target, c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            let d = degrees[i];
            if e > 0 {
                t = &t * &num_powers[i][e as usize];
            }
            if d > e {
                t = &t * &den_powers[i][(d - e) as usize];
            }
        }
        num = num + t;
    }
    let mut den = MultiPoly::one(target);
    for (i, &d) in degrees.iter().enumerate() {
        if d > 0 {
            den = &den * &den_powers[i][d as usize];
        }
    }
    RationalFunction::new(num, den)
}

fn powers(p: &MultiPoly, top: u32) -> Vec<MultiPoly> {
    let mut v = Vec::with_capacity(top as usize + 1);
    v.push(MultiPoly::one(p.nvars()));
    for k in 1..=top as usize {
        let next = &v[k - 1] * p;
        v.push(next);
    }
    v
}
