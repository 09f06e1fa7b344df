//! Arithmetic modulo the Mersenne prime `2^61 - 1`, used to find candidate
//! kernels and lower rank bounds that are then confirmed over the
//! rationals.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{MultiPoly, Rational};

pub(crate) const P: u64 = (1 << 61) - 1;

#[inline]
pub(crate) fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub(crate) fn mul(a: u64, b: u64) -> u64 {
    let w = u128::from(a) * u128::from(b);
    let lo = (w as u64) & P;
    let hi = (w >> 61) as u64;
    add(lo, hi)
}

pub(crate) fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub(crate) fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    let m = (n % BigInt::from(P)).to_i128().expect("reduced below 2^61");
    if m < 0 {
        (m + i128::from(P)) as u64
    } else {
        m as u64
    }
}

/// Image of a rational number, or `None` when `P` divides its denominator.
pub(crate) fn from_rational(c: &Rational) -> Option<u64> {
    let d = reduce_int(c.denom());
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(c.numer()), inv(d)))
}

/// Value of `p` at a point of `F_P^n`; `None` if a coefficient has no image.
pub(crate) fn eval(p: &MultiPoly, point: &[u64]) -> Option<u64> {
    let mut acc = 0;
    for (m, c) in p.terms() {
        let mut t = from_rational(c)?;
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                t = mul(t, pow(point[i], u64::from(e)));
            }
        }
        acc = add(acc, t);
    }
    Some(acc)
}

/// Smallest-height rational congruent to `a`, if numerator and denominator
/// both fit below `sqrt(P / 2)`.
pub(crate) fn reconstruct(a: u64) -> Option<Rational> {
    let bound: i128 = 1_073_741_823; // floor(sqrt((2^61 - 1) / 2))
    let (mut r0, mut r1) = (i128::from(P), i128::from(a));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let r = Rational::new(BigInt::from(r1), BigInt::from(t1));
    (from_rational(&r) == Some(a)).then_some(r)
}

/// Rows kept in echelon form (each normalized to a leading 1), ordered by
/// pivot column.
pub(crate) struct Echelon {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it raised the rank.
    pub(crate) fn insert(&mut self, mut row: Vec<u64>) -> bool {
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = row[pc];
            if c != 0 {
                for j in pc..self.cols {
                    if r[j] != 0 {
                        row[j] = sub(row[j], mul(c, r[j]));
                    }
                }
            }
        }
        let Some(pc) = row.iter().position(|&v| v != 0) else {
            return false;
        };
        let s = inv(row[pc]);
        for v in row[pc..].iter_mut() {
            *v = mul(*v, s);
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, row);
        true
    }

    /// Kernel basis, one vector per free column (increasing), with a 1 in
    /// its free column.
    pub(crate) fn kernel(&self) -> Vec<Vec<u64>> {
        let mut rows = self.rows.clone();
        for i in (0..rows.len()).rev() {
            let pc = self.pivots[i];
            let (above, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for r in above.iter_mut() {
                let c = r[pc];
                if c != 0 {
                    for j in pc..self.cols {
                        if pivot_row[j] != 0 {
                            r[j] = sub(r[j], mul(c, pivot_row[j]));
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        let mut next_pivot = 0;
        for free in 0..self.cols {
            if next_pivot < self.pivots.len() && self.pivots[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in rows.iter().zip(&self.pivots) {
                v[pc] = sub(0, r[free]);
            }
            out.push(v);
        }
        out
    }
}

/// Rank of a dense matrix over `F_P`.
pub(crate) fn rank(m: &[Vec<u64>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut e = Echelon::new(cols);
    for row in m {
        e.insert(row.clone());
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn field_operations() {
        assert_eq!(mul(P - 1, P - 1), 1);
        assert_eq!(mul(inv(12345), 12345), 1);
        assert_eq!(add(P - 1, 5), 4);
        assert_eq!(sub(3, 5), P - 2);
    }

    #[test]
    fn reconstruction() {
        for r in [
            rat(-7, 3),
            rat(1, 1000),
            int(0),
            int(-123456789),
            rat(99991, 104729),
        ] {
            let a = from_rational(&r).unwrap();
            assert_eq!(reconstruct(a), Some(r));
        }
        let big = Rational::from_integer(BigInt::from(3_000_000_007i64));
        assert_ne!(reconstruct(from_rational(&big).unwrap()), Some(big));
    }

    #[test]
    fn echelon_kernel() {
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(!e.insert(vec![2, 4, 6]));
        assert!(e.insert(vec![0, 1, 1]));
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        // x + 2y + 3z = 0, y + z = 0  =>  (-1, -1, 1)
        assert_eq!(k[0], vec![P - 1, P - 1, 1]);
    }
}
