//! Right kernels over `K(x)` of matrices whose nonzero entries are forms of
//! one common degree.
//!
//! Homogeneous kernel vectors of degree `e` are found by a linear ansatz.
//! The ansatz is sampled at random points modulo a large prime, candidate
//! vectors are lifted by rational reconstruction, and every lifted vector is
//! checked exactly. A trivial sampled kernel proves there is no kernel
//! vector of that degree, since the sampled equations follow from the exact
//! ones and ranks can only drop modulo a prime.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Echelon, P};
use super::{monomials_of_degree, Degree, Monomial, MultiPoly, PolyMatrix};

/// Largest ansatz (unknown count) attempted before giving up.
const MAX_UNKNOWNS: usize = 2500;

struct Sampler {
    rng: ChaCha8Rng,
    nvars: usize,
}

impl Sampler {
    fn new(nvars: usize) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(0x005e_ed0f_7e57),
            nvars,
        }
    }

    fn point(&mut self) -> Vec<u64> {
        (0..self.nvars).map(|_| self.rng.gen_range(1..P)).collect()
    }
}

/// Common degree of the nonzero entries, if there is one.
fn uniform_degree(m: &PolyMatrix) -> Option<u32> {
    let mut degree = None;
    for e in m.entries().iter().filter(|e| !e.is_zero()) {
        match e.homogeneous_degree() {
            Some(Degree::Finite(d)) if degree.is_none_or(|x| x == d) => degree = Some(d),
            _ => return None,
        }
    }
    degree
}

fn eval_matrix(m: &PolyMatrix, point: &[u64]) -> Option<Vec<Vec<u64>>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| modp::eval(e, point)).collect())
        .collect()
}

fn monomial_value(m: &Monomial, point: &[u64]) -> u64 {
    m.exps()
        .iter()
        .zip(point)
        .filter(|(&e, _)| e > 0)
        .fold(1, |acc, (&e, &x)| {
            modp::mul(acc, modp::pow(x, u64::from(e)))
        })
}

fn annihilates(m: &PolyMatrix, v: &[MultiPoly]) -> bool {
    (0..m.rows()).all(|i| {
        m.row(i)
            .iter()
            .zip(v)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(MultiPoly::zero(m.nvars()), |acc, (a, b)| acc + a * b)
            .is_zero()
    })
}

/// Basis of the homogeneous degree-`e` kernel vectors, or `None` when the
/// search is inconclusive.
fn kernel_at_degree(m: &PolyMatrix, e: u32, sampler: &mut Sampler) -> Option<Vec<Vec<MultiPoly>>> {
    let monos = monomials_of_degree(m.nvars(), e);
    let t = monos.len();
    let unknowns = m.cols() * t;
    if unknowns > MAX_UNKNOWNS {
        return None;
    }
    let mut ech = Echelon::new(unknowns);
    let mut equations = 0;
    for _attempt in 0..3 {
        let mut stale = 0;
        while ech.rank() < unknowns && (equations < unknowns || stale < 2) {
            let point = sampler.point();
            let values = eval_matrix(m, &point)?;
            let mono_values: Vec<u64> = monos.iter().map(|mo| monomial_value(mo, &point)).collect();
            let before = ech.rank();
            for row in &values {
                let mut eq = vec![0u64; unknowns];
                for (j, &a) in row.iter().enumerate() {
                    if a != 0 {
                        for (k, &mv) in mono_values.iter().enumerate() {
                            eq[j * t + k] = modp::mul(a, mv);
                        }
                    }
                }
                ech.insert(eq);
                equations += 1;
            }
            stale = if ech.rank() == before { stale + 1 } else { 0 };
        }
        if ech.rank() == unknowns {
            return Some(Vec::new());
        }
        let lifted: Option<Vec<Vec<MultiPoly>>> = ech
            .kernel()
            .iter()
            .map(|v| {
                (0..m.cols())
                    .map(|j| {
                        let mut p = MultiPoly::zero(m.nvars());
                        for (k, mo) in monos.iter().enumerate() {
                            let c = modp::reconstruct(v[j * t + k])?;
                            p.add_term(mo.clone(), c);
                        }
                        Some(p)
                    })
                    .collect()
            })
            .collect();
        if let Some(vectors) = lifted {
            if vectors.iter().all(|v| annihilates(m, v)) {
                return Some(vectors);
            }
        }
        // Spurious sampled kernel; force more points.
        equations = 0;
    }
    None
}

/// Whether the vectors are independent over `K(x)`, tested at one point.
/// Independence at a point modulo `P` implies independence.
fn independent_at_point(vectors: &[Vec<MultiPoly>], sampler: &mut Sampler) -> Option<bool> {
    let point = sampler.point();
    let rows: Vec<Vec<u64>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|p| modp::eval(p, &point))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    Some(modp::rank(&rows) == vectors.len())
}

/// Lower bound for the rank over `K(x)` from specializations modulo `P`.
pub(crate) fn rank_lower_bound(m: &PolyMatrix) -> Option<usize> {
    let mut sampler = Sampler::new(m.nvars());
    let mut best = 0;
    for _ in 0..2 {
        let values = eval_matrix(m, &sampler.point())?;
        best = best.max(modp::rank(&values));
    }
    Some(best)
}

/// Up to `need` kernel vectors, independent over `K(x)`, collected in order
/// of increasing degree up to `max_degree`.
pub(crate) fn kernel_vectors(
    m: &PolyMatrix,
    need: usize,
    max_degree: u32,
) -> Option<Vec<Vec<MultiPoly>>> {
    uniform_degree(m)?;
    let mut sampler = Sampler::new(m.nvars());
    let mut found: Vec<Vec<MultiPoly>> = Vec::new();
    for e in 0..=max_degree {
        for v in kernel_at_degree(m, e, &mut sampler)? {
            found.push(v);
            if !independent_at_point(&found, &mut sampler)? {
                found.pop();
            }
            if found.len() == need {
                return Some(found);
            }
        }
    }
    None
}

/// Exact rank over `K(x)`. For matrices of forms of one degree the rank is
/// bracketed by a specialization (lower bound) and verified polynomial
/// kernel vectors (upper bound); otherwise, or when that search is
/// inconclusive, fraction-free elimination decides.
pub fn certified_rank(m: &PolyMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    let Some(delta) = uniform_degree(m) else {
        return m.rank();
    };
    let Some(r) = rank_lower_bound(m) else {
        return m.rank();
    };
    if r == m.rows().min(m.cols()) {
        return r;
    }
    // If the rank is r, Cramer's rule gives a kernel basis of degree r*delta.
    match kernel_vectors(m, m.cols() - r, r as u32 * delta) {
        Some(_) => r,
        None => m.rank(),
    }
}

/// A nonzero polynomial kernel vector of least degree, if the matrix is
/// singular and the search is conclusive.
pub fn minimal_kernel_vector(m: &PolyMatrix) -> Option<Vec<MultiPoly>> {
    let delta = uniform_degree(m)?;
    let r = rank_lower_bound(m)?;
    if r == m.cols() {
        return None;
    }
    let cap = (m.cols() as u32 - 1) * delta;
    kernel_vectors(m, 1, cap)?.into_iter().next()
}
