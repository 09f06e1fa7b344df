//! Seed-deterministic random inputs: dense forms, polynomial and constant
//! matrices, self-vanishing systems with members of their solution rings,
//! and a mixed corpus of forms with vanishing Hessian.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gn_forms::{generate_gn_form, random_delta_data, DegreeProfile};
use crate::hessian::FormSystem;
use crate::linear_sol::ConstantSystem;
use crate::poly::{int, monomials_of_degree, MultiPoly, PolyMatrix, QMatrix, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut impl Rng, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

/// Homogeneous form with each monomial present with probability `density`
/// and coefficients in `-5..=5`. May be zero.
pub fn random_form(rng: &mut impl Rng, nvars: usize, degree: u32, density: f64) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    for m in monomials_of_degree(nvars, degree) {
        if rng.gen_bool(density) {
            p = p + MultiPoly::monomial(m, small(rng, 5));
        }
    }
    p
}

/// Nonzero homogeneous form.
pub fn random_nonzero_form(
    rng: &mut impl Rng,
    nvars: usize,
    degree: u32,
    density: f64,
) -> MultiPoly {
    loop {
        let p = random_form(rng, nvars, degree, density);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Sparse polynomial (not necessarily homogeneous) of total degree at most
/// `max_degree` with a few terms.
pub fn random_poly(
    rng: &mut impl Rng,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let d = rng.gen_range(0..=max_degree);
        let monos = monomials_of_degree(nvars, d);
        let m = monos[rng.gen_range(0..monos.len())].clone();
        let c = Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into());
        p = p + MultiPoly::monomial(m, c);
    }
    p
}

pub fn random_poly_matrix(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    nvars: usize,
    max_degree: u32,
) -> PolyMatrix {
    PolyMatrix::from_fn(rows, cols, nvars, |_, _| {
        random_poly(rng, nvars, max_degree, 3)
    })
}

pub fn random_rational_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> QMatrix {
    let data = (0..rows * cols)
        .map(|_| Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=3).into()))
        .collect();
    QMatrix::new(rows, cols, data).expect("sized data")
}

/// Invertible integer matrix with small entries.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> QMatrix {
    loop {
        let data = (0..n * n).map(|_| small(rng, 3)).collect();
        let a = QMatrix::new(n, n, data).expect("sized data");
        if a.rank() == n {
            return a;
        }
    }
}

/// Unimodular integer matrix: a permutation followed by `shears` random
/// elementary operations `x_i += c x_j`. Keeps transformed forms sparse.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, shears: usize) -> QMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut a = QMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        a.set(i, j, int(1));
    }
    if n < 2 {
        return a;
    }
    for _ in 0..shears {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = int(if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=2));
        for k in 0..n {
            let v = a.get(i, k) + &c * a.get(j, k);
            a.set(i, k, v);
        }
    }
    a
}

/// A `k x n` system with independent rows.
pub fn random_constant_system(rng: &mut impl Rng, k: usize, n: usize) -> ConstantSystem {
    loop {
        if let Ok(s) = ConstantSystem::new(random_rational_matrix(rng, k, n).row_vectors()) {
            return s;
        }
    }
}

/// `p(A x)` for a constant matrix `A`.
pub fn change_coordinates(p: &MultiPoly, a: &QMatrix) -> MultiPoly {
    p.compose(&a.linear_forms()).expect("matching arity")
}

/// A self-vanishing system built in a frame where its first `r`
/// components vanish and the rest only involve the first `r` variables,
/// together with members of its solution ring.
#[derive(Debug, Clone)]
pub struct SvsSample {
    pub h: FormSystem,
    /// Members of `sol(h)`.
    pub members: Vec<MultiPoly>,
    /// The constant change `x' = A x` to the adapted frame.
    pub frame: QMatrix,
}

/// Random self-vanishing system in `n` variables of degree `degree`:
/// `h(x) = A^{-1} h'(A x)` with `h' = (0, ..., 0, p_{r+1}, ..., p_n)` and
/// `p_j` forms in `x'_1, ..., x'_r`.
pub fn random_svs(rng: &mut impl Rng, n: usize, degree: u32) -> SvsSample {
    assert!(n >= 2);
    let r = rng.gen_range(1..n);
    let a = random_invertible(rng, n);
    let prime: Vec<MultiPoly> = (0..n)
        .map(|j| {
            if j < r {
                MultiPoly::zero(n)
            } else {
                random_form(rng, r, degree, 0.7).extend(n)
            }
        })
        .collect();
    let prime = if prime.iter().all(MultiPoly::is_zero) {
        let mut p = prime;
        p[n - 1] = MultiPoly::var(r, 0).pow(degree).extend(n);
        p
    } else {
        prime
    };
    let inverse = a.inverse().expect("invertible");
    let forward = a.linear_forms();
    let h = inverse
        .apply(&prime)
        .expect("sized")
        .into_iter()
        .map(|p| p.compose(&forward).expect("arity"))
        .collect();
    let h = FormSystem::new(h).expect("nonzero system of one degree");

    // Members in the adapted frame: forms in x'_1..x'_r and the 2x2
    // determinants x'_j h'_k - x'_k h'_j.
    let mut members_prime = Vec::new();
    for _ in 0..2 {
        let d = rng.gen_range(1..=3);
        members_prime.push(random_nonzero_form(rng, r, d, 0.8).extend(n));
    }
    let active: Vec<usize> = (r..n).filter(|&j| !prime[j].is_zero()).collect();
    if active.len() >= 2 {
        let (j, k) = (active[0], active[1]);
        members_prime.push(&MultiPoly::var(n, j) * &prime[k] - &MultiPoly::var(n, k) * &prime[j]);
    }
    let members = members_prime
        .iter()
        .map(|m| change_coordinates(m, &a))
        .collect();
    SvsSample {
        h,
        members,
        frame: a,
    }
}

/// Where a corpus form comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Power of a linear form in two variables.
    BinaryPower,
    /// Form in two linear forms of three variables.
    TernaryPencil,
    /// Form in three linear forms of four variables.
    QuaternaryNet,
    /// Member of `K[x1, x2][Delta]` after a linear change of coordinates.
    Quinary,
}

#[derive(Debug, Clone)]
pub struct CorpusForm {
    pub family: Family,
    pub form: MultiPoly,
}

/// Form in `m` random linear forms of `n` variables.
fn form_in_linear_forms(rng: &mut impl Rng, n: usize, m: usize, degree: u32) -> MultiPoly {
    let a = random_invertible(rng, n);
    let g = random_nonzero_form(rng, m, degree, 0.8).extend(n);
    change_coordinates(&g, &a)
}

/// Zero-Hessian forms of every family, cycled in order, of degree at most
/// `max_degree` (at least 3).
pub fn zero_hessian_corpus(seed: u64, count: usize, max_degree: u32) -> Vec<CorpusForm> {
    let mut rng = rng(seed);
    let families = [
        Family::BinaryPower,
        Family::TernaryPencil,
        Family::QuaternaryNet,
        Family::Quinary,
    ];
    (0..count)
        .map(|i| {
            let family = families[i % families.len()];
            let degree = rng.gen_range(3..=max_degree.max(3));
            let form = match family {
                Family::BinaryPower => {
                    let l = random_nonzero_form(&mut rng, 2, 1, 1.0);
                    l.pow(degree)
                }
                Family::TernaryPencil => form_in_linear_forms(&mut rng, 3, 2, degree),
                Family::QuaternaryNet => form_in_linear_forms(&mut rng, 4, 3, degree),
                Family::Quinary => quinary_form(&mut rng, degree),
            };
            CorpusForm { family, form }
        })
        .collect()
}

fn quinary_form(rng: &mut impl Rng, degree: u32) -> MultiPoly {
    let rows = [(0, 1), (1, 0), (1, 1), (0, 2)];
    loop {
        let shape = rows[rng.gen_range(0..rows.len())];
        let d = random_delta_data(rng, shape);
        if d.delta_degree() > degree {
            continue;
        }
        let profile = DegreeProfile {
            degree,
            delta_powers: None,
        };
        if let Ok(s) = generate_gn_form(&d, &profile, rng.gen()) {
            let a = random_unimodular(rng, 5, 3);
            return change_coordinates(&s.form, &a);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessian::has_zero_hessian;
    use crate::svs::{is_in_sol, is_self_vanishing};

    #[test]
    fn corpus_is_deterministic() {
        let a = zero_hessian_corpus(3, 8, 5);
        let b = zero_hessian_corpus(3, 8, 5);
        assert!(a.iter().zip(&b).all(|(x, y)| x.form == y.form));
    }

    #[test]
    fn corpus_forms_have_zero_hessian() {
        for c in zero_hessian_corpus(1, 12, 5) {
            assert!(has_zero_hessian(&c.form).unwrap(), "{:?}", c.family);
        }
    }

    #[test]
    fn random_systems_are_self_vanishing() {
        let mut rng = rng(5);
        for _ in 0..10 {
            let n = rng.gen_range(2..=5);
            let degree = rng.gen_range(1..=3);
            let s = random_svs(&mut rng, n, degree);
            assert!(is_self_vanishing(&s.h));
            for m in &s.members {
                assert!(is_in_sol(&s.h, m).unwrap());
            }
        }
    }
}
