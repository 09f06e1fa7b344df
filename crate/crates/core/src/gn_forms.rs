//! Quinary forms built from a 2x3 matrix over `K[x1, x2]`: the bordered
//! determinant `Delta`, generation of members of `K[x1, x2][Delta]`,
//! recognition of such members, and the full structure pipeline for a
//! quinary zero-Hessian form.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GnError, Result};
use crate::hessian::has_zero_hessian;
use crate::poly::{
    coefficient_matrix, gcd_list, int, Degree, MultiPoly, PolyMatrix, QMatrix, Rational,
};
use crate::svs::{
    eliminate_linear, extract_reduced_svs, linear_closure_structure, LinearElimination,
    SvsCertificate,
};

const NVARS: usize = 5;

/// A 2x3 matrix over `K[x1, x2]` with its bordered determinant
/// `Delta = d1 x3 - d2 x4 + d3 x5`, where `d_j` is the minor obtained by
/// deleting column `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaData {
    a: PolyMatrix,
    delta: MultiPoly,
    minors: [MultiPoly; 3],
    coprime: bool,
}

impl DeltaData {
    pub fn matrix(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn delta(&self) -> &MultiPoly {
        &self.delta
    }

    pub fn minors(&self) -> &[MultiPoly; 3] {
        &self.minors
    }

    /// Whether the three minors have no common factor.
    pub fn coprime(&self) -> bool {
        self.coprime
    }

    /// Total degree of `Delta`.
    pub fn delta_degree(&self) -> u32 {
        self.delta
            .total_degree()
            .finite()
            .expect("Delta is nonzero")
    }

    /// `(d1, -d2, d3)`, the gradient of `Delta` in `x3, x4, x5`.
    pub fn signed_minors(&self) -> [MultiPoly; 3] {
        [
            self.minors[0].clone(),
            -self.minors[1].clone(),
            self.minors[2].clone(),
        ]
    }

    /// `P(x1, x2, Delta)` for `P` in three variables `(u, v, w)`.
    pub fn substitute(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != 3 {
            return Err(GnError::Dimension(format!(
                "P must have 3 variables, got {}",
                p.nvars()
            )));
        }
        p.compose(&[
            MultiPoly::var(NVARS, 0),
            MultiPoly::var(NVARS, 1),
            self.delta.clone(),
        ])
    }
}

/// Builds `Delta` from a 2x3 matrix whose entries only involve `x1, x2`.
/// Entries with fewer than five variables are widened to five.
pub fn build_delta(a: &PolyMatrix) -> Result<DeltaData> {
    if a.rows() != 2 || a.cols() != 3 {
        return Err(GnError::Dimension(format!(
            "expected a 2x3 matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.nvars() > NVARS {
        return Err(GnError::Dimension(format!(
            "matrix entries have {} variables, at most 5 allowed",
            a.nvars()
        )));
    }
    let entries: Vec<MultiPoly> = a.entries().iter().map(|e| e.extend(NVARS)).collect();
    if entries.iter().any(|e| (2..NVARS).any(|i| e.involves(i))) {
        return Err(GnError::Domain(
            "matrix entries may only involve x1 and x2".into(),
        ));
    }
    let a = PolyMatrix::new(2, 3, entries)?;
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..3).filter(|&c| c != skip).collect();
        a.submatrix(&[0, 1], &cols).determinant().expect("square")
    };
    let minors = [minor(0), minor(1), minor(2)];
    if minors.iter().all(MultiPoly::is_zero) {
        return Err(GnError::DegenerateMatrix("all 2x2 minors vanish".into()));
    }
    let mut degree = None;
    for m in minors.iter().filter(|m| !m.is_zero()) {
        match m.homogeneous_degree() {
            Some(Degree::Finite(d)) if degree.is_none_or(|e| e == d) => degree = Some(d),
            _ => {
                return Err(GnError::Domain(
                    "the 2x2 minors must be homogeneous of one common degree".into(),
                ))
            }
        }
    }
    let x = |i| MultiPoly::var(NVARS, i);
    let delta = &(&(&minors[0] * &x(2)) - &(&minors[1] * &x(3))) + &(&minors[2] * &x(4));
    let coprime = gcd_list(&minors)?.is_constant();
    Ok(DeltaData {
        a,
        delta,
        minors,
        coprime,
    })
}

/// Total degree of a generated form and the powers of `Delta` it may use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degree: u32,
    /// `None` allows every power that fits the degree.
    pub delta_powers: Option<Vec<u32>>,
}

impl DegreeProfile {
    pub fn new(degree: u32) -> Self {
        DegreeProfile {
            degree,
            delta_powers: None,
        }
    }
}

/// `"D"` or `"D:k1,k2,..."` (total degree, then allowed powers of `Delta`).
impl FromStr for DegreeProfile {
    type Err = GnError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || GnError::Domain(format!("invalid degree profile '{s}'"));
        let (deg, powers) = match s.split_once(':') {
            Some((d, p)) => (d, Some(p)),
            None => (s, None),
        };
        let degree: u32 = deg.trim().parse().map_err(|_| bad())?;
        let delta_powers = powers
            .map(|p| {
                p.split(',')
                    .map(|k| k.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(DegreeProfile {
            degree,
            delta_powers,
        })
    }
}

impl fmt::Display for DegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.degree)?;
        if let Some(p) = &self.delta_powers {
            let items: Vec<String> = p.iter().map(u32::to_string).collect();
            write!(f, ":{}", items.join(","))?;
        }
        Ok(())
    }
}

/// A generated form and the `P(u, v, w)` it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnSample {
    pub form: MultiPoly,
    pub p: MultiPoly,
}

fn random_binary_form(rng: &mut ChaCha8Rng, degree: u32, nvars: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    for k in 0..=degree {
        let c: i64 = rng.gen_range(-4..=4);
        if c != 0 {
            let m = &MultiPoly::var(nvars, 0).pow(degree - k) * &MultiPoly::var(nvars, 1).pow(k);
            p = p + m.scale(&int(c));
        }
    }
    p
}

/// Seed-deterministic random `P = sum_k w^k p_k(u, v)` of the requested
/// profile and the form `P(x1, x2, Delta)`, whose Hessian is checked to
/// vanish before it is returned.
pub fn generate_gn_form(d: &DeltaData, profile: &DegreeProfile, seed: u64) -> Result<GnSample> {
    if !d.coprime {
        return Err(GnError::Domain(
            "the minors of the matrix share a factor".into(),
        ));
    }
    let e = d.delta_degree();
    let total = profile.degree;
    if total < 2 {
        return Err(GnError::Domain(
            "generated forms need degree at least 2".into(),
        ));
    }
    let powers: Vec<u32> = match &profile.delta_powers {
        Some(p) => {
            if p.is_empty() {
                return Err(GnError::Domain("no powers of Delta requested".into()));
            }
            if let Some(k) = p.iter().find(|&&k| k * e > total) {
                return Err(GnError::Domain(format!(
                    "Delta^{k} has degree {} > {total}",
                    k * e
                )));
            }
            p.clone()
        }
        None => (0..=total / e).collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = *powers.iter().max().expect("nonempty");
    let mut p = MultiPoly::zero(3);
    for &k in &powers {
        let mut pk = random_binary_form(&mut rng, total - k * e, 3);
        if k == top {
            while pk.is_zero() {
                pk = random_binary_form(&mut rng, total - k * e, 3);
            }
        }
        p = p + &pk * &MultiPoly::var(3, 2).pow(k);
    }
    let form = d.substitute(&p)?;
    if !has_zero_hessian(&form)? {
        return Err(GnError::Domain("generated form has nonzero Hessian".into()));
    }
    Ok(GnSample { form, p })
}

/// Random 2x3 matrix whose rows are binary forms of the given degrees, with
/// coprime, not all vanishing minors.
pub fn random_delta_data(rng: &mut impl Rng, row_degrees: (u32, u32)) -> DeltaData {
    loop {
        let mut seeded = ChaCha8Rng::seed_from_u64(rng.gen());
        let entries: Vec<MultiPoly> = (0..6)
            .map(|i| {
                let deg = if i < 3 { row_degrees.0 } else { row_degrees.1 };
                random_binary_form(&mut seeded, deg, NVARS)
            })
            .collect();
        let a = PolyMatrix::new(2, 3, entries).expect("2x3");
        if let Ok(d) = build_delta(&a) {
            if d.coprime {
                return d;
            }
        }
    }
}

/// Row degrees of the matrices drawn by [`seeded_sample`].
pub const SEEDED_ROW_DEGREES: [(u32, u32); 6] = [(0, 1), (1, 0), (1, 1), (0, 2), (1, 2), (2, 1)];

/// Seed-deterministic matrix and generated form. The seed picks the row
/// degrees among those whose `Delta` fits the profile, the matrix and the
/// coefficients of `P`.
pub fn seeded_sample(seed: u64, profile: &DegreeProfile) -> Result<(DeltaData, GnSample)> {
    let top = profile
        .delta_powers
        .as_ref()
        .and_then(|p| p.iter().max().copied())
        .unwrap_or(1)
        .max(1);
    let shapes: Vec<(u32, u32)> = SEEDED_ROW_DEGREES
        .into_iter()
        .filter(|(a, b)| top * (a + b + 1) <= profile.degree)
        .collect();
    if shapes.is_empty() {
        return Err(GnError::Domain(format!(
            "no matrix shape fits the degree profile {profile}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = shapes[rng.gen_range(0..shapes.len())];
    let d = random_delta_data(&mut rng, shape);
    let sample = generate_gn_form(&d, profile, seed)?;
    Ok((d, sample))
}

/// Writes `f` as `P(x1, x2, Delta)` with `P` in `(u, v, w)`, following the
/// induction on the partial degree in `x3, x4, x5`: the part of partial
/// degree `k > 0` has gradient `C (d1, -d2, d3)` in those variables and
/// equals `C Delta / k`, and `C` is represented recursively.
pub fn represent_in_delta_algebra(f: &MultiPoly, d: &DeltaData) -> Result<MultiPoly> {
    if f.nvars() != NVARS {
        return Err(GnError::Dimension(format!(
            "expected a form in 5 variables, got {}",
            f.nvars()
        )));
    }
    if !d.coprime {
        return Err(GnError::Domain(
            "the minors of the matrix share a factor".into(),
        ));
    }
    let p = represent(f, d)?;
    if d.substitute(&p)? != *f {
        return Err(GnError::NotAMember(
            "reconstruction does not reproduce the form".into(),
        ));
    }
    Ok(p)
}

fn represent(f: &MultiPoly, d: &DeltaData) -> Result<MultiPoly> {
    let signed = d.signed_minors();
    let (pivot, pivot_minor) = signed
        .iter()
        .enumerate()
        .find(|(_, m)| !m.is_zero())
        .expect("some minor is nonzero");
    let mut p = MultiPoly::zero(3);
    for (k, part) in f.split_by_partial_degree(&[2, 3, 4]) {
        if k == 0 {
            p = p + part.remap(3, &[0, 1, 2, 2, 2]);
            continue;
        }
        let grad: Vec<MultiPoly> = (2..5).map(|i| part.diff(i)).collect();
        let c = grad[pivot].exact_div(pivot_minor).ok_or_else(|| {
            GnError::NotAMember(format!(
                "d/dx{} of the partial-degree-{k} part is not divisible by the minor",
                pivot + 3
            ))
        })?;
        if grad.iter().zip(&signed).any(|(g, m)| *g != &c * m) {
            return Err(GnError::NotAMember(format!(
                "the partials in x3, x4, x5 of the partial-degree-{k} part are not a common multiple of the minors"
            )));
        }
        let kth = Rational::new(One::one(), k.into());
        if (&c * &d.delta).scale(&kth) != part {
            return Err(GnError::NotAMember(format!(
                "the partial-degree-{k} part is not C*Delta/{k}"
            )));
        }
        let pc = represent(&c, d)?;
        p = p + (&pc * &MultiPoly::var(3, 2)).scale(&kth);
    }
    Ok(p)
}

/// Stages of [`check_quinary_structure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    ZeroHessian,
    Extraction,
    LinearClosure,
    Frame,
    MatrixRecovery,
    Representation,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::ZeroHessian => "zero-hessian",
            Stage::Extraction => "extraction",
            Stage::LinearClosure => "linear-closure",
            Stage::Frame => "frame",
            Stage::MatrixRecovery => "matrix-recovery",
            Stage::Representation => "representation",
        })
    }
}

/// Outcome of the quinary pipeline on a form in five variables.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum QuinaryReport {
    /// The partials are linearly dependent; a constant change removes
    /// variables.
    Linear(LinearElimination),
    /// `x' = A x` puts `h` in the shape `(0, 0, h3, h4, h5)` with
    /// `h3, h4, h5` in `K[x1', x2']`, and the transformed form equals
    /// `P(x1', x2', Delta)` for the matrix read off the Jacobian of `h`.
    Delta {
        svs: SvsCertificate,
        frame: QMatrix,
        transformed: MultiPoly,
        delta: DeltaData,
        p: MultiPoly,
    },
    Failed {
        stage: Stage,
        message: String,
    },
}

fn failed(stage: Stage, message: impl Into<String>) -> QuinaryReport {
    QuinaryReport::Failed {
        stage,
        message: message.into(),
    }
}

/// Runs the structure pipeline: zero Hessian, linear route, reduced SVS,
/// linear closure, coordinate frame, matrix recovery and representation.
/// A Hessian of corank other than one is an error; every other failure is
/// reported with its stage.
pub fn check_quinary_structure(f: &MultiPoly) -> Result<QuinaryReport> {
    if f.nvars() != NVARS {
        return Err(GnError::Dimension(format!(
            "expected a form in 5 variables, got {}",
            f.nvars()
        )));
    }
    match has_zero_hessian(f) {
        Ok(true) => {}
        Ok(false) => {
            return Ok(failed(
                Stage::ZeroHessian,
                "the Hessian determinant does not vanish",
            ))
        }
        Err(e) => return Ok(failed(Stage::ZeroHessian, e.to_string())),
    }
    if let Some(lin) = eliminate_linear(f) {
        return Ok(QuinaryReport::Linear(lin));
    }
    let svs = match extract_reduced_svs(f) {
        Ok(c) => c,
        Err(e @ GnError::UnsupportedCorank { .. }) => return Err(e),
        Err(e) => return Ok(failed(Stage::Extraction, e.to_string())),
    };
    let closure = match linear_closure_structure(svs.h()) {
        Ok(c) => c,
        Err(e) => return Ok(failed(Stage::LinearClosure, e.to_string())),
    };
    if !closure.holds {
        return Ok(failed(
            Stage::LinearClosure,
            "some direction of the linear closure does not annihilate h",
        ));
    }
    if closure.s != 2 {
        return Ok(failed(
            Stage::LinearClosure,
            format!(
                "the components of h span a space of dimension {}, expected 3",
                closure.s + 1
            ),
        ));
    }
    let frame = match build_frame(&closure.annihilator(NVARS)) {
        Ok(a) => a,
        Err(e) => return Ok(failed(Stage::Frame, e.to_string())),
    };
    let inverse = frame.inverse()?;
    let back = inverse.linear_forms();
    let transformed = f.compose(&back)?;
    let h_new = frame.apply(
        &svs.h()
            .forms()
            .iter()
            .map(|hj| hj.compose(&back))
            .collect::<Result<Vec<_>>>()?,
    )?;
    if !h_new[0].is_zero()
        || !h_new[1].is_zero()
        || h_new[2..]
            .iter()
            .any(|hj| (2..NVARS).any(|i| hj.involves(i)))
    {
        return Ok(failed(
            Stage::Frame,
            "transformed h is not of the form (0, 0, h3(x1, x2), h4(x1, x2), h5(x1, x2))",
        ));
    }
    let recovered = PolyMatrix::from_fn(2, 3, NVARS, |i, j| h_new[j + 2].diff(i));
    let mut delta = match build_delta(&recovered) {
        Ok(d) => d,
        Err(e) => return Ok(failed(Stage::MatrixRecovery, e.to_string())),
    };
    if !delta.coprime {
        // Same operators over K(x1, x2); the syzygy matrix of the reduced
        // minor vector has coprime minors.
        delta = match reduced_delta(&delta) {
            Ok(d) => d,
            Err(e) => return Ok(failed(Stage::MatrixRecovery, e.to_string())),
        };
    }
    match represent_in_delta_algebra(&transformed, &delta) {
        Ok(p) => Ok(QuinaryReport::Delta {
            svs,
            frame,
            transformed,
            delta,
            p,
        }),
        Err(e) => Ok(failed(Stage::Representation, e.to_string())),
    }
}

/// A 2x3 matrix over `K[x1, x2]` whose rows generate the syzygies of the
/// binary forms `v`, which must have no common factor. Its minors are
/// `v` up to a nonzero constant.
pub fn syzygy_matrix(v: &[MultiPoly; 3]) -> Result<PolyMatrix> {
    let m = v
        .iter()
        .filter_map(|p| p.total_degree().finite())
        .max()
        .ok_or_else(|| GnError::DegenerateMatrix("the vector is zero".into()))?;
    let first = (0..=m)
        .find_map(|e| syzygies_of_degree(v, e).into_iter().next())
        .ok_or_else(|| GnError::DegenerateMatrix("no syzygy found".into()))?;
    let e1 = first
        .iter()
        .find_map(|p| p.total_degree().finite())
        .expect("nonzero syzygy");
    for second in syzygies_of_degree(v, m - e1) {
        let a = PolyMatrix::new(2, 3, first.iter().chain(&second).cloned().collect())?;
        let Ok(d) = build_delta(&a) else {
            continue;
        };
        let minors = d.signed_minors();
        let ratio = (0..3).find_map(|j| (!v[j].is_zero()).then(|| minors[j].scalar_ratio(&v[j])));
        if let Some(Some(c)) = ratio {
            if !c.is_zero() && (0..3).all(|j| minors[j] == v[j].scale(&c)) {
                return Ok(a);
            }
        }
    }
    Err(GnError::DegenerateMatrix(
        "the syzygies do not form a Hilbert-Burch matrix".into(),
    ))
}

/// Basis of the degree-`e` vectors `r` over `K[x1, x2]` with `r . v = 0`.
fn syzygies_of_degree(v: &[MultiPoly; 3], e: u32) -> Vec<Vec<MultiPoly>> {
    let monos: Vec<MultiPoly> = (0..=e)
        .map(|k| &MultiPoly::var(NVARS, 0).pow(e - k) * &MultiPoly::var(NVARS, 1).pow(k))
        .collect();
    let products: Vec<MultiPoly> = v
        .iter()
        .flat_map(|vj| monos.iter().map(move |mo| mo * vj))
        .collect();
    let t = monos.len();
    coefficient_matrix(&products)
        .left_nullspace()
        .into_iter()
        .map(|c| {
            (0..3)
                .map(|j| {
                    (0..t).fold(MultiPoly::zero(NVARS), |acc, k| {
                        acc + monos[k].scale(&c[j * t + k])
                    })
                })
                .collect()
        })
        .collect()
}

/// Replaces a matrix whose minors share a factor by the syzygy matrix of
/// its primitive minor vector.
fn reduced_delta(d: &DeltaData) -> Result<DeltaData> {
    let g = gcd_list(&d.minors)?;
    let v = d
        .signed_minors()
        .map(|m| m.exact_div(&g).expect("the gcd divides every minor"));
    let reduced = build_delta(&syzygy_matrix(&v)?)?;
    if !reduced.coprime {
        return Err(GnError::DegenerateMatrix(
            "the reduced minors share a factor".into(),
        ));
    }
    Ok(reduced)
}

/// Invertible `A` whose first rows are the given independent vectors and
/// whose remaining rows are unit vectors off their echelon pivots.
fn build_frame(first_rows: &[Vec<Rational>]) -> Result<QMatrix> {
    let n = NVARS;
    let rref = QMatrix::from_rows(first_rows.to_vec())?.rref();
    if rref.pivots.len() != first_rows.len() {
        return Err(GnError::DegenerateMatrix("frame rows are dependent".into()));
    }
    let mut rows: Vec<Vec<Rational>> = rref.matrix.row_vectors()[..first_rows.len()].to_vec();
    for i in (0..n).filter(|i| !rref.pivots.contains(i)) {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        rows.push(v);
    }
    QMatrix::from_rows(rows)
}
