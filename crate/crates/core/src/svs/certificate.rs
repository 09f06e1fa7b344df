use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::operator::{is_self_vanishing, is_shift_invariant, self_substitution_vanishes};
use crate::error::{GnError, Identity, Result};
use crate::hessian::{hessian_matrix, transcendence_degree, FormSystem};
use crate::poly::{
    certified_rank, coefficient_matrix, gcd_list, minimal_kernel_vector, monomials_of_degree,
    MultiPoly, PolyMatrix, Rational,
};

/// How the system on a certificate was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Adjugate,
    Relation,
    UserSupplied,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Adjugate => "adjugate",
            Route::Relation => "relation",
            Route::UserSupplied => "user-supplied",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CertificateChecks {
    pub self_vanishing: bool,
    pub syzygy_f: bool,
    pub syzygy_partials: bool,
    pub shift_invariance: bool,
    pub self_substitution_zero: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.self_vanishing
            && self.syzygy_f
            && self.syzygy_partials
            && self.shift_invariance
            && self.self_substitution_zero
    }

    /// Flags in verification order.
    pub fn entries(&self) -> [(Identity, bool); 5] {
        [
            (Identity::SyzygyF, self.syzygy_f),
            (Identity::SyzygyPartials, self.syzygy_partials),
            (Identity::SelfVanishing, self.self_vanishing),
            (Identity::ShiftInvariance, self.shift_invariance),
            (Identity::SelfSubstitutionZero, self.self_substitution_zero),
        ]
    }
}

/// A candidate self-vanishing system together with the identities that
/// were verified for it. A `true` flag always means the identity was checked
/// exactly; `false` means it failed or could not be checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvsCertificate {
    h: FormSystem,
    reduced: bool,
    route: Route,
    checks: CertificateChecks,
}

impl SvsCertificate {
    /// Wraps a caller-provided system with no verified identities.
    pub fn user_supplied(h: FormSystem) -> Self {
        let reduced = is_reduced(h.forms());
        SvsCertificate {
            h,
            reduced,
            route: Route::UserSupplied,
            checks: CertificateChecks::default(),
        }
    }

    pub fn h(&self) -> &FormSystem {
        &self.h
    }

    pub fn reduced(&self) -> bool {
        self.reduced
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn checks(&self) -> CertificateChecks {
        self.checks
    }
}

fn is_reduced(forms: &[MultiPoly]) -> bool {
    gcd_list(forms).is_ok_and(|g| g.is_constant())
}

fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// Divides a nonzero vector by the GCD of its components, scales it to
/// coprime integer coefficients overall and makes the leading coefficient of
/// the first nonzero component positive.
pub fn normalize_system(v: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let g = gcd_list(v)?;
    let divided: Vec<MultiPoly> = v
        .iter()
        .map(|p| p.exact_div(&g).expect("gcd divides every component"))
        .collect();
    let mut content = Rational::zero();
    for p in divided.iter().filter(|p| !p.is_zero()) {
        content = rational_gcd(&content, &p.content());
    }
    let first = divided
        .iter()
        .find(|p| !p.is_zero())
        .expect("nonzero vector");
    if first.leading_coefficient().is_negative() {
        content = -content;
    }
    let inv = content.recip();
    Ok(divided.iter().map(|p| p.scale(&inv)).collect())
}

/// Runs the five identities of a certificate against the partials of `f`
/// without failing on the first violation.
pub fn check_identities(f: &MultiPoly, h: &FormSystem) -> Result<CertificateChecks> {
    let partials = f.gradient();
    let mut checks = system_checks(&partials, h)?;
    checks.shift_invariance = is_shift_invariant(f, h)?;
    Ok(checks)
}

/// The identities that only need the system `s` (for a gradient system,
/// `s_j = df/dx_j`); shift invariance is left unset.
fn system_checks(s: &[MultiPoly], h: &FormSystem) -> Result<CertificateChecks> {
    let n = h.nvars();
    if s.len() != h.len() || s.iter().any(|p| p.nvars() != n) {
        return Err(GnError::Dimension(format!(
            "system of {} forms in {} variables checked against {} forms",
            h.len(),
            n,
            s.len()
        )));
    }
    let syzygy_f = s
        .iter()
        .zip(h.forms())
        .fold(MultiPoly::zero(n), |acc, (sj, hj)| acc + sj * hj)
        .is_zero();
    let syzygy_partials = (0..n).all(|j| {
        s.iter()
            .zip(h.forms())
            .fold(MultiPoly::zero(n), |acc, (sk, hk)| acc + hk * &sk.diff(j))
            .is_zero()
    });
    Ok(CertificateChecks {
        self_vanishing: is_self_vanishing(h),
        syzygy_f,
        syzygy_partials,
        shift_invariance: false,
        self_substitution_zero: self_substitution_vanishes(h)?,
    })
}

/// Re-verifies every identity of `c` against `f`. Fails with the first
/// identity (in the order syzygy, partial syzygy, self-vanishing, shift
/// invariance, self-substitution) that does not hold.
pub fn verify_certificate(f: &MultiPoly, c: &SvsCertificate) -> Result<SvsCertificate> {
    if f.nvars() != c.h.nvars() || c.h.len() != f.nvars() {
        return Err(GnError::Dimension(format!(
            "certificate of length {} for a form in {} variables",
            c.h.len(),
            f.nvars()
        )));
    }
    let checks = check_identities(f, &c.h)?;
    if let Some((id, _)) = checks.entries().into_iter().find(|(_, ok)| !ok) {
        return Err(GnError::CertificateInvalid(id));
    }
    Ok(SvsCertificate {
        h: c.h.clone(),
        reduced: is_reduced(c.h.forms()),
        route: c.route,
        checks,
    })
}

/// Reduced self-vanishing system of a zero-Hessian form whose Hessian has
/// corank 1: a nonzero adjugate row divided by the GCD of its entries.
pub fn extract_reduced_svs(f: &MultiPoly) -> Result<SvsCertificate> {
    let hess = hessian_matrix(f)?;
    let n = f.nvars();
    let rank = certified_rank(&hess);
    if rank == n {
        return Err(GnError::Domain(
            "the Hessian determinant does not vanish".into(),
        ));
    }
    if n - rank != 1 {
        return Err(GnError::UnsupportedCorank { corank: n - rank });
    }
    // With corank 1 the adjugate rows span the kernel line, whose least
    // degree polynomial vector is the reduced row itself.
    let row = match minimal_kernel_vector(&hess) {
        Some(v) => v,
        None => first_nonzero_adjugate_row(&hess)?,
    };
    let h = FormSystem::new(normalize_system(&row)?)?;
    let cert = SvsCertificate {
        h,
        reduced: true,
        route: Route::Adjugate,
        checks: CertificateChecks::default(),
    };
    verify_certificate(f, &cert)
}

fn first_nonzero_adjugate_row(m: &PolyMatrix) -> Result<Vec<MultiPoly>> {
    for r in 0..m.rows() {
        let row = m.adjugate_row(r)?;
        if row.iter().any(|p| !p.is_zero()) {
            return Ok(row);
        }
    }
    Err(GnError::Domain("the adjugate vanishes".into()))
}

/// Default search cap for [`find_minimal_relation`] on the partials of a
/// form of degree `d`.
pub fn default_relation_cap(d: u32) -> usize {
    (2 * d as usize).max(1)
}

/// Least-degree homogeneous `g(y_1, ..., y_m)` with `g(s) = 0`, by an
/// ascending-degree linear ansatz. Among the kernel vectors in a given
/// degree the first one (reduced echelon form, ansatz monomials in
/// descending graded-lex order) is returned, scaled to coprime integers with
/// a positive leading coefficient.
pub fn find_minimal_relation(s: &FormSystem, max_degree: usize) -> Result<MultiPoly> {
    if max_degree == 0 {
        return Err(GnError::Domain("max_degree must be at least 1".into()));
    }
    let m = s.len();
    let mut powers: Vec<Vec<MultiPoly>> = s
        .forms()
        .iter()
        .map(|p| vec![MultiPoly::one(s.nvars()), p.clone()])
        .collect();
    for d in 1..=max_degree as u32 {
        for (i, pw) in powers.iter_mut().enumerate() {
            while pw.len() <= d as usize {
                let next = pw.last().expect("nonempty") * s.get(i);
                pw.push(next);
            }
        }
        let monos = monomials_of_degree(m, d);
        let images: Vec<MultiPoly> = monos
            .iter()
            .map(|mono| {
                mono.exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(MultiPoly::one(s.nvars()), |acc, (i, &e)| {
                        &acc * &powers[i][e as usize]
                    })
            })
            .collect();
        let kernel = coefficient_matrix(&images).left_nullspace();
        if let Some(v) = kernel.into_iter().next() {
            let g = monos
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .fold(MultiPoly::zero(m), |acc, (mono, c)| {
                    acc + MultiPoly::monomial(mono.clone(), c)
                });
            return Ok(g.primitive());
        }
    }
    Err(GnError::CapExceeded {
        cap: max_degree,
        independent: transcendence_degree(s) == m,
    })
}

/// System `h' = (dg/dy_i)(s)` of a relation `g(s) = 0`, reduced by the GCD
/// of its components.
///
/// All identities that only involve `s` are recorded. Shift invariance needs
/// the form itself; it is checked when `s` is the gradient of the form
/// `(1/(deg s + 1)) sum x_j s_j` and left `false` otherwise.
pub fn svs_from_relation(g: &MultiPoly, s: &FormSystem) -> Result<SvsCertificate> {
    if g.nvars() != s.len() {
        return Err(GnError::Dimension(format!(
            "relation in {} variables for a system of {} forms",
            g.nvars(),
            s.len()
        )));
    }
    if g.is_zero() {
        return Err(GnError::InvalidRelation("the zero polynomial".into()));
    }
    if !g.compose(s.forms())?.is_zero() {
        return Err(GnError::InvalidRelation(format!(
            "{g} does not vanish on the system"
        )));
    }
    let raw = g
        .gradient()
        .iter()
        .map(|dg| dg.compose(s.forms()))
        .collect::<Result<Vec<_>>>()?;
    if raw.iter().all(MultiPoly::is_zero) {
        return Err(GnError::InvalidRelation(
            "every partial of the relation vanishes on the system; it is not of least degree"
                .into(),
        ));
    }
    let h = FormSystem::new(normalize_system(&raw)?)?;
    let mut checks = system_checks(s.forms(), &h)?;
    if let Some(f) = potential(s) {
        checks.shift_invariance = is_shift_invariant(&f, &h)?;
    }
    Ok(SvsCertificate {
        h,
        reduced: true,
        route: Route::Relation,
        checks,
    })
}

/// The form whose gradient is `s`, if there is one.
fn potential(s: &FormSystem) -> Option<MultiPoly> {
    let n = s.nvars();
    if s.len() != n {
        return None;
    }
    let euler = s
        .forms()
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(n), |acc, (j, sj)| {
            acc + &MultiPoly::var(n, j) * sj
        });
    let f = euler.scale(&Rational::new(BigInt::one(), BigInt::from(s.degree() + 1)));
    (f.gradient() == s.forms()).then_some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_polynomial;
    use crate::poly::int;

    fn p(s: &str, n: usize) -> MultiPoly {
        parse_polynomial(s, Some(n)).unwrap()
    }

    const CUBIC: &str = "x1^2*x3 + x1*x2*x4 + x2^2*x5";

    fn canonical_h() -> Vec<MultiPoly> {
        ["0", "0", "x2^2", "-2*x1*x2", "x1^2"]
            .iter()
            .map(|s| p(s, 5))
            .collect()
    }

    #[test]
    fn canonical_cubic_by_adjugate() {
        let c = extract_reduced_svs(&p(CUBIC, 5)).unwrap();
        assert_eq!(c.h().forms(), canonical_h().as_slice());
        assert_eq!(c.route(), Route::Adjugate);
        assert!(c.reduced());
        assert!(c.checks().all());
    }

    #[test]
    fn small_adjugate_examples() {
        let c = extract_reduced_svs(&p("x1^2", 2)).unwrap();
        assert_eq!(c.h().forms(), &[MultiPoly::zero(2), MultiPoly::one(2)]);
        let c = extract_reduced_svs(&p("x1^2 + x1*x2", 3)).unwrap();
        assert_eq!(
            c.h().forms(),
            &[MultiPoly::zero(3), MultiPoly::zero(3), MultiPoly::one(3)]
        );
        assert!(c.checks().all());
    }

    #[test]
    fn extraction_errors() {
        assert!(matches!(
            extract_reduced_svs(&p("x1*x2", 2)),
            Err(GnError::Domain(_))
        ));
        assert!(matches!(
            extract_reduced_svs(&p("x1^3", 3)),
            Err(GnError::UnsupportedCorank { corank: 2 })
        ));
    }

    #[test]
    fn canonical_relation() {
        let f = p(CUBIC, 5);
        let s = FormSystem::gradient(&f).unwrap();
        let g = find_minimal_relation(&s, 6).unwrap();
        assert_eq!(g, p("x3*x5 - x4^2", 5));
        let c = svs_from_relation(&g, &s).unwrap();
        assert_eq!(c.h().forms(), canonical_h().as_slice());
        assert_eq!(c.route(), Route::Relation);
        assert!(c.checks().all());
    }

    #[test]
    fn relation_with_vanishing_partial() {
        let s = FormSystem::gradient(&p("x1^2 + x1*x2", 3)).unwrap();
        let g = find_minimal_relation(&s, 4).unwrap();
        assert_eq!(g, p("x3", 3));
        let c = svs_from_relation(&g, &s).unwrap();
        assert_eq!(
            c.h().forms(),
            &[MultiPoly::zero(3), MultiPoly::zero(3), MultiPoly::one(3)]
        );
    }

    #[test]
    fn independent_system_exceeds_cap() {
        let s = FormSystem::new(vec![p("x1", 2), p("x2", 2)]).unwrap();
        assert_eq!(
            find_minimal_relation(&s, 3),
            Err(GnError::CapExceeded {
                cap: 3,
                independent: true
            })
        );
    }

    #[test]
    fn bad_relation_is_rejected() {
        let s = FormSystem::gradient(&p(CUBIC, 5)).unwrap();
        assert!(matches!(
            svs_from_relation(&p("x3*x5 + x4^2", 5), &s),
            Err(GnError::InvalidRelation(_))
        ));
    }

    #[test]
    fn tampered_certificate_fails_syzygy() {
        let f = p(CUBIC, 5);
        let mut h = canonical_h();
        h[3] = -h[3].clone();
        let c = SvsCertificate::user_supplied(FormSystem::new(h).unwrap());
        assert_eq!(
            verify_certificate(&f, &c),
            Err(GnError::CertificateInvalid(Identity::SyzygyF))
        );
    }

    #[test]
    fn user_supplied_constant_certificate() {
        let f = p("x1^2 + x1*x2", 3);
        let h = FormSystem::new(vec![
            MultiPoly::zero(3),
            MultiPoly::zero(3),
            MultiPoly::one(3),
        ])
        .unwrap();
        let c = verify_certificate(&f, &SvsCertificate::user_supplied(h)).unwrap();
        assert!(c.checks().all());
        assert_eq!(c.route(), Route::UserSupplied);
    }

    #[test]
    fn normalization() {
        let v = vec![p("-6*x1^2*x2", 2), p("3*x1*x2^2", 2)];
        assert_eq!(
            normalize_system(&v).unwrap(),
            vec![p("2*x1", 2), p("-x2", 2)]
        );
        let v = vec![
            MultiPoly::zero(2),
            MultiPoly::constant(2, Rational::new(BigInt::from(-2), BigInt::from(3))),
        ];
        assert_eq!(
            normalize_system(&v).unwrap()[1],
            MultiPoly::constant(2, int(1))
        );
    }
}
