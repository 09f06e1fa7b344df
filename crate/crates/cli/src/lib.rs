//! Command line front end: argument parsing, dispatch to `gn_core` and
//! exit codes.

pub mod render;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use gn_core::gn_forms::{
    build_delta, check_quinary_structure, represent_in_delta_algebra, seeded_sample, DegreeProfile,
    DeltaData, GnSample, QuinaryReport,
};
use gn_core::hessian::{has_zero_hessian, hessian_matrix};
use gn_core::linear_sol::{sol_generators, sol_membership, span_dimension, ConstantSystem};
use gn_core::poly::{coefficient_matrix, MultiPoly, PolyMatrix, Rational};
use gn_core::svs::{
    check_identities, default_relation_cap, eliminate_birational, eliminate_linear,
    extract_reduced_svs, find_minimal_relation, image_dimension, linear_closure_structure,
    normalize_system, rank_bound_report, svs_from_relation, verify_certificate, CertificateChecks,
    LinearElimination, SvsCertificate,
};
use gn_core::{parse_polynomial, FormSystem, GnError};

use render::{Item, Names, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "gn",
    version,
    about = "Exact computations for forms with vanishing Hessian"
)]
struct Cli {
    /// Number of variables (default: largest index that occurs).
    #[arg(short = 'n', global = true)]
    nvars: Option<usize>,
    /// Print a single JSON document.
    #[arg(long, global = true)]
    json: bool,
    /// Degree cap for relation searches.
    #[arg(long = "max-degree", global = true)]
    max_degree: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the Hessian determinant vanishes identically.
    Check {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the Hessian determinant.
    Hessian {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Extract and verify a reduced self-vanishing system.
    Svs {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Verify a system H1..Hn against the form F.
    VerifySvs {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(required = true, allow_hyphen_values = true)]
        system: Vec<String>,
    },
    /// Eliminate a variable by the birational substitution of a verified system.
    Eliminate {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Least-degree algebraic relation among the partials.
    Relation {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Generators of the solution ring of a constant operator system.
    Solgen {
        /// Rows separated by ';', entries by ','.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Membership in the solution ring of a constant operator system.
    Solcheck {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Generate a quinary form with vanishing Hessian.
    Gen {
        #[arg(long)]
        seed: u64,
        /// "D" or "D:k1,k2,..." (degree, then allowed powers of Delta).
        #[arg(long)]
        profile: String,
        /// 2x3 matrix over x1, x2; drawn from the seed when absent.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// Write a form as P(x1, x2, Delta) for the Delta of a 2x3 matrix.
    Represent {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Jacobian rank of a self-vanishing system against n/2.
    RankBound {
        #[arg(required = true, allow_hyphen_values = true)]
        system: Vec<String>,
    },
    /// Structure pipeline for a quinary form.
    Structure {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

/// Exit code and the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, message: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }
}

/// Runs one command. `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let json = cli.json;
    match dispatch(&cli) {
        Ok((code, report)) => Outcome {
            code,
            stdout: if json { report.json() } else { report.text() },
            stderr: String::new(),
        },
        Err(e) => Outcome::error(exit_code(&e), e.to_string()),
    }
}

fn exit_code(e: &GnError) -> i32 {
    match e {
        GnError::NotAMember(_) => EXIT_FALSE,
        GnError::CapExceeded { .. } | GnError::UnsupportedCorank { .. } => EXIT_CAP,
        GnError::CertificateInvalid(_) | GnError::InvalidRelation(_) => EXIT_INVALID,
        GnError::Dimension(_)
        | GnError::IndexOutOfRange { .. }
        | GnError::UndefinedInput(_)
        | GnError::Domain(_)
        | GnError::DegenerateMatrix(_)
        | GnError::Parse { .. } => EXIT_USAGE,
    }
}

fn truth(b: bool) -> i32 {
    if b {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

/// Parses expressions into one common number of variables, at least
/// `min_vars` unless given explicitly.
fn parse_all(
    exprs: &[String],
    nvars: Option<usize>,
    min_vars: usize,
) -> gn_core::Result<Vec<MultiPoly>> {
    let n = match nvars {
        Some(n) => n,
        None => {
            let mut n = min_vars.max(1);
            for e in exprs {
                n = n.max(parse_polynomial(e, None)?.nvars());
            }
            n
        }
    };
    exprs.iter().map(|e| parse_polynomial(e, Some(n))).collect()
}

fn parse_one(expr: &str, nvars: Option<usize>) -> gn_core::Result<MultiPoly> {
    parse_polynomial(expr, nvars)
}

/// Rows separated by `;`, entries by `,`.
fn matrix_entries(text: &str, nvars: usize) -> gn_core::Result<Vec<Vec<MultiPoly>>> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|e| parse_polynomial(e, Some(nvars)))
                .collect()
        })
        .collect()
}

fn rational_matrix(text: &str) -> gn_core::Result<Vec<Vec<Rational>>> {
    matrix_entries(text, 1)?
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|p| {
                    if p.is_constant() {
                        Ok(p.constant_term())
                    } else {
                        Err(GnError::Domain(format!(
                            "matrix entry {p} is not a constant"
                        )))
                    }
                })
                .collect()
        })
        .collect()
}

fn delta_from_text(text: &str) -> gn_core::Result<DeltaData> {
    build_delta(&PolyMatrix::from_rows(matrix_entries(text, 5)?)?)
}

fn push_checks(r: &mut Report, checks: &CertificateChecks) {
    for (id, ok) in checks.entries() {
        r.push(&id.to_string(), Item::Bool(ok));
    }
}

/// How a certificate was found for a form.
enum Found {
    Linear(LinearElimination, SvsCertificate),
    Svs(SvsCertificate),
}

/// Linear dependence of the partials first, then the adjugate route, then
/// the relation route when the Hessian corank exceeds one.
fn find_certificate(f: &MultiPoly, cap: Option<usize>) -> gn_core::Result<Found> {
    if !has_zero_hessian(f)? {
        return Err(GnError::Domain(
            "the Hessian determinant does not vanish".into(),
        ));
    }
    if let Some(lin) = eliminate_linear(f) {
        let partials = f.gradient();
        if partials.iter().any(|p| !p.is_zero()) {
            let v = coefficient_matrix(&partials).left_nullspace().remove(0);
            let n = f.nvars();
            let v: Vec<MultiPoly> = v.into_iter().map(|c| MultiPoly::constant(n, c)).collect();
            let h = FormSystem::new(normalize_system(&v)?)?;
            let cert = verify_certificate(f, &SvsCertificate::user_supplied(h))?;
            return Ok(Found::Linear(lin, cert));
        }
    }
    match extract_reduced_svs(f) {
        Ok(c) => Ok(Found::Svs(c)),
        Err(GnError::UnsupportedCorank { .. }) => {
            let partials = FormSystem::gradient(f)?;
            let degree = f.total_degree().finite().unwrap_or(0);
            let cap = cap.unwrap_or_else(|| default_relation_cap(degree));
            let g = find_minimal_relation(&partials, cap)?;
            Ok(Found::Svs(svs_from_relation(&g, &partials)?))
        }
        Err(e) => Err(e),
    }
}

fn certificate_report(r: &mut Report, c: &SvsCertificate) {
    r.push("h", Item::Polys(c.h().forms().to_vec()));
    r.push("reduced", Item::Bool(c.reduced()));
    push_checks(r, &c.checks());
}

fn sample_report(r: &mut Report, d: &DeltaData, s: &GnSample) {
    r.push("form", Item::Poly(s.form.clone(), Names::X));
    r.push("matrix", Item::PolyMatrix(d.matrix().clone()));
    r.push("delta", Item::Poly(d.delta().clone(), Names::X));
    r.push("minors", Item::Polys(d.minors().to_vec()));
    r.push("p", Item::Poly(s.p.clone(), Names::Uvw));
}

fn dispatch(cli: &Cli) -> gn_core::Result<(i32, Report)> {
    let mut r = Report::new();
    let n = cli.nvars;
    let code = match &cli.command {
        Command::Check { expr } => {
            let zero = has_zero_hessian(&parse_one(expr, n)?)?;
            r.push("zero-hessian", Item::Bool(zero));
            truth(zero)
        }
        Command::Hessian { expr } => {
            let det = hessian_matrix(&parse_one(expr, n)?)?.determinant()?;
            r.push("determinant", Item::Poly(det, Names::X));
            EXIT_OK
        }
        Command::Svs { expr } => {
            let f = parse_one(expr, n)?;
            match find_certificate(&f, cli.max_degree)? {
                Found::Linear(lin, cert) => {
                    r.push("route", Item::Text("linear".into()));
                    r.push("span-dimension", Item::Count(lin.span_dim));
                    r.push("transform", Item::Matrix(lin.transform));
                    r.push("transformed", Item::Poly(lin.form, Names::X));
                    certificate_report(&mut r, &cert);
                }
                Found::Svs(cert) => {
                    r.push("route", Item::Text(cert.route().to_string()));
                    certificate_report(&mut r, &cert);
                }
            }
            EXIT_OK
        }
        Command::VerifySvs { form, system } => {
            let mut all = vec![form.clone()];
            all.extend(system.iter().cloned());
            let mut polys = parse_all(&all, n, system.len())?;
            let f = polys.remove(0);
            let h = FormSystem::new(polys)?;
            let checks = check_identities(&f, &h)?;
            push_checks(&mut r, &checks);
            r.push("valid", Item::Bool(checks.all()));
            if checks.all() {
                EXIT_OK
            } else {
                EXIT_INVALID
            }
        }
        Command::Eliminate { expr } => {
            let f = parse_one(expr, n)?;
            let cert = match find_certificate(&f, cli.max_degree)? {
                Found::Linear(_, c) | Found::Svs(c) => c,
            };
            let (sub, image) = eliminate_birational(&f, &cert).map_err(|e| match e {
                GnError::Domain(m) => GnError::InvalidRelation(m),
                e => e,
            })?;
            let inverse = sub.inverse_images()?;
            r.push("h", Item::Polys(cert.h().forms().to_vec()));
            r.push("pivot", Item::Text(format!("x{}", sub.pivot() + 1)));
            r.push("s", Item::RatFns(sub.s().to_vec()));
            r.push("inverse", Item::RatFns(inverse));
            r.push("image", Item::RatFn(image));
            r.push(
                "identity",
                Item::Text(format!(
                    "f(s) = f with s{} = 0, h(s) = h and x = x(s) verified",
                    sub.pivot() + 1
                )),
            );
            EXIT_OK
        }
        Command::Relation { expr } => {
            let f = parse_one(expr, n)?;
            let partials = FormSystem::gradient(&f)?;
            let degree = f.total_degree().finite().unwrap_or(0);
            let cap = cli
                .max_degree
                .unwrap_or_else(|| default_relation_cap(degree));
            let g = find_minimal_relation(&partials, cap)?;
            let gd = g.total_degree().finite().unwrap_or(0);
            r.push("relation", Item::Poly(g, Names::Y));
            r.push("degree", Item::Count(gd as usize));
            EXIT_OK
        }
        Command::Solgen { matrix } => {
            let s = ConstantSystem::new(rational_matrix(matrix)?)?;
            let gens: Vec<MultiPoly> = sol_generators(&s)
                .into_iter()
                .filter(|g| !g.is_zero())
                .collect();
            r.push("span-dimension", Item::Count(span_dimension(&gens)));
            r.push("generators", Item::Polys(gens));
            EXIT_OK
        }
        Command::Solcheck { expr, matrix } => {
            let s = ConstantSystem::new(rational_matrix(matrix)?)?;
            let f = parse_one(expr, Some(n.unwrap_or(s.n())))?;
            let member = sol_membership(&f, &s)?;
            r.push("member", Item::Bool(member));
            truth(member)
        }
        Command::Gen {
            seed,
            profile,
            matrix,
        } => {
            let profile: DegreeProfile = profile.parse()?;
            let (d, s) = match matrix {
                Some(m) => {
                    let d = delta_from_text(m)?;
                    let s = gn_core::gn_forms::generate_gn_form(&d, &profile, *seed)?;
                    (d, s)
                }
                None => seeded_sample(*seed, &profile)?,
            };
            r.push("seed", Item::Text(seed.to_string()));
            r.push("profile", Item::Text(profile.to_string()));
            sample_report(&mut r, &d, &s);
            EXIT_OK
        }
        Command::Represent { expr, matrix } => {
            let d = delta_from_text(matrix)?;
            let f = parse_one(expr, Some(5))?;
            let p = represent_in_delta_algebra(&f, &d)?;
            r.push("delta", Item::Poly(d.delta().clone(), Names::X));
            r.push("p", Item::Poly(p, Names::Uvw));
            r.push("reconstructed", Item::Bool(true));
            EXIT_OK
        }
        Command::RankBound { system } => {
            let h = FormSystem::new(parse_all(system, n, system.len())?)?;
            let report = rank_bound_report(&h)?;
            let closure = linear_closure_structure(&h)?;
            r.push("jacobian-rank", Item::Count(report.jacobian_rank));
            r.push("nvars", Item::Count(report.nvars));
            r.push("satisfied", Item::Bool(report.satisfied));
            r.push("image-dimension", Item::Count(image_dimension(&h)));
            r.push("linear-closure-dimension", Item::Count(closure.s));
            r.push("linear-closure-annihilates", Item::Bool(closure.holds));
            truth(report.satisfied)
        }
        Command::Structure { expr } => {
            let f = parse_one(expr, Some(n.unwrap_or(5)))?;
            match check_quinary_structure(&f)? {
                QuinaryReport::Linear(lin) => {
                    r.push("result", Item::Text("linear".into()));
                    r.push("span-dimension", Item::Count(lin.span_dim));
                    r.push("transform", Item::Matrix(lin.transform));
                    r.push("transformed", Item::Poly(lin.form, Names::X));
                    EXIT_OK
                }
                QuinaryReport::Delta {
                    svs,
                    frame,
                    transformed,
                    delta,
                    p,
                } => {
                    r.push("result", Item::Text("delta".into()));
                    r.push("h", Item::Polys(svs.h().forms().to_vec()));
                    r.push("frame", Item::Matrix(frame));
                    r.push("transformed", Item::Poly(transformed, Names::X));
                    r.push("matrix", Item::PolyMatrix(delta.matrix().clone()));
                    r.push("delta", Item::Poly(delta.delta().clone(), Names::X));
                    r.push("p", Item::Poly(p, Names::Uvw));
                    EXIT_OK
                }
                QuinaryReport::Failed { stage, message } => {
                    r.push("result", Item::Text("failed".into()));
                    r.push("stage", Item::Text(stage.to_string()));
                    r.push("message", Item::Text(message));
                    EXIT_FALSE
                }
            }
        }
    };
    Ok((code, r))
}
