use std::fmt;

use thiserror::Error;

/// The identities recorded on an [`SvsCertificate`](crate::svs::SvsCertificate),
/// in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `sum h_j f_j = 0` for the partials `f_j` of the form.
    SyzygyF,
    /// `sum_k h_k d f_k / d x_j = 0` for every `j`.
    SyzygyPartials,
    /// Every component of `h` is annihilated by `D(h)`.
    SelfVanishing,
    /// `f(x + t h) = f(x)` in `K[x][t]`.
    ShiftInvariance,
    /// `h_j(h_1, ..., h_n) = 0` for positive-degree `h`.
    SelfSubstitutionZero,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Identity::SyzygyF => "syzygy_f",
            Identity::SyzygyPartials => "syzygy_partials",
            Identity::SelfVanishing => "self_vanishing",
            Identity::ShiftInvariance => "shift_invariance",
            Identity::SelfSubstitutionZero => "self_substitution_zero",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GnError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("Hessian has corank {corank}; extraction via the adjugate needs corank 1 (use find_minimal_relation)")]
    UnsupportedCorank { corank: usize },

    #[error("no relation found up to degree {cap}{}", if *.independent { " (the system is algebraically independent)" } else { "" })]
    CapExceeded { cap: usize, independent: bool },

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("certificate invalid: identity {0} fails")]
    CertificateInvalid(Identity),

    #[error("not a member: {0}")]
    NotAMember(String),

    #[error("degenerate matrix: {0}")]
    DegenerateMatrix(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, GnError>;
