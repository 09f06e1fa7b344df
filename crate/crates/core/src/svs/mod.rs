//! Self-vanishing systems: the operator `D(h) = sum h_j d/dx_j`, extraction
//! and verification of reduced systems, birational and linear elimination,
//! and the linear-closure and rank checks.

pub mod certificate;
pub mod elimination;
pub mod operator;
pub mod structure;

pub use certificate::{
    check_identities, default_relation_cap, extract_reduced_svs, find_minimal_relation,
    normalize_system, svs_from_relation, verify_certificate, CertificateChecks, Route,
    SvsCertificate,
};
pub use elimination::{
    eliminate_birational, eliminate_linear, BirationalSubstitution, LinearElimination,
};
pub use operator::{
    apply_operator, is_in_sol, is_self_vanishing, is_shift_invariant, self_substitution_vanishes,
    shift, taylor_coefficient, Direction,
};
pub use structure::{
    image_dimension, linear_closure_structure, rank_bound_report, LinearClosure, RankBoundReport,
};
