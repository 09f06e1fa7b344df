pub mod corpus;
pub mod error;
pub mod expr;
pub mod gn_forms;
pub mod hessian;
pub mod linear_sol;
pub mod poly;
pub mod svs;

pub use error::{GnError, Identity, Result};
pub use expr::{parse_polynomial, ParsedExpr};
pub use hessian::FormSystem;
pub use poly::{MultiPoly, PolyMatrix, QMatrix, Rational, RationalFunction};
pub use svs::SvsCertificate;
