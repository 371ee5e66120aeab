//! Exact algebra on the function family spanned by
//! `c * sin^p(theta) * cos^q(theta) * exp(i*mu*phi)` with Gaussian-rational `c`,
//! half-integer `p` and `mu`, and nonnegative integer `q`.

mod chebyshev;
mod eval;
mod exact;
mod expr;
mod gauss;
mod half;

pub use chebyshev::{chebyshev_t, chebyshev_u_shifted};
pub use eval::{eval_expr, CompiledExpr};
pub use exact::ExactValue;
pub use expr::{add, canonicalize, d_dphi, d_dtheta, mul, scale, TrigExpr, TrigTerm};
pub use gauss::{format_rational, parse_rational, GaussianRational};
pub use half::HalfInteger;
