//! Integral transforms on the half line and numerical verification of the
//! iteration and Parseval-Goldstein identities that connect them.

// Coefficient tables keep their published digits, and `!(x > 0.0)` is the
// idiom that also rejects NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod identities;
pub mod quadrature;
pub mod report;
pub mod specfun;
pub mod transforms;

pub use catalog::{instantiate, Family, FunctionDescriptor};
pub use identities::{check, check_all, CheckOutcome, IdentityKind, IdentitySummary, Status};
pub use quadrature::{Accel, QuadConfig};
pub use report::ReportDocument;
pub use specfun::Order;
pub use transforms::{transform, RealFunction, TransformKind, TransformValue};
