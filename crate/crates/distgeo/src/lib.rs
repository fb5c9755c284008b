//! Exact-to-tolerance differential geometry of non-integrable distributions
//! on orthogonal-frame manifolds: Levi-Civita, semi-symmetric (metric and
//! non-metric) and statistical connections, induced geometry on a
//! distribution, Gauss/Codazzi/Ricci verification, Chen-type inequalities,
//! and Einstein / constant-scalar-curvature solution families.

pub mod catalog;
pub mod connection;
pub mod curvature;
pub mod distribution;
pub mod einstein;
pub mod error;
pub mod expr;
pub mod chen;
pub mod frame;
pub mod golden;
pub mod jet;
pub mod parser;
pub mod report;
pub mod sample;
pub mod scenario;
