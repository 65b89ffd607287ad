//! Exact symbolic computation in the Steinberg algebra of a graph groupoid.
//!
//! Elements are finite sums `∑ a·1_{Z(mu, nu)}` of indicator functions of
//! cylinder bisections with Gaussian rational coefficients, kept in a unique
//! normal form so that equality is decidable. On top of the algebra sit the
//! Leavitt path algebra isomorphism, matrix representations, uniqueness
//! certificates, and a model of the Deaconu-Renault groupoid of a shift of
//! finite type.
//!
//! ```
//! use steinberg::{graph::Graph, text::parse_element};
//!
//! let g = Graph::rose(2);
//! let f = parse_element("(1)[a|a] + (1)[b|b]", &g).unwrap();
//! assert_eq!(f.render(&g), "(1)[v|v]");
//! ```

pub mod algebra;
pub mod bisection;
pub mod cli;
pub mod coeff;
pub mod dr;
pub mod error;
pub mod graph;
pub mod inorm;
pub mod lpa;
pub mod point;
pub mod rep;
pub mod text;
pub mod uniqueness;

pub use algebra::AlgebraElement;
pub use bisection::{BasicBisection, CylSet};
pub use coeff::{GaussianRational, Gq, Scalar};
pub use error::{Error, Result};
pub use graph::{Graph, Path};
pub use point::{AperiodicPoint, EvPerPoint, GroupoidElement, Point};
