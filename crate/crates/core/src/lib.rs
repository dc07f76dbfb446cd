//! Exact arithmetic in graded Cartier–Raynaud rings.
//!
//! The ring generated over a graded coefficient ring `A` by `v`, `f` (degree
//! 0) and `d` (degree 1) subject to
//!
//! ```text
//! fv = p          vxf = V(x)
//! df = p fd       vd = p dv
//! fx = F(x) f     xv = v F(x)
//! fdv = d (+ eta if p = 2)      dd = eta d
//! dx = d_A(x) + (-1)^|x| x d
//! ```
//!
//! has every element uniquely of the form
//! `sum v^i x_i + sum d v^i y_i + sum z_j f^j + sum w_j f^j d`.
//! [`crring`] implements that normal form and its product, [`coefficients`]
//! provides the coefficient rings (truncated Witt vectors and friends),
//! [`witt`] is the Witt-vector engine behind them, [`action`] lets ring
//! elements act on modules with `V`, `F`, `d`, and [`lang`] parses and prints
//! everything.

pub mod action;
pub mod coefficients;
pub mod crring;
pub mod exec;
pub mod field;
pub mod lang;
pub mod witt;

pub use coefficients::{CoeffError, CoefficientRing, GradedScalar, RingDescriptor, RingKind};
pub use crring::{CrElement, CrRing, Fault, Letter, Monomial, Word};
