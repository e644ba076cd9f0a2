//! Singularity invariants of polynomial map germs `(C^n, S) -> (C^(n+1), 0)`.
//!
//! The crate computes, with exact rational arithmetic, the image equation of a
//! one-parameter unfolding, the ideal `FT(π, G)` of vector fields tangent to
//! the level sets of `G` projected onto the parameter direction, the image
//! Milnor number as a Samuel multiplicity (cross-checked by counting critical
//! points of a perturbed image equation), the Bruce-Roberts number, the
//! `A_e`-codimension of germs with a one-parameter stable unfolding, and the
//! logarithmic characteristic ideal.
//!
//! Layers, bottom up:
//!
//! * [`poly`]: sparse polynomials over `Q`, variable contexts, orderings;
//! * [`gb`]: Buchberger and Mora bases, elimination, quotients, dimensions;
//! * [`syzygy`]: syzygy modules and logarithmic vector fields;
//! * [`germ`]: the invariants themselves and the [`germ::InvariantReport`];
//! * [`io`]: expression parser, germ files and report emission.

pub mod error;
pub mod gb;
pub mod germ;
pub mod io;
pub mod poly;
pub mod syzygy;

pub use error::{AlgebraError, ComputeError, GermError};
pub use gb::{Dimension, Ideal, KrullDim, Limits};
pub use poly::{Monomial, OrderingSpec, Polynomial, Rational, Role, VariableContext};
