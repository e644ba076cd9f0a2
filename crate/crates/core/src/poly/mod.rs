//! Exact sparse multivariate polynomials over the rationals.

mod context;
mod monomial;
mod order;
mod polynomial;

pub use context::{Role, VariableContext};
pub use monomial::Monomial;
pub use order::{BlockSpec, ModuleOrder, MonomialOrder, OrderingSpec, Position};
pub use polynomial::Polynomial;


/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
