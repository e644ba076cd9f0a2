//! `dim k[x]/(I : f^∞)` over the polynomial ring, through Hilbert functions.
//!
//! Multiplication by `f^k` identifies `k[x]/(I : f^k)` with `(I + (f^k))/I`,
//! whose dimension is the eventual difference of the affine Hilbert functions
//! of `I` and `I + (f^k)`. Both come from degree-compatible bases, which stay
//! small where a Rabinowitsch or elimination basis does not. The ideals
//! `I : f^k` grow with `k`; two equal finite dimensions in a row mean they
//! stopped growing, so the saturation has been reached.

use super::{count_standard_monomials_below, Dimension, Ideal, Limits};
use crate::error::{AlgebraError, ComputeError};
use crate::poly::{Monomial, OrderingSpec, Polynomial};

/// Eventual value of `HF_a(d) - HF_b(d)` for monomial ideals `a ⊆ b`, where
/// `HF(d)` counts standard monomials of degree `<= d`; `None` when the
/// difference is unbounded.
fn hilbert_gap(a: &[Monomial], b: &[Monomial], nvars: usize) -> Option<u64> {
    let top = a.iter().chain(b).map(Monomial::degree).max().unwrap_or(0);
    // both Hilbert functions are polynomial from the degree of the lcm of
    // all generators on, which is at most nvars * top; a polynomial of
    // degree <= nvars constant on nvars + 1 consecutive values is constant
    let start = nvars as u64 * top + 1;
    let gap = |d: u64| count_standard_monomials_below(a, nvars, d + 1) - count_standard_monomials_below(b, nvars, d + 1);
    let first = gap(start);
    (1..=nvars as u64).all(|i| gap(start + i) == first).then_some(first)
}

impl Ideal {
    /// `dim k[x]/(I : f^∞)`, trying `I : f^k` for `k` up to `max_power`.
    /// Reports [`Dimension::Infinite`] when no `I : f^k` in that range has
    /// finite codimension twice in a row.
    pub fn saturation_dim(&self, f: &Polynomial, max_power: u32, limits: &Limits) -> Result<Dimension, ComputeError> {
        if f.ctx() != &self.ctx {
            return Err(AlgebraError::ContextMismatch.into());
        }
        if f.is_zero() {
            return Err(AlgebraError::DivisionByZero.into());
        }
        let nvars = self.ctx.len();
        let base = self.with_ordering(OrderingSpec::DegRevLex)?;
        let base_leads = base.compute(limits)?.leads.clone();
        let mut previous: Option<u64> = None;
        for k in 1..=max_power {
            let bigger = base.with_generators([f.pow(k)])?;
            let leads = &bigger.compute(limits)?.leads;
            let current = hilbert_gap(&base_leads, leads, nvars);
            if let (Some(p), Some(c)) = (previous, current) {
                if p == c {
                    return Ok(Dimension::Finite(c));
                }
            }
            previous = current;
        }
        Ok(Dimension::Infinite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_polynomial;
    use crate::poly::{Role, VariableContext};

    #[test]
    fn removes_components_inside_the_hypersurface() {
        // V(x y, x (x - 1)) = {x = 0} ∪ {(1, 0)}; off x = 0 one simple point
        let c = VariableContext::uniform(["x", "y"], Role::Target).unwrap();
        let p = |t: &str| parse_polynomial(t, &c).unwrap();
        let i = Ideal::new(&c, vec![p("x*y"), p("x^2 - x")], OrderingSpec::DegRevLex).unwrap();
        assert_eq!(i.saturation_dim(&p("x"), 6, &Limits::default()).unwrap(), Dimension::Finite(1));
    }

    #[test]
    fn embedded_structure_needs_higher_powers() {
        // (x^3 y, x^3 (x - 1)^2, y^2): off x = 0 a double point at (1, 0)
        let c = VariableContext::uniform(["x", "y"], Role::Target).unwrap();
        let p = |t: &str| parse_polynomial(t, &c).unwrap();
        let i = Ideal::new(&c, vec![p("x^3*y"), p("x^3*(x - 1)^2"), p("y^2")], OrderingSpec::DegRevLex).unwrap();
        assert_eq!(i.saturation_dim(&p("x"), 8, &Limits::default()).unwrap(), Dimension::Finite(2));
    }

    #[test]
    fn positive_dimensional_saturation_is_infinite() {
        let c = VariableContext::uniform(["x", "y"], Role::Target).unwrap();
        let p = |t: &str| parse_polynomial(t, &c).unwrap();
        let i = Ideal::new(&c, vec![p("x*y")], OrderingSpec::DegRevLex).unwrap();
        assert_eq!(i.saturation_dim(&p("x"), 4, &Limits::default()).unwrap(), Dimension::Infinite);
    }

    #[test]
    fn unit_saturation() {
        let c = VariableContext::uniform(["x", "y"], Role::Target).unwrap();
        let p = |t: &str| parse_polynomial(t, &c).unwrap();
        let i = Ideal::new(&c, vec![p("x"), p("y^2")], OrderingSpec::DegRevLex).unwrap();
        assert_eq!(i.saturation_dim(&p("x + y"), 4, &Limits::default()).unwrap(), Dimension::Finite(0));
    }
}
