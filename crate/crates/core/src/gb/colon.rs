//! Ideal quotients `(I : f)` in the local ring at the origin with finite
//! colength, certified by two bounds that meet.
//!
//! Lower bound: `(I + m^N) : f` contains `I : f`, and its colength is
//! `dim O/(I + m^N) - dim O/(I + (f) + m^N)`, two truncated dimensions.
//!
//! Upper bound: polynomials `a` of degree at most `d` with `a f ∈ I` over the
//! polynomial ring, found by linear algebra on normal forms modulo a global
//! basis of `I`. They lie in `I : f`, so the ideal they generate has colength
//! at least that of `I : f`.
//!
//! Equal bounds pin the colength, and then the polynomials found generate
//! `I : f` in the local ring. No module basis with cofactors is needed; the
//! cofactors are where exact coefficients explode.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use super::{Ideal, Limits};
use crate::error::{AlgebraError, ComputeError};
use crate::poly::{Monomial, MonomialOrder, OrderingSpec, Polynomial, VariableContext};

/// `(I : f)` in the local ring, with the data that certifies it.
#[derive(Clone, Debug)]
pub struct LocalQuotient {
    ideal: Ideal,
    colength: u64,
    truncation: u64,
    degree: u64,
}

impl LocalQuotient {
    /// Generators over the polynomial ring, with a local ordering.
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `dim O/(I : f)`.
    pub fn colength(&self) -> u64 {
        self.colength
    }

    /// The `N` at which the lower bound met the upper bound.
    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    /// The degree bound `d` on the generators found.
    pub fn degree(&self) -> u64 {
        self.degree
    }
}

/// Elements of `(I : f)` over the polynomial ring, degree by degree.
struct ColonKernel<'a> {
    basis: &'a Ideal,
    f: Polynomial,
    ord: MonomialOrder,
    /// Echelon rows of the normal forms `NF(m f)`, keyed by pivot monomial:
    /// `(residue with unit pivot coefficient, combination)`.
    rows: HashMap<Monomial, (Polynomial, Polynomial)>,
    remainders: HashMap<Monomial, Polynomial>,
    leads: Vec<Monomial>,
    elements: Vec<Polynomial>,
    next_degree: u64,
}

impl<'a> ColonKernel<'a> {
    fn new(basis: &'a Ideal, f: Polynomial) -> Result<Self, ComputeError> {
        let ord = OrderingSpec::DegRevLex.compile(basis.ctx().len())?;
        Ok(ColonKernel {
            basis,
            f,
            ord,
            rows: HashMap::new(),
            remainders: HashMap::new(),
            leads: Vec::new(),
            elements: Vec::new(),
            next_degree: 0,
        })
    }

    fn ctx(&self) -> &Arc<VariableContext> {
        self.basis.ctx()
    }

    /// `NF(m f)`, from `NF(m' f)` when `m = x_i m'` was seen before.
    fn remainder(&mut self, m: &Monomial) -> Result<Polynomial, ComputeError> {
        let nvars = self.ctx().len();
        for i in 0..nvars {
            if m.exponent(i) == 0 {
                continue;
            }
            let mut prev = m.clone();
            prev.set_exponent(i, m.exponent(i) - 1);
            if let Some(r) = self.remainders.get(&prev) {
                let shifted = r.mul_monomial(&Monomial::var(nvars, i, 1));
                return self.basis.normal_form(&shifted);
            }
        }
        self.basis.normal_form(&self.f.mul_monomial(m))
    }

    fn extend_to(&mut self, d: u64) -> Result<(), ComputeError> {
        while self.next_degree <= d {
            let k = self.next_degree;
            let mut monomials = monomials_of_degree(self.ctx().len(), k);
            monomials.sort_by(|a, b| self.ord.cmp(a.exponents(), b.exponents()));
            for m in monomials {
                if self.leads.iter().any(|l| l.divides(&m)) {
                    continue;
                }
                let mut r = self.remainder(&m)?;
                self.remainders.insert(m.clone(), r.clone());
                let mut comb = Polynomial::monomial(self.ctx(), m.clone(), One::one());
                loop {
                    let Some((lm, lc)) = r.leading_term(&self.ord).map(|(m, c)| (m.clone(), c.clone())) else { break };
                    match self.rows.get(&lm) {
                        Some((row, row_comb)) => {
                            r = &r - &row.scale(&lc);
                            comb = &comb - &row_comb.scale(&lc);
                        }
                        None => {
                            let inv = lc.recip();
                            self.rows.insert(lm, (r.scale(&inv), comb.scale(&inv)));
                            break;
                        }
                    }
                }
                if r.is_zero() {
                    self.leads.push(m);
                    self.elements.push(comb.primitive(&self.ord));
                }
            }
            self.next_degree += 1;
        }
        Ok(())
    }
}

fn monomials_of_degree(nvars: usize, d: u64) -> Vec<Monomial> {
    fn go(prefix: &mut Vec<u32>, left: u32, nvars: usize, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Monomial::from_exponents(prefix.iter().copied()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            go(prefix, left - e, nvars, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    go(&mut Vec::with_capacity(nvars), d as u32, nvars, &mut out);
    out
}

impl Ideal {
    /// `(I : f)` in the local ring at the origin, assuming finite colength.
    ///
    /// The truncation `N` and the degree bound `d` advance one step at a
    /// time, `d` first while no finite upper bound is known, until the bounds
    /// meet. An error is returned when `d` passes `max_degree`; a quotient of
    /// infinite colength ends that way.
    pub fn local_quotient(&self, f: &Polynomial, limits: &Limits) -> Result<LocalQuotient, ComputeError> {
        if f.ctx() != &self.ctx {
            return Err(AlgebraError::ContextMismatch.into());
        }
        let global = self.with_ordering(OrderingSpec::DegRevLex)?;
        global.compute(limits)?;
        let unit = |truncation, degree| -> Result<LocalQuotient, ComputeError> {
            let one = Polynomial::one(&self.ctx);
            Ok(LocalQuotient { ideal: Ideal::new(&self.ctx, vec![one], OrderingSpec::LocalDegRevLex)?, colength: 0, truncation, degree })
        };
        if global.contains(f)? {
            return unit(0, 0);
        }
        let max_degree = limits.max_colon_degree;
        let with_f = self.with_generators([f.clone()])?;
        let lower_at = |n: u64| -> Result<u64, ComputeError> { Ok(self.truncated_dim(n, limits)? - with_f.truncated_dim(n, limits)?) };
        let mut kernel = ColonKernel::new(&global, f.clone())?;
        let mut n = 1;
        let mut lower = lower_at(n)?;
        let mut upper: Option<(u64, Ideal)> = None;
        let mut d = 0;
        loop {
            if let Some((u, ideal)) = &upper {
                debug_assert!(lower <= *u, "colon bounds crossed: {lower} > {u}");
                if lower == *u {
                    if *u == 0 {
                        return unit(n, d);
                    }
                    return Ok(LocalQuotient { ideal: ideal.clone(), colength: *u, truncation: n, degree: d });
                }
            }
            // advance the lower bound only once it trails a finite upper bound
            // that the current degree has already tried to improve
            if upper.is_some() && n <= d + 2 {
                n += 1;
                lower = lower_at(n)?;
                continue;
            }
            if d >= max_degree {
                return Err(ComputeError::ResourceLimit { what: "colon degree bound", limit: max_degree as usize });
            }
            d += 1;
            kernel.extend_to(d)?;
            if kernel.elements.is_empty() {
                continue;
            }
            let candidate = Ideal::new(&self.ctx, kernel.elements.clone(), OrderingSpec::LocalDegRevLex)?;
            // colength of the candidate, when m^k lies in it for k <= 2d + 2
            let k = 2 * d + 2;
            let u = candidate.truncated_dim(k, limits)?;
            if u == candidate.truncated_dim(k + 1, limits)? {
                upper = Some((u, candidate));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_polynomial;
    use crate::poly::Role;

    fn ctx() -> Arc<VariableContext> {
        VariableContext::uniform(["x", "y", "z"], Role::Target).unwrap()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 5).len(), 56);
    }

    #[test]
    fn colon_of_monomial_ideal() {
        // (x^3, y^2) : x = (x^2, y^2), colength 4
        let c = ctx();
        let p = |t: &str| parse_polynomial(t, &c).unwrap();
        let i = Ideal::new(&c, vec![p("x^3"), p("y^2"), p("z")], OrderingSpec::DegRevLex).unwrap();
        let q = i.local_quotient(&p("x"), &Limits::default()).unwrap();
        assert_eq!(q.colength(), 4);
    }

    #[test]
    fn colon_of_positive_dimensional_ideal() {
        // (x^2, x y) has the y-axis as its zero set; x spans an embedded
        // component and (x^2, x y) : x = (x, y)
        let c = VariableContext::uniform(["x", "y"], Role::Target).unwrap();
        let p = |t: &str| parse_polynomial(t, &c).unwrap();
        let i = Ideal::new(&c, vec![p("x^2"), p("x*y")], OrderingSpec::DegRevLex).unwrap();
        let q = i.local_quotient(&p("x"), &Limits::default()).unwrap();
        assert_eq!(q.colength(), 1);
    }

    #[test]
    fn unit_factor_away_from_origin() {
        // (x (1 + y)) : (1 + y) = (x) globally, but locally (1 + y) is a unit
        let c = ctx();
        let p = |t: &str| parse_polynomial(t, &c).unwrap();
        let i = Ideal::new(&c, vec![p("x + x*y"), p("y^2"), p("z")], OrderingSpec::DegRevLex).unwrap();
        let q = i.local_quotient(&p("x"), &Limits::default()).unwrap();
        assert_eq!(q.colength(), 0);
    }

    #[test]
    fn member_gives_unit_ideal() {
        let c = ctx();
        let p = |t: &str| parse_polynomial(t, &c).unwrap();
        let i = Ideal::new(&c, vec![p("x"), p("y")], OrderingSpec::DegRevLex).unwrap();
        let q = i.local_quotient(&p("x*z"), &Limits::default()).unwrap();
        assert_eq!(q.colength(), 0);
    }
}
