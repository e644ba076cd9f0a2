//! Working representation for basis computations: sparse vectors of a free
//! module (rank one for ideals) with integer coefficients, terms kept sorted
//! descending in a [`ModuleOrder`].

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{ModuleOrder, Monomial, Polynomial, Rational};

/// Euclid on magnitudes, finishing in machine words. The binary algorithm
/// of the bignum crate shifts whole numbers per step, which is slow for the
/// coefficient sizes seen here.
pub(crate) fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = if a >= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    loop {
        if b.is_zero() {
            return a;
        }
        if let (Some(x), Some(y)) = (a.to_u64(), b.to_u64()) {
            return BigUint::from(x.gcd(&y));
        }
        let r = &a % &b;
        a = b;
        b = r;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub exp: Monomial,
    pub comp: u32,
    pub coeff: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    /// Builds a primitive integer vector from rational polynomial components.
    /// Returns the vector and the positive rational `k` with `vector = k * input`.
    pub fn from_components(comps: &[(u32, &Polynomial)], ord: &ModuleOrder) -> (Vector, Rational) {
        let denom_lcm = comps
            .iter()
            .flat_map(|(_, p)| p.terms().map(|(_, c)| c.denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let mut terms: Vec<Term> = comps
            .iter()
            .flat_map(|(comp, p)| {
                let denom_lcm = &denom_lcm;
                p.terms().map(move |(m, c)| Term {
                    exp: m.clone(),
                    comp: *comp,
                    coeff: c.numer() * (denom_lcm / c.denom()),
                })
            })
            .collect();
        terms.sort_by(|a, b| ord.cmp(b.exp.exponents(), b.comp, a.exp.exponents(), a.comp));
        let mut v = Vector { terms };
        let c = v.make_primitive();
        (v, Rational::from_integer(denom_lcm) / c)
    }

    pub fn from_polynomial(p: &Polynomial, ord: &ModuleOrder) -> Vector {
        Self::from_components(&[(0, p)], ord).0
    }

    /// Divides by the content and makes the leading coefficient positive.
    /// Returns the signed divisor `c` (new = old / c).
    pub fn make_primitive(&mut self) -> Rational {
        if self.terms.is_empty() {
            return Rational::one();
        }
        // start from the smallest coefficient so a unit content shows up early
        let start = (0..self.terms.len()).min_by_key(|&i| self.terms[i].coeff.bits()).unwrap();
        let mut g = self.terms[start].coeff.magnitude().clone();
        for t in &self.terms {
            if g.is_one() {
                break;
            }
            g = gcd(&g, t.coeff.magnitude());
        }
        let mut g = BigInt::from(g);
        if self.terms[0].coeff.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.coeff /= &g;
            }
        }
        Rational::from_integer(g)
    }

    /// Component `comp` as a rational polynomial over `ctx`, divided by `scale`.
    pub fn component(&self, comp: u32, ctx: &std::sync::Arc<crate::poly::VariableContext>, scale: &Rational) -> Polynomial {
        let inv = scale.recip();
        Polynomial::from_terms(
            ctx,
            self.terms
                .iter()
                .filter(|t| t.comp == comp)
                .map(|t| (t.exp.clone(), Rational::from_integer(t.coeff.clone()) * &inv)),
        )
    }

    pub fn max_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.exp.degree()).max().unwrap_or(0)
    }

    /// `deg(f) - deg(LM(f))`.
    pub fn ecart(&self) -> u64 {
        if self.terms.is_empty() {
            return 0;
        }
        self.max_degree() - self.lead().exp.degree()
    }

    /// `self := a*self - b*m*g`, where `m*lead(g)` is a term of `self` at or
    /// after position `from`. Terms before `from` are only scaled.
    pub fn sub_mul(&mut self, a: &BigInt, b: &BigInt, m: &Monomial, g: &Vector, from: usize, ord: &ModuleOrder) {
        let old = std::mem::take(&mut self.terms);
        let mut out: Vec<Term> = Vec::with_capacity(old.len() + g.terms.len());
        let mut it = old.into_iter().peekable();
        let scale_a = |mut t: Term| {
            if !a.is_one() {
                t.coeff *= a;
            }
            t
        };
        for _ in 0..from {
            out.push(scale_a(it.next().expect("prefix within bounds")));
        }
        let mut gi = g.terms.iter().map(|t| Term { exp: t.exp.mul(m), comp: t.comp, coeff: -(&t.coeff * b) }).peekable();
        loop {
            match (it.peek(), gi.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(scale_a(it.next().unwrap())),
                (None, Some(_)) => out.push(gi.next().unwrap()),
                (Some(x), Some(y)) => match ord.cmp(x.exp.exponents(), x.comp, y.exp.exponents(), y.comp) {
                    Ordering::Greater => out.push(scale_a(it.next().unwrap())),
                    Ordering::Less => out.push(gi.next().unwrap()),
                    Ordering::Equal => {
                        let x = scale_a(it.next().unwrap());
                        let y = gi.next().unwrap();
                        let c = x.coeff + y.coeff;
                        if !c.is_zero() {
                            out.push(Term { exp: x.exp, comp: x.comp, coeff: c });
                        }
                    }
                },
            }
        }
        self.terms = out;
    }

    /// Reduces the term at `pos` of `self` by `g`, whose lead divides it.
    /// Returns the factor `a` that multiplied `self`.
    pub fn reduce_at(&mut self, pos: usize, g: &Vector, ord: &ModuleOrder) -> BigInt {
        let t = &self.terms[pos];
        let gl = g.lead();
        let m = gl.exp.quotient_of(&t.exp);
        let gcd = BigInt::from(gcd(t.coeff.magnitude(), gl.coeff.magnitude()));
        let mut a = &gl.coeff / &gcd;
        let mut b = &t.coeff / &gcd;
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        self.sub_mul(&a, &b, &m, g, pos, ord);
        a
    }

    /// S-vector of `f` and `g` (same leading component), primitive.
    pub fn spoly(f: &Vector, g: &Vector, ord: &ModuleOrder) -> Vector {
        let (fl, gl) = (f.lead(), g.lead());
        debug_assert_eq!(fl.comp, gl.comp);
        let lcm = fl.exp.lcm(&gl.exp);
        let mf = fl.exp.quotient_of(&lcm);
        let mg = gl.exp.quotient_of(&lcm);
        let gcd = BigInt::from(gcd(fl.coeff.magnitude(), gl.coeff.magnitude()));
        let a = &gl.coeff / &gcd;
        let b = &fl.coeff / &gcd;
        let mut h = Vector { terms: f.terms.iter().map(|t| Term { exp: t.exp.mul(&mf), comp: t.comp, coeff: &t.coeff * &a }).collect() };
        h.sub_mul(&BigInt::one(), &b, &mg, g, 0, ord);
        h.make_primitive();
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{OrderingSpec, Role, VariableContext};

    #[test]
    fn spoly_cancels_leads() {
        let ctx = VariableContext::uniform(["x", "y"], Role::Source).unwrap();
        let ord = ModuleOrder::ideal(OrderingSpec::DegRevLex.compile(2).unwrap());
        let x = Polynomial::var(&ctx, "x").unwrap();
        let y = Polynomial::var(&ctx, "y").unwrap();
        let f = Vector::from_polynomial(&(&(&x * &x) - &y), &ord);
        let g = Vector::from_polynomial(&(&(&x * &y) - &x).scale(&Rational::new(3.into(), 2.into())), &ord);
        assert_eq!(g.lead().coeff, BigInt::from(1));
        let s = Vector::spoly(&f, &g, &ord);
        // y*(x^2 - y) - x*(x*y - x) = x^2 - y^2
        let ctxs = ctx.clone();
        let expected = &(&x * &x) - &(&y * &y);
        assert_eq!(s.component(0, &ctxs, &Rational::one()), expected);
    }
}
