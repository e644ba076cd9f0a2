//! Gröbner bases (global orderings), standard bases (local orderings) and the
//! ideal-theoretic toolkit built on them.

mod colon;
mod saturate;
pub(crate) mod engine;
mod staircase;
pub(crate) mod vector;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

pub use colon::LocalQuotient;
pub use staircase::{count_standard_monomials, count_standard_monomials_below, krull_dimension, Dimension, KrullDim};

use crate::error::{AlgebraError, ComputeError};
use crate::poly::{ModuleOrder, Monomial, OrderingSpec, Polynomial, Rational, Role, VariableContext};
use engine::{compute_basis, compute_basis_truncated, full_reduce, mora_nf, Budget};
use vector::Vector;

/// Largest truncation degree tried by [`Ideal::quotient_dim_local`] before
/// falling back to a full standard basis.
pub const TRUNCATION_CAP: u64 = 128;

/// Resource bounds for basis computations. Exceeding one is an error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    pub max_pairs: usize,
    pub max_degree: u64,
    pub max_reductions: usize,
    /// Degree bound for the generators searched by [`Ideal::local_quotient`].
    pub max_colon_degree: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_pairs: 500_000, max_degree: 400, max_reductions: 50_000_000, max_colon_degree: 24 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    /// Reduced Gröbner basis for a global ordering.
    GroebnerGlobal,
    /// Minimal standard basis for a local (or mixed) ordering.
    StandardLocal,
}

/// A computed basis. Elements are primitive integer polynomials with
/// positive leading coefficient, sorted ascending by leading monomial.
#[derive(Clone, Debug)]
pub struct Basis {
    kind: BasisKind,
    elements: Vec<Polynomial>,
    leads: Vec<Monomial>,
    vectors: Vec<Vector>,
}

impl Basis {
    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Generators over a context and ordering, with a write-once cached basis.
pub struct Ideal {
    ctx: Arc<VariableContext>,
    ordering: OrderingSpec,
    order: ModuleOrder,
    gens: Vec<Polynomial>,
    basis: OnceLock<Basis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal { ctx: self.ctx.clone(), ordering: self.ordering.clone(), order: self.order.clone(), gens: self.gens.clone(), basis }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ideal").field("ordering", &self.ordering).field("gens", &self.gens).finish()
    }
}

impl Ideal {
    pub fn new(ctx: &Arc<VariableContext>, gens: Vec<Polynomial>, ordering: OrderingSpec) -> Result<Self, ComputeError> {
        for g in &gens {
            if g.ctx() != ctx {
                return Err(AlgebraError::ContextMismatch.into());
            }
        }
        let order = ModuleOrder::ideal(ordering.compile(ctx.len())?);
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ctx: ctx.clone(), ordering, order, gens, basis: OnceLock::new() })
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn ordering(&self) -> &OrderingSpec {
        &self.ordering
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_global(&self) -> bool {
        self.order.ring.is_global()
    }

    pub fn is_local(&self) -> bool {
        self.order.ring.is_local()
    }

    pub fn basis(&self) -> Option<&Basis> {
        self.basis.get()
    }

    pub fn basis_kind(&self) -> Option<BasisKind> {
        self.basis.get().map(Basis::kind)
    }

    /// Same generators under another ordering (no basis carried over).
    pub fn with_ordering(&self, ordering: OrderingSpec) -> Result<Ideal, ComputeError> {
        Ideal::new(&self.ctx, self.gens.clone(), ordering)
    }

    /// Generators of `self` followed by `extra`, same ordering.
    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal, ComputeError> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ctx, gens, self.ordering.clone())
    }

    /// Computes (once) the basis matching the ordering kind.
    pub fn compute(&self, limits: &Limits) -> Result<&Basis, ComputeError> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let gens: Vec<Vector> = self.gens.iter().map(|g| Vector::from_polynomial(g, &self.order)).collect();
        let vectors = compute_basis(gens, &self.order, limits, true)?;
        let kind = if self.is_global() { BasisKind::GroebnerGlobal } else { BasisKind::StandardLocal };
        let elements = vectors.iter().map(|v| v.component(0, &self.ctx, &Rational::from_integer(1.into()))).collect();
        let leads = vectors.iter().map(|v| v.lead().exp.clone()).collect();
        let _ = self.basis.set(Basis { kind, elements, leads, vectors });
        Ok(self.basis.get().unwrap())
    }

    pub fn groebner_basis(&self, limits: &Limits) -> Result<&Basis, ComputeError> {
        if !self.is_global() {
            return Err(ComputeError::WrongOrderingKind { expected: "global" });
        }
        self.compute(limits)
    }

    pub fn standard_basis_local(&self, limits: &Limits) -> Result<&Basis, ComputeError> {
        if self.is_global() {
            return Err(ComputeError::WrongOrderingKind { expected: "local" });
        }
        self.compute(limits)
    }

    /// Remainder of `p` against the cached basis: the unique normal form for
    /// global orderings, Mora's weak normal form (up to a unit) otherwise.
    /// Zero exactly when `p` lies in the ideal (in the local ring, for local orderings).
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, ComputeError> {
        let basis = self.basis.get().ok_or(ComputeError::BasisMissing)?;
        if p.ctx() != &self.ctx {
            return Err(AlgebraError::ContextMismatch.into());
        }
        if p.is_zero() {
            return Ok(p.clone());
        }
        let (v, k) = Vector::from_components(&[(0, p)], &self.order);
        let mut budget = Budget::new(&Limits { max_reductions: usize::MAX, ..Limits::default() });
        let (r, scale) = if basis.kind == BasisKind::GroebnerGlobal {
            let refs: Vec<_> = basis.vectors.iter().enumerate().map(|(i, b)| (i, b, 0, b.terms.len())).collect();
            full_reduce(v, &refs, 0, &self.order, &mut budget)?
        } else {
            mora_nf(v, basis.vectors.iter().map(|b| (b, b.ecart())), &self.order, &mut budget)?
        };
        // r = scale * k * (p - combination)
        Ok(r.component(0, &self.ctx, &(scale * k)))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, ComputeError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Every generator of `other` lies in `self` (basis of `self` required).
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, ComputeError> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self, limits: &Limits) -> Result<bool, ComputeError> {
        Ok(self.compute(limits)?.leads.iter().any(Monomial::is_one))
    }

    /// Dimension of the quotient by the leading ideal of the cached (or
    /// freshly computed) basis under the ideal's own ordering.
    pub fn quotient_dim(&self, limits: &Limits) -> Result<Dimension, ComputeError> {
        let b = self.compute(limits)?;
        Ok(count_standard_monomials(&b.leads, self.ctx.len()))
    }

    /// `dim_Q O/I` in the local ring at the origin.
    ///
    /// First tries `I + m^n` for growing `n`: once the dimensions for `n` and
    /// `n + 1` agree, `m^n` lies in `I` by Nakayama and the common value is
    /// the answer. These computations run modulo `m^(n+1)`, so they stay
    /// small. If no `n` up to [`TRUNCATION_CAP`] works, a full standard
    /// basis decides (this is also how infinite dimension is detected).
    pub fn quotient_dim_local(&self, limits: &Limits) -> Result<Dimension, ComputeError> {
        if self.gens.iter().all(Polynomial::is_zero) {
            return Ok(if self.ctx.is_empty() { Dimension::Finite(1) } else { Dimension::Infinite });
        }
        if let Some(d) = self.truncated_local_dim(TRUNCATION_CAP, limits)? {
            return Ok(Dimension::Finite(d));
        }
        if self.is_local() {
            return self.quotient_dim(limits);
        }
        self.with_ordering(self.ordering.localized())?.quotient_dim(limits)
    }

    /// `dim_Q O/I` when `m^n ⊆ I` for some `n <= max_n` (tried at powers of
    /// two from 4 on), `None` otherwise. A `Some` is exact; a `None` proves
    /// nothing.
    pub fn truncated_local_dim(&self, max_n: u64, limits: &Limits) -> Result<Option<u64>, ComputeError> {
        let mut n = 4;
        while n <= max_n {
            let lo = self.truncated_dim(n, limits)?;
            if lo == self.truncated_dim(n + 1, limits)? {
                return Ok(Some(lo));
            }
            n *= 2;
        }
        Ok(None)
    }

    /// `dim_Q Q[x]/(I + m^n)`, computed with a local degree ordering modulo `m^n`.
    pub fn truncated_dim(&self, n: u64, limits: &Limits) -> Result<u64, ComputeError> {
        let order = ModuleOrder::ideal(OrderingSpec::LocalDegRevLex.compile(self.ctx.len())?);
        let gens: Vec<Vector> = self.gens.iter().map(|g| Vector::from_polynomial(g, &order)).collect();
        let basis = compute_basis_truncated(gens, &order, limits, n)?;
        let leads: Vec<Monomial> = basis.iter().map(|v| v.lead().exp.clone()).collect();
        Ok(count_standard_monomials_below(&leads, self.ctx.len(), n))
    }

    /// Dimension of the leading ideal of the cached basis.
    pub fn krull_dim_leading(&self) -> Result<KrullDim, ComputeError> {
        let b = self.basis.get().ok_or(ComputeError::BasisMissing)?;
        Ok(krull_dimension(&b.leads, self.ctx.len()))
    }

    /// Krull dimension of `O/I` in the local ring at the origin.
    pub fn krull_dim_local(&self, limits: &Limits) -> Result<KrullDim, ComputeError> {
        if self.is_local() {
            self.compute(limits)?;
            return self.krull_dim_leading();
        }
        let local = self.with_ordering(self.ordering.localized())?;
        local.compute(limits)?;
        local.krull_dim_leading()
    }

    /// `I ∩ k[vars not in eliminate]`, over the smaller context with degrevlex.
    pub fn elimination_ideal(&self, eliminate: &[usize], limits: &Limits) -> Result<Ideal, ComputeError> {
        let n = self.ctx.len();
        if let Some(&bad) = eliminate.iter().find(|&&i| i >= n) {
            return Err(AlgebraError::UnknownVariable(format!("#{bad}")).into());
        }
        let elim = self.with_ordering(OrderingSpec::elimination(n, eliminate))?;
        let basis = elim.groebner_basis(limits)?;
        let small = self.ctx.without(eliminate);
        let gens = basis
            .elements
            .iter()
            .filter(|g| eliminate.iter().all(|&i| !g.involves(i)))
            .map(|g| g.in_context(&small))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&small, gens, OrderingSpec::DegRevLex)
    }

    /// `I ∩ J` via `(t·I + (1-t)·J) ∩ k[x]`.
    pub fn intersection(&self, other: &Ideal, limits: &Limits) -> Result<Ideal, ComputeError> {
        if other.ctx != self.ctx {
            return Err(AlgebraError::ContextMismatch.into());
        }
        let t_name = self.ctx.fresh_name("t");
        let big = self.ctx.extended([(t_name.as_str(), Role::Auxiliary)])?;
        let t = Polynomial::var_index(&big, self.ctx.len());
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.in_context(&big)?);
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.in_context(&big)?);
        }
        let joint = Ideal::new(&big, gens, OrderingSpec::DegRevLex)?;
        let elim = joint.elimination_ideal(&[self.ctx.len()], limits)?;
        let back = elim.gens.iter().map(|g| g.in_context(&self.ctx)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&self.ctx, back, self.ordering.clone())
    }

    /// `(I : f)` over the polynomial ring (global computation), as
    /// `(I ∩ (f)) / f`.
    pub fn quotient(&self, f: &Polynomial, limits: &Limits) -> Result<Ideal, ComputeError> {
        if f.is_zero() {
            return Err(AlgebraError::DivisionByZero.into());
        }
        let principal = Ideal::new(&self.ctx, vec![f.clone()], OrderingSpec::DegRevLex)?;
        let meet = self.with_ordering(OrderingSpec::DegRevLex)?.intersection(&principal, limits)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.exact_div(f).ok_or(AlgebraError::DivisionByZero))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&self.ctx, gens, self.ordering.clone())
    }

    /// `(I : f^∞)` via `(I + (1 - t f)) ∩ k[x]`.
    pub fn saturation(&self, f: &Polynomial, limits: &Limits) -> Result<Ideal, ComputeError> {
        if f.is_zero() {
            return Err(AlgebraError::DivisionByZero.into());
        }
        let t_name = self.ctx.fresh_name("t");
        let big = self.ctx.extended([(t_name.as_str(), Role::Auxiliary)])?;
        let t = Polynomial::var_index(&big, self.ctx.len());
        let mut gens = self.gens.iter().map(|g| g.in_context(&big)).collect::<Result<Vec<_>, _>>()?;
        gens.push(&Polynomial::one(&big) - &(&t * &f.in_context(&big)?));
        let joint = Ideal::new(&big, gens, OrderingSpec::DegRevLex)?;
        let elim = joint.elimination_ideal(&[self.ctx.len()], limits)?;
        let back = elim.gens.iter().map(|g| g.in_context(&self.ctx)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&self.ctx, back, self.ordering.clone())
    }

    /// Mutual containment test in the ring fixed by the ideals' orderings.
    pub fn equals(&self, other: &Ideal, limits: &Limits) -> Result<bool, ComputeError> {
        self.compute(limits)?;
        other.compute(limits)?;
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }
}

/// Reduces `p` modulo the ideal generated by `gens` under a throwaway
/// degrevlex basis; convenience for one-off membership checks.
pub fn reduce_modulo(p: &Polynomial, gens: &[Polynomial], limits: &Limits) -> Result<Polynomial, ComputeError> {
    let ideal = Ideal::new(p.ctx(), gens.to_vec(), OrderingSpec::DegRevLex)?;
    ideal.compute(limits)?;
    ideal.normal_form(p)
}
