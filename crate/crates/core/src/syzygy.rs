//! Syzygy modules and logarithmic vector fields.
//!
//! Syzygies of `(g_1, ..., g_k)` are computed by the free-module construction:
//! each generator `g_i e_0 + e_i` lives in a module of rank `k + 1`, a basis is
//! computed under position-over-term with `e_0` largest, and the basis
//! elements without an `e_0` component generate the syzygy module.

use std::sync::Arc;

use crate::error::{AlgebraError, ComputeError};
use crate::gb::engine::{compute_basis, compute_basis_truncated, full_reduce, mora_nf, Budget};
use crate::gb::vector::Vector;
use crate::gb::{Ideal, Limits};
use crate::poly::{ModuleOrder, OrderingSpec, Polynomial, Position, Rational, Role, VariableContext};

/// What a module component stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentLabel {
    /// Coefficient of `∂/∂v` for the context variable at this index.
    Derivation(usize),
    /// Plain position in a tuple.
    Index(usize),
}

/// Fixed-length tuple of polynomials over one context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    components: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn new(components: Vec<Polynomial>) -> Self {
        ModuleElement { components }
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// `Σ a_i g_i`.
    pub fn pair_with(&self, g: &[Polynomial]) -> Result<Polynomial, ComputeError> {
        if g.len() != self.rank() || g.is_empty() {
            return Err(ComputeError::RankMismatch);
        }
        let mut acc = Polynomial::zero(g[0].ctx());
        for (a, gi) in self.components.iter().zip(g) {
            acc = acc.checked_add(&a.checked_mul(gi)?)?;
        }
        Ok(acc)
    }

    fn to_vector(&self, offset: u32, ord: &ModuleOrder) -> Vector {
        let comps: Vec<(u32, &Polynomial)> = self.components.iter().enumerate().map(|(i, p)| (i as u32 + offset, p)).collect();
        Vector::from_components(&comps, ord).0
    }

    fn from_vector(v: &Vector, rank: usize, offset: u32, ctx: &Arc<VariableContext>) -> Self {
        let one = Rational::from_integer(1.into());
        ModuleElement { components: (0..rank).map(|i| v.component(i as u32 + offset, ctx, &one)).collect() }
    }
}

/// Generators of the syzygy module of `tuple`.
#[derive(Clone, Debug)]
pub struct SyzygyBasis {
    ctx: Arc<VariableContext>,
    tuple: Vec<Polynomial>,
    labels: Vec<ComponentLabel>,
    elements: Vec<ModuleElement>,
}

impl SyzygyBasis {
    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn tuple(&self) -> &[Polynomial] {
        &self.tuple
    }

    pub fn labels(&self) -> &[ComponentLabel] {
        &self.labels
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// Component index carrying `label`.
    pub fn position_of(&self, label: ComponentLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

/// Basis of the module generated by `g_i e_0 + e_i`. Its elements without an
/// `e_0` component generate the syzygies of `g`; reducing `f e_0` against it
/// expresses `f` in terms of `g` when `f` lies in the ideal.
#[derive(Clone, Debug)]
pub struct LiftingBasis {
    ctx: Arc<VariableContext>,
    tuple: Vec<Polynomial>,
    ord: ModuleOrder,
    basis: Vec<Vector>,
    limits: Limits,
}

impl LiftingBasis {
    pub fn new(g: &[Polynomial], ordering: &OrderingSpec, limits: &Limits) -> Result<Self, ComputeError> {
        let ctx = g.first().ok_or(ComputeError::EmptyTuple)?.ctx().clone();
        if g.iter().any(|p| p.ctx() != &ctx) {
            return Err(AlgebraError::ContextMismatch.into());
        }
        let ord = ModuleOrder { ring: ordering.compile(ctx.len())?, position: Position::FirstOverTerm };
        let gens: Vec<Vector> = g
            .iter()
            .enumerate()
            .map(|(i, gi)| {
                let unit = Polynomial::one(&ctx);
                Vector::from_components(&[(0, gi), (i as u32 + 1, &unit)], &ord).0
            })
            .collect();
        let basis = compute_basis(gens, &ord, limits, false)?;
        Ok(LiftingBasis { ctx, tuple: g.to_vec(), ord, basis, limits: limits.clone() })
    }

    pub fn tuple(&self) -> &[Polynomial] {
        &self.tuple
    }

    /// Generators of the syzygy module, each checked to pair to zero.
    pub fn syzygies(&self) -> Result<Vec<ModuleElement>, ComputeError> {
        let k = self.tuple.len();
        let elements: Vec<ModuleElement> = self
            .basis
            .iter()
            .filter(|v| v.terms.iter().all(|t| t.comp != 0))
            .map(|v| ModuleElement::from_vector(v, k, 1, &self.ctx))
            .collect();
        for e in &elements {
            let pairing = e.pair_with(&self.tuple)?;
            assert!(pairing.is_zero(), "syzygy exactness violated: {pairing}");
        }
        Ok(elements)
    }

    /// Cofactors `a` with `Σ a_i g_i = f`, or `None` when `f` is not in the
    /// ideal. Only for global orderings.
    pub fn lift(&self, f: &Polynomial) -> Result<Option<ModuleElement>, ComputeError> {
        if !self.ord.ring.is_global() {
            return Err(ComputeError::WrongOrderingKind { expected: "global" });
        }
        if f.ctx() != &self.ctx {
            return Err(AlgebraError::ContextMismatch.into());
        }
        let k = self.tuple.len();
        if f.is_zero() {
            return Ok(Some(ModuleElement::new(vec![Polynomial::zero(&self.ctx); k])));
        }
        // v = kf * f e_0; r = scale * (v - Σ q_B B) with every B = (Σ b_i g_i, b)
        let (v, kf) = Vector::from_components(&[(0, f)], &self.ord);
        let mut budget = Budget::new(&self.limits);
        let refs: Vec<_> = self.basis.iter().enumerate().map(|(i, b)| (i, b, 0, b.terms.len())).collect();
        let (r, scale) = full_reduce(v, &refs, 0, &self.ord, &mut budget)?;
        if r.terms.iter().any(|t| t.comp == 0) {
            return Ok(None);
        }
        let factor = -(scale * kf);
        let a = ModuleElement::new((0..k).map(|i| r.component(i as u32 + 1, &self.ctx, &factor)).collect());
        let check = a.pair_with(&self.tuple)?;
        assert!(&check == f, "lift does not reproduce the target polynomial");
        Ok(Some(a))
    }
}

/// Generators of `{a : Σ a_i g_i ∈ m^n}` modulo `m^n`, over the local ring at
/// the origin. Every syzygy of `g` reduces into this module, so ideals read
/// off it contain the corresponding ideals of true syzygies.
pub fn syzygies_mod_power(g: &[Polynomial], n: u64, limits: &Limits) -> Result<Vec<ModuleElement>, ComputeError> {
    let ctx = g.first().ok_or(ComputeError::EmptyTuple)?.ctx().clone();
    if g.iter().any(|p| p.ctx() != &ctx) {
        return Err(AlgebraError::ContextMismatch.into());
    }
    let ord = ModuleOrder { ring: OrderingSpec::LocalDegRevLex.compile(ctx.len())?, position: Position::FirstOverTerm };
    let unit = Polynomial::one(&ctx);
    let gens: Vec<Vector> =
        g.iter().enumerate().map(|(i, gi)| Vector::from_components(&[(0, gi), (i as u32 + 1, &unit)], &ord).0).collect();
    let basis = compute_basis_truncated(gens, &ord, limits, n)?;
    Ok(basis
        .iter()
        .filter(|v| v.terms.iter().all(|t| t.comp != 0))
        .map(|v| ModuleElement::from_vector(v, g.len(), 1, &ctx))
        .collect())
}

/// Syzygies of `g` over the polynomial ring (global `ordering`) or the local
/// ring at the origin (local `ordering`).
pub fn syzygy_basis(g: &[Polynomial], ordering: &OrderingSpec, limits: &Limits) -> Result<SyzygyBasis, ComputeError> {
    let lifting = LiftingBasis::new(g, ordering, limits)?;
    let elements = lifting.syzygies()?;
    Ok(SyzygyBasis {
        ctx: lifting.ctx,
        tuple: g.to_vec(),
        labels: (0..g.len()).map(ComponentLabel::Index).collect(),
        elements,
    })
}

/// Variables carrying the target or parameter role: the ambient coordinates
/// whose partials form `dG`.
fn ambient_vars(ctx: &VariableContext) -> Vec<usize> {
    (0..ctx.len()).filter(|&i| matches!(ctx.role(i), Role::Target | Role::Parameter)).collect()
}

fn check_hypersurface(g: &Polynomial) -> Result<Vec<usize>, ComputeError> {
    if g.is_zero() {
        return Err(ComputeError::EmptyTuple);
    }
    let vars = ambient_vars(g.ctx());
    if vars.is_empty() {
        return Err(AlgebraError::NoParameter.into());
    }
    Ok(vars)
}

/// The lifting basis of the partial derivatives of `G`, shared by
/// [`derlog_g_from`] and [`derlog_x_from`].
pub fn jacobian_lifting(g: &Polynomial, limits: &Limits) -> Result<LiftingBasis, ComputeError> {
    let vars = check_hypersurface(g)?;
    let partials: Vec<Polynomial> = vars.iter().map(|&i| g.derivative(i)).collect();
    LiftingBasis::new(&partials, &OrderingSpec::DegRevLex, limits)
}

fn derivation_labels(g: &Polynomial) -> Vec<ComponentLabel> {
    ambient_vars(g.ctx()).into_iter().map(ComponentLabel::Derivation).collect()
}

/// `Der(-log G)`: vector fields `ξ` with `dG(ξ) = 0`, as syzygies of the
/// partial derivatives over the polynomial ring.
pub fn derlog_g(g: &Polynomial, limits: &Limits) -> Result<SyzygyBasis, ComputeError> {
    derlog_g_from(g, &jacobian_lifting(g, limits)?)
}

pub fn derlog_g_from(g: &Polynomial, lifting: &LiftingBasis) -> Result<SyzygyBasis, ComputeError> {
    Ok(SyzygyBasis {
        ctx: g.ctx().clone(),
        tuple: lifting.tuple.clone(),
        labels: derivation_labels(g),
        elements: lifting.syzygies()?,
    })
}

/// `Der(-log X)` for `X = V(G)`: vector fields with `dG(ξ) ∈ (G)`.
///
/// The map `ξ ↦ h` with `dG(ξ) = h G` sends this module onto `(J : G)`,
/// `J` the Jacobian ideal, with kernel `Der(-log G)`. So it is generated by
/// `Der(-log G)` together with one lift of `h G` for each generator `h` of
/// `(J : G)`. This is the syzygy module of the partials extended by `G`,
/// with the cofactor of `G` dropped, computed without tracking cofactors
/// through a second module basis.
pub fn derlog_x(g: &Polynomial, limits: &Limits) -> Result<SyzygyBasis, ComputeError> {
    derlog_x_from(g, &jacobian_lifting(g, limits)?, limits)
}

pub fn derlog_x_from(g: &Polynomial, lifting: &LiftingBasis, limits: &Limits) -> Result<SyzygyBasis, ComputeError> {
    let mut elements = lifting.syzygies()?;
    let jac = Ideal::new(g.ctx(), lifting.tuple.clone(), OrderingSpec::DegRevLex)?;
    let colon = jac.quotient(g, limits)?;
    let hs = colon.groebner_basis(limits)?.elements().to_vec();
    for h in hs {
        let target = &h * g;
        let xi = lifting.lift(&target)?.expect("h G lies in the Jacobian ideal for h in (J : G)");
        if !xi.is_zero() && !elements.contains(&xi) {
            elements.push(xi);
        }
    }
    Ok(SyzygyBasis { ctx: g.ctx().clone(), tuple: lifting.tuple.clone(), labels: derivation_labels(g), elements })
}

/// Ideal of the parameter components `dπ(ξ)` of the basis elements, in the
/// local ring at the origin.
pub fn d_pi(basis: &SyzygyBasis) -> Result<Ideal, ComputeError> {
    let param = basis.ctx.parameter().map_err(|_| ComputeError::NoParameterComponent)?;
    let pos = basis.position_of(ComponentLabel::Derivation(param)).ok_or(ComputeError::NoParameterComponent)?;
    let gens = basis.elements.iter().map(|e| e.components[pos].clone()).collect();
    Ideal::new(&basis.ctx, gens, OrderingSpec::LocalDegRevLex)
}

/// Submodule of a free module with a cached basis, for membership tests.
pub struct Submodule {
    ctx: Arc<VariableContext>,
    rank: usize,
    ord: ModuleOrder,
    basis: Vec<Vector>,
    global: bool,
}

impl Submodule {
    pub fn new(
        ctx: &Arc<VariableContext>,
        rank: usize,
        gens: &[ModuleElement],
        ordering: &OrderingSpec,
        limits: &Limits,
    ) -> Result<Self, ComputeError> {
        if gens.iter().any(|g| g.rank() != rank) {
            return Err(ComputeError::RankMismatch);
        }
        let ord = ModuleOrder { ring: ordering.compile(ctx.len())?, position: Position::OverTerm };
        let vecs: Vec<Vector> = gens.iter().map(|g| g.to_vector(0, &ord)).filter(|v| !v.is_zero()).collect();
        let basis = compute_basis(vecs, &ord, limits, rank == 1)?;
        let global = ord.ring.is_global();
        Ok(Submodule { ctx: ctx.clone(), rank, ord, basis, global })
    }

    pub fn basis(&self) -> Vec<ModuleElement> {
        self.basis.iter().map(|v| ModuleElement::from_vector(v, self.rank, 0, &self.ctx)).collect()
    }

    pub fn contains(&self, e: &ModuleElement) -> Result<bool, ComputeError> {
        if e.rank() != self.rank {
            return Err(ComputeError::RankMismatch);
        }
        let v = e.to_vector(0, &self.ord);
        if v.is_zero() {
            return Ok(true);
        }
        let mut budget = Budget::new(&Limits { max_reductions: usize::MAX, ..Limits::default() });
        let (r, _) = if self.global {
            let refs: Vec<_> = self.basis.iter().enumerate().map(|(i, b)| (i, b, 0, b.terms.len())).collect();
            full_reduce(v, &refs, 0, &self.ord, &mut budget)?
        } else {
            mora_nf(v, self.basis.iter().map(|b| (b, b.ecart())), &self.ord, &mut budget)?
        };
        Ok(r.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_polynomial;

    fn target_ctx() -> Arc<VariableContext> {
        VariableContext::new([("y1", Role::Target), ("y2", Role::Target), ("y3", Role::Target), ("s", Role::Parameter)]).unwrap()
    }

    #[test]
    fn koszul_pair() {
        let ctx = VariableContext::uniform(["x", "y"], Role::Source).unwrap();
        let g = [parse_polynomial("x", &ctx).unwrap(), parse_polynomial("y", &ctx).unwrap()];
        let b = syzygy_basis(&g, &OrderingSpec::DegRevLex, &Limits::default()).unwrap();
        assert_eq!(b.elements().len(), 1);
        let e = &b.elements()[0];
        let y = parse_polynomial("y", &ctx).unwrap();
        // (y, -x) up to sign
        assert!(e.components()[0] == y || e.components()[0] == -&y);
        assert_eq!(&e.components()[0] * &g[0], -&(&e.components()[1] * &g[1]));
    }

    #[test]
    fn cross_cap_has_parameter_field() {
        let ctx = target_ctx();
        let g = parse_polynomial("y3^2 - y1^2*y2", &ctx).unwrap();
        let b = derlog_g(&g, &Limits::default()).unwrap();
        let s_pos = b.position_of(ComponentLabel::Derivation(3)).unwrap();
        let ds = ModuleElement::new((0..4).map(|i| if i == s_pos { Polynomial::one(&ctx) } else { Polynomial::zero(&ctx) }).collect());
        assert!(b.elements().contains(&ds));
        let ft = d_pi(&b).unwrap();
        assert!(ft.is_unit(&Limits::default()).unwrap());
    }

    #[test]
    fn d_pi_without_parameter_is_an_error() {
        let ctx = VariableContext::uniform(["x", "y"], Role::Target).unwrap();
        let g = [parse_polynomial("x", &ctx).unwrap(), parse_polynomial("y", &ctx).unwrap()];
        let b = syzygy_basis(&g, &OrderingSpec::DegRevLex, &Limits::default()).unwrap();
        assert!(matches!(d_pi(&b), Err(ComputeError::NoParameterComponent)));
    }

    #[test]
    fn empty_tuple_rejected() {
        assert!(matches!(syzygy_basis(&[], &OrderingSpec::DegRevLex, &Limits::default()), Err(ComputeError::EmptyTuple)));
    }
}
