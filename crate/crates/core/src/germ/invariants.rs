use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::image::ImageEquation;
use crate::error::GermError;
use crate::gb::{Dimension, Ideal, KrullDim, Limits, LocalQuotient};
use crate::poly::{OrderingSpec, Polynomial, Rational, Role, VariableContext};
use crate::syzygy::{d_pi, derlog_g_from, derlog_x_from, jacobian_lifting, LiftingBasis, SyzygyBasis};

/// Largest power `k` tried for `J(g) : g^k` before a slice counts as
/// degenerate.
pub const SATURATION_POWER_CAP: u32 = 8;

/// Hilbert-Samuel data of a one-dimensional quotient with respect to `(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamuelMultiplicity {
    pub multiplicity: u64,
    /// `d_k = dim O/(I + t^k)` for `k = 1, 2, ...` up to the stopping point.
    pub profile: Vec<u64>,
}

/// `e((t); O/I)` from the increments of `d_k = dim O/(I + t^k)`. Stops as
/// soon as two consecutive increments agree.
pub fn samuel_multiplicity(ideal: &Ideal, t: usize, k_max: u32, limits: &Limits) -> Result<SamuelMultiplicity, GermError> {
    let tv = Polynomial::var_index(ideal.ctx(), t);
    let mut profile: Vec<u64> = Vec::new();
    let mut prev_diff: Option<u64> = None;
    for k in 1..=k_max.max(2) {
        let d = match ideal.with_generators([tv.pow(k)])?.quotient_dim_local(limits)? {
            Dimension::Finite(d) => d,
            Dimension::Infinite => return Err(GermError::InfiniteCodimension { what: "I + (t)" }),
        };
        let diff = d - profile.last().copied().unwrap_or(0);
        profile.push(d);
        if d == 0 {
            return Ok(SamuelMultiplicity { multiplicity: 0, profile });
        }
        if prev_diff == Some(diff) {
            return Ok(SamuelMultiplicity { multiplicity: diff, profile });
        }
        if k >= k_max {
            break;
        }
        prev_diff = Some(diff);
    }
    Err(GermError::SamuelNotStabilised { k_max, profile })
}

/// Milnor number `dim O/J(h)` at the origin.
pub fn milnor_number(h: &Polynomial, limits: &Limits) -> Result<Dimension, GermError> {
    if !h.constant_term().is_zero() {
        return Err(GermError::InvalidGerm("function does not vanish at the origin".into()));
    }
    let jac: Vec<Polynomial> = (0..h.ctx().len()).map(|i| h.derivative(i)).collect();
    Ok(Ideal::new(h.ctx(), jac, OrderingSpec::LocalDegRevLex)?.quotient_dim_local(limits)?)
}

/// Result of the critical-point count on a perturbed image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiersmaCount {
    /// Critical points that come out of the origin: `global - persistent`.
    pub value: u64,
    /// Total Milnor number of the critical points of `g_{s0}` off `X_{s0}`.
    pub global: u64,
    /// The same count for `g_0`. These points sit away from the origin
    /// (which lies on `X_0`) and persist for small `s0`. `None` when `g_0`
    /// has non-isolated critical points off `X_0`; nothing is discounted
    /// then.
    pub persistent: Option<u64>,
    /// The parameter value actually used.
    pub s0: Rational,
    /// Number of slices tried, including the successful one.
    pub attempts: u32,
}

/// Logarithmic characteristic ideal, generated by `ξ* = Σ a_j p_j + b q`.
#[derive(Clone, Debug)]
pub struct LcIdeal {
    ideal: Ideal,
    cotangent: Vec<usize>,
}

impl LcIdeal {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Indices of `p_1, ..., p_{n+1}, q` in the extended context.
    pub fn cotangent_vars(&self) -> &[usize] {
        &self.cotangent
    }

    /// The generators after `p := 0, q := 1`, moved back to `ctx`.
    pub fn specialised(&self, ctx: &Arc<VariableContext>) -> Result<Vec<Polynomial>, GermError> {
        let (q, ps) = self.cotangent.split_last().expect("q is present");
        let mut values: Vec<(usize, Rational)> = ps.iter().map(|&p| (p, Rational::zero())).collect();
        values.push((*q, Rational::one()));
        self.ideal
            .generators()
            .iter()
            .map(|g| g.specialize(&values).in_context(ctx).map_err(|e| GermError::InvalidGerm(e.to_string())))
            .collect()
    }
}

/// Bounds on the local dimension of `LC(G)` at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LcDimension {
    /// `n + 3` when every generator vanishes on `{(b, λ dG(b))}`, whose
    /// closure has that dimension and passes through the origin.
    pub lower: Option<usize>,
    /// `n + 3` when a random linear space of codimension `n + 3` meets
    /// `LC(G)` in an isolated point at the origin.
    pub upper: Option<usize>,
}

impl LcDimension {
    /// The dimension, when both bounds are known and meet.
    pub fn value(&self) -> Option<usize> {
        match (self.lower, self.upper) {
            (Some(l), Some(u)) if l == u => Some(l),
            _ => None,
        }
    }
}

/// Outcome of the weighted-homogeneous checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiHomogeneousCheck {
    /// Weighted degree `d` of `G`.
    pub weighted_degree: u64,
    /// `dG(ε) = d·G` for the Euler field `ε = Σ w_i y_i ∂/∂y_i`.
    pub euler_identity: bool,
    /// `dπ(Der(-log X)) = FT(π, G) + (s)` in the local ring.
    pub ideals_equal: bool,
}

/// All computations derived from one image equation, sharing the
/// expensive syzygy modules.
pub struct GermAnalysis {
    image: ImageEquation,
    limits: Limits,
    lifting: OnceLock<LiftingBasis>,
    derlog_g: OnceLock<SyzygyBasis>,
    derlog_x: OnceLock<SyzygyBasis>,
    br: OnceLock<LocalQuotient>,
    persistent: OnceLock<Option<u64>>,
}

fn cached<T>(cell: &OnceLock<T>, f: impl FnOnce() -> Result<T, GermError>) -> Result<&T, GermError> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v))
}

impl GermAnalysis {
    pub fn new(image: ImageEquation, limits: Limits) -> Self {
        GermAnalysis { image, limits, lifting: OnceLock::new(), derlog_g: OnceLock::new(), derlog_x: OnceLock::new(), br: OnceLock::new(), persistent: OnceLock::new() }
    }

    pub fn image(&self) -> &ImageEquation {
        &self.image
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    fn g(&self) -> &Polynomial {
        self.image.polynomial()
    }

    fn ctx(&self) -> &Arc<VariableContext> {
        self.g().ctx()
    }

    fn parameter(&self) -> Result<usize, GermError> {
        self.ctx().parameter().map_err(|e| GermError::InvalidGerm(e.to_string()))
    }

    fn s(&self) -> Result<Polynomial, GermError> {
        Ok(Polynomial::var_index(self.ctx(), self.parameter()?))
    }

    fn lifting(&self) -> Result<&LiftingBasis, GermError> {
        cached(&self.lifting, || Ok(jacobian_lifting(self.g(), &self.limits)?))
    }

    /// `Der(-log G)`.
    pub fn derlog_g(&self) -> Result<&SyzygyBasis, GermError> {
        cached(&self.derlog_g, || Ok(derlog_g_from(self.g(), self.lifting()?)?))
    }

    /// `Der(-log X)`.
    pub fn derlog_x(&self) -> Result<&SyzygyBasis, GermError> {
        cached(&self.derlog_x, || Ok(derlog_x_from(self.g(), self.lifting()?, &self.limits)?))
    }

    /// `FT(π, G) = dπ(Der(-log G))`, with a local ordering.
    pub fn ft_ideal(&self) -> Result<Ideal, GermError> {
        Ok(d_pi(self.derlog_g()?)?)
    }

    /// `dπ(Der(-log X))` in the local ring, as the colon
    /// `(∂G/∂y_1, ..., ∂G/∂y_{n+1}, G) : ∂G/∂s`: a field `ξ` lies in
    /// `Der(-log X)` exactly when `ξ_s ∂G/∂s` lies in that ideal.
    pub fn br_quotient(&self) -> Result<&LocalQuotient, GermError> {
        cached(&self.br, || {
            let param = self.parameter()?;
            let g = self.g();
            let mut gens: Vec<Polynomial> = self.ctx().indices_with_role(Role::Target).into_iter().map(|i| g.derivative(i)).collect();
            gens.push(g.clone());
            let ideal = Ideal::new(self.ctx(), gens, OrderingSpec::DegRevLex)?;
            Ok(ideal.local_quotient(&g.derivative(param), &self.limits)?)
        })
    }

    /// `dπ(Der(-log X))`, with a local ordering.
    pub fn br_ideal(&self) -> Result<Ideal, GermError> {
        Ok(self.br_quotient()?.ideal().clone())
    }

    fn finite(&self, ideal: &Ideal, what: &'static str) -> Result<u64, GermError> {
        match ideal.quotient_dim_local(&self.limits)? {
            Dimension::Finite(d) => Ok(d),
            Dimension::Infinite => Err(GermError::InfiniteCodimension { what }),
        }
    }

    /// `dim O/(FT(π, G) + (s))`.
    pub fn ft_codim(&self) -> Result<u64, GermError> {
        let ideal = self.ft_ideal()?.with_generators([self.s()?])?;
        self.finite(&ideal, "FT(π, G) + (s)")
    }

    /// `μ_I` as the Samuel multiplicity of `O/FT(π, G)` with respect to `(s)`.
    pub fn samuel(&self, k_max: u32) -> Result<SamuelMultiplicity, GermError> {
        samuel_multiplicity(&self.ft_ideal()?, self.parameter()?, k_max, &self.limits)
    }

    /// Bruce-Roberts number `dim O/dπ(Der(-log X))`.
    pub fn bruce_roberts(&self) -> Result<u64, GermError> {
        Ok(self.br_quotient()?.colength())
    }

    /// `dim O/(dπ(Der(-log X)) + (s))`; equals the `A_e`-codimension when the
    /// unfolding is a one-parameter stable unfolding (not checked here).
    pub fn ae_codim(&self) -> Result<u64, GermError> {
        let ideal = self.br_ideal()?.with_generators([self.s()?])?;
        self.finite(&ideal, "dπ(Der(-log X)) + (s)")
    }

    /// `dim Q[y]/(J(g) : g^∞)` for `g = G(·, s0)`.
    fn off_image_count(&self, s0: &Rational) -> Result<Dimension, GermError> {
        let param = self.parameter()?;
        let yctx = self.ctx().without(&[param]);
        let g = self.g().specialize(&[(param, s0.clone())]).in_context(&yctx).map_err(|e| GermError::InvalidGerm(e.to_string()))?;
        let jac: Vec<Polynomial> = (0..yctx.len()).map(|i| g.derivative(i)).collect();
        let ideal = Ideal::new(&yctx, jac, OrderingSpec::DegRevLex)?;
        Ok(ideal.saturation_dim(&g, SATURATION_POWER_CAP, &self.limits)?)
    }

    /// Critical points of `g_0` off `X_0`, all of them away from the origin.
    pub fn persistent_count(&self) -> Result<Option<u64>, GermError> {
        cached(&self.persistent, || {
            Ok(match self.off_image_count(&Rational::zero())? {
                Dimension::Finite(v) => Some(v),
                Dimension::Infinite => None,
            })
        })
        .copied()
    }

    /// Total Milnor number of the critical points of `g = G(·, s0)` off
    /// `g = 0` that are born at the origin. The global count also sees
    /// critical points far away, already present on `g_0`; those are
    /// subtracted. Degenerate slices (infinite dimension) are replaced by
    /// fresh seeded samples.
    pub fn siersma(&self, s0: Option<Rational>, seed: u64, retries: u32) -> Result<SiersmaCount, GermError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut candidates = s0.into_iter();
        let attempts_max = retries.max(1);
        for attempt in 1..=attempts_max {
            let s0 = match candidates.next() {
                Some(v) if !v.is_zero() => v,
                _ => sample_nonzero(&mut rng),
            };
            if let Dimension::Finite(global) = self.off_image_count(&s0)? {
                let persistent = self.persistent_count()?;
                let value = global.saturating_sub(persistent.unwrap_or(0));
                return Ok(SiersmaCount { value, global, persistent, s0, attempts: attempt });
            }
        }
        Err(GermError::DegenerateSlices { attempts: attempts_max })
    }

    /// `LC(G)` over `(y, s, p_1..p_{n+1}, q)`.
    pub fn lc_ideal(&self) -> Result<LcIdeal, GermError> {
        let basis = self.derlog_g()?;
        let ctx = self.ctx();
        let mut extra: Vec<(String, Role)> = Vec::new();
        let mut taken: Vec<String> = ctx.names().to_vec();
        let mut fresh = |stem: String| {
            let mut name = stem.clone();
            let mut i = 0;
            while taken.contains(&name) {
                name = format!("{stem}_{i}");
                i += 1;
            }
            taken.push(name.clone());
            name
        };
        let targets = ctx.indices_with_role(Role::Target);
        for j in 0..targets.len() {
            extra.push((fresh(format!("p{}", j + 1)), Role::Cotangent));
        }
        extra.push((fresh("q".to_string()), Role::Cotangent));
        let lctx = ctx.extended(extra).map_err(|e| GermError::InvalidGerm(e.to_string()))?;
        let base = ctx.len();
        let cotangent: Vec<usize> = (base..lctx.len()).collect();
        // component label -> cotangent variable
        let param = self.parameter()?;
        let dual: HashMap<usize, usize> = targets
            .iter()
            .enumerate()
            .map(|(j, &v)| (v, base + j))
            .chain([(param, lctx.len() - 1)])
            .collect();
        let mut gens = Vec::with_capacity(basis.elements().len());
        for e in basis.elements() {
            let mut xi = Polynomial::zero(&lctx);
            for (c, label) in e.components().iter().zip(basis.labels()) {
                let crate::syzygy::ComponentLabel::Derivation(v) = *label else { unreachable!("derlog components are derivations") };
                let coeff = c.in_context(&lctx).map_err(|e| GermError::InvalidGerm(e.to_string()))?;
                xi = &xi + &(&coeff * &Polynomial::var_index(&lctx, dual[&v]));
            }
            gens.push(xi);
        }
        Ok(LcIdeal { ideal: Ideal::new(&lctx, gens, OrderingSpec::LocalDegRevLex)?, cotangent })
    }

    /// `p := 0, q := 1` sends the generators of `LC(G)` to those of
    /// `FT(π, G)`, one by one (zero images are the generators `FT` drops).
    pub fn lc_substitution_holds(&self) -> Result<bool, GermError> {
        let ft = self.ft_ideal()?;
        let images: Vec<Polynomial> = self.lc_ideal()?.specialised(ft.ctx())?.into_iter().filter(|p| !p.is_zero()).collect();
        Ok(images == ft.generators())
    }

    /// Local Krull dimension of `O/FT(π, G)`, without a standard basis:
    /// empty for the unit ideal; at most one because `O/(FT + (s))` is
    /// finite; zero exactly when `s` is nilpotent modulo `FT`, which the
    /// Samuel profile shows by stalling.
    pub fn ft_krull_dim(&self, k_max: u32) -> Result<KrullDim, GermError> {
        let ft = self.ft_ideal()?;
        if ft.generators().iter().any(|g| !g.constant_term().is_zero()) {
            return Ok(KrullDim::Empty);
        }
        self.ft_codim()?;
        let samuel = self.samuel(k_max)?;
        Ok(KrullDim::Dim(usize::from(samuel.multiplicity > 0)))
    }

    /// Local dimension of `LC(G)` at the origin, bracketed from both sides.
    pub fn lc_dimension(&self, seed: u64, attempts: u32) -> Result<LcDimension, GermError> {
        let lc = self.lc_ideal()?;
        let g = self.g();
        let basis = self.derlog_g()?;
        let top = self.ctx().len() + 1;
        // every ξ* vanishes on (b, λ dG(b)) exactly when ξ(G) = 0
        let mut on_graph = !g.is_constant();
        for e in basis.elements() {
            let mut xi_g = Polynomial::zero(self.ctx());
            for (c, label) in e.components().iter().zip(basis.labels()) {
                let crate::syzygy::ComponentLabel::Derivation(v) = *label else { unreachable!("derlog components are derivations") };
                xi_g = &xi_g + &(c * &g.derivative(v));
            }
            on_graph &= xi_g.is_zero();
        }
        let lower = if on_graph { Some(top) } else { None };
        let targets = self.ctx().indices_with_role(Role::Target);
        let lctx = lc.ideal().ctx();
        let yctx = VariableContext::uniform(targets.iter().map(|&i| self.ctx().name(i).to_string()), Role::Target)
            .map_err(|e| GermError::InvalidGerm(e.to_string()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut upper = None;
        for _ in 0..attempts.max(1) {
            // a random linear space of codimension n + 3, as a graph over y
            let bindings: HashMap<String, Polynomial> = lctx
                .names()
                .iter()
                .enumerate()
                .map(|(i, name)| {
                    let value = if i < targets.len() {
                        Polynomial::var_index(&yctx, i)
                    } else {
                        (0..yctx.len()).fold(Polynomial::zero(&yctx), |acc, j| &acc + &Polynomial::var_index(&yctx, j).scale(&sample_nonzero(&mut rng)))
                    };
                    (name.clone(), value)
                })
                .collect();
            let gens = lc
                .ideal()
                .generators()
                .iter()
                .map(|f| f.substitute(&bindings, &yctx).map_err(|e| GermError::InvalidGerm(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let slice = Ideal::new(&yctx, gens, OrderingSpec::LocalDegRevLex)?;
            if slice.truncated_local_dim(crate::gb::TRUNCATION_CAP, &self.limits)?.is_some() {
                upper = Some(top);
                break;
            }
        }
        Ok(LcDimension { lower, upper })
    }

    /// Euler identity and ideal equality for user-supplied weights on the
    /// target variables and the parameter.
    pub fn quasi_homogeneous(&self, weights: &[u32]) -> Result<QuasiHomogeneousCheck, GermError> {
        let g = self.g();
        let ctx = self.ctx();
        if weights.len() != ctx.len() {
            return Err(GermError::InvalidGerm(format!("expected {} weights, found {}", ctx.len(), weights.len())));
        }
        let d = g.weighted_homogeneous_degree(weights).ok_or(GermError::NotWeightedHomogeneous)?;
        let mut euler = Polynomial::zero(ctx);
        for (i, &w) in weights.iter().enumerate() {
            let yi = Polynomial::var_index(ctx, i);
            euler = &euler + &(&(&yi * &g.derivative(i)) * &Polynomial::from_int(ctx, w as i64));
        }
        let euler_identity = euler == g.scale(&Rational::from_integer(d.into()));
        let br = self.br_ideal()?;
        let ft_s = self.ft_ideal()?.with_generators([self.s()?])?;
        let ideals_equal = local_ideals_equal(&br, &ft_s, &self.limits)?;
        Ok(QuasiHomogeneousCheck { weighted_degree: d, euler_identity, ideals_equal })
    }
}

/// Equality of ideals in the local ring: both have the same finite
/// codimension and the sum has it too.
pub fn local_ideals_equal(a: &Ideal, b: &Ideal, limits: &Limits) -> Result<bool, GermError> {
    let da = a.quotient_dim_local(limits)?;
    let db = b.quotient_dim_local(limits)?;
    if da != db {
        return Ok(false);
    }
    if da == Dimension::Infinite {
        let a = a.with_ordering(OrderingSpec::LocalDegRevLex)?;
        let b = b.with_ordering(OrderingSpec::LocalDegRevLex)?;
        a.compute(limits)?;
        b.compute(limits)?;
        return Ok(a.contains_ideal(&b)? && b.contains_ideal(&a)?);
    }
    let sum = a.with_generators(b.generators().iter().cloned())?;
    Ok(sum.quotient_dim_local(limits)? == da)
}

fn sample_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-100..=100);
        let den: i64 = rng.gen_range(1..=100);
        if num != 0 {
            return Rational::new(num.into(), den.into());
        }
    }
}
