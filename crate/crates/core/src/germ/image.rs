use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spec::MapGermSpec;
use super::univariate::Univariate;
use crate::error::GermError;
use crate::gb::{Ideal, Limits};
use crate::poly::{OrderingSpec, Polynomial, Rational, Role, VariableContext};

/// Where the image equation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Eliminated,
    UserSupplied,
}

/// What was checked about the reducedness of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducednessCheck {
    /// Pairwise non-associate branch equations (vacuous for one branch).
    pub branches_non_associate: bool,
    /// `G` restricted to a random affine line is squarefree. A `false` here
    /// means `G` almost certainly has a repeated factor.
    pub squarefree_on_line: bool,
}

/// The image equation `G(y, s)` of an unfolding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageEquation {
    g: Polynomial,
    provenance: Provenance,
    reducedness: ReducednessCheck,
}

impl ImageEquation {
    pub fn polynomial(&self) -> &Polynomial {
        &self.g
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn reducedness(&self) -> &ReducednessCheck {
        &self.reducedness
    }

    /// Wraps a polynomial over a target context without any checks against
    /// branches. Used for hypersurfaces given directly.
    pub fn from_polynomial(g: Polynomial, seed: u64) -> Result<Self, GermError> {
        check_origin(&g)?;
        g.ctx().parameter().map_err(|e| GermError::InvalidGerm(e.to_string()))?;
        let squarefree_on_line = squarefree_on_random_line(&g, seed);
        Ok(ImageEquation {
            g,
            provenance: Provenance::UserSupplied,
            reducedness: ReducednessCheck { branches_non_associate: true, squarefree_on_line },
        })
    }
}

fn check_origin(g: &Polynomial) -> Result<(), GermError> {
    if g.is_zero() {
        return Err(GermError::InvalidGerm("image equation is zero".into()));
    }
    if !num_traits::Zero::is_zero(&g.constant_term()) {
        return Err(GermError::ImageNotThroughOrigin);
    }
    Ok(())
}

/// Elimination context `(x_1..x_n, y_1..y_{n+1}, s)`.
fn elimination_context(spec: &MapGermSpec) -> Result<std::sync::Arc<VariableContext>, GermError> {
    let vars = spec
        .source_names()
        .iter()
        .map(|n| (n.clone(), Role::Source))
        .chain(spec.target_names().iter().map(|n| (n.clone(), Role::Target)))
        .chain([(spec.parameter_name().to_string(), Role::Parameter)]);
    VariableContext::new(vars).map_err(|e| GermError::InvalidGerm(e.to_string()))
}

/// Generator of the image of one branch: `⟨y_j - F_j(x, s)⟩ ∩ Q[y, s]`.
pub fn branch_image(spec: &MapGermSpec, branch: usize, limits: &Limits) -> Result<Polynomial, GermError> {
    let ctx = elimination_context(spec)?;
    let n = spec.n();
    let comps = &spec.branches()[branch];
    let mut gens = Vec::with_capacity(n + 1);
    for (j, c) in comps.iter().enumerate() {
        let yj = Polynomial::var_index(&ctx, n + j);
        let fj = c.in_context(&ctx).map_err(|e| GermError::InvalidGerm(e.to_string()))?;
        gens.push(&yj - &fj);
    }
    let ideal = Ideal::new(&ctx, gens, OrderingSpec::DegRevLex)?;
    let source: Vec<usize> = (0..n).collect();
    let elim = ideal.elimination_ideal(&source, limits)?;
    let basis = elim.groebner_basis(limits)?.elements().to_vec();
    match basis.len() {
        0 => Err(GermError::ZeroImage { branch: branch + 1 }),
        1 => Ok(basis[0].in_context(spec.target_ctx()).map_err(|e| GermError::InvalidGerm(e.to_string()))?),
        k => Err(GermError::NotPrincipal { branch: branch + 1, generators: k }),
    }
}

/// `G ∘ F` for one branch, over the branch context.
pub fn compose_with_branch(g: &Polynomial, spec: &MapGermSpec, branch: usize) -> Result<Polynomial, GermError> {
    let bctx = spec.branch_ctx();
    let mut bindings: HashMap<String, Polynomial> = spec
        .target_names()
        .iter()
        .cloned()
        .zip(spec.branches()[branch].iter().cloned())
        .collect();
    let s = spec.parameter_name().to_string();
    bindings.insert(s.clone(), Polynomial::var(bctx, &s).expect("parameter in branch context"));
    g.substitute(&bindings, bctx).map_err(|e| GermError::InvalidGerm(e.to_string()))
}

/// The image equation of the unfolding: eliminated per branch and multiplied
/// over branches, or the user-supplied one after checking it vanishes on
/// every branch. `seed` drives the random line of the squarefree guard.
pub fn image_equation(spec: &MapGermSpec, limits: &Limits, seed: u64) -> Result<ImageEquation, GermError> {
    let (g, provenance, branches_non_associate) = match spec.image() {
        Some(g) => (g.clone(), Provenance::UserSupplied, true),
        None => {
            let parts: Vec<Polynomial> =
                (0..spec.branches().len()).map(|b| branch_image(spec, b, limits)).collect::<Result<_, _>>()?;
            for i in 0..parts.len() {
                for j in i + 1..parts.len() {
                    if associate(&parts[i], &parts[j], limits)? {
                        return Err(GermError::AssociateBranches(i + 1, j + 1));
                    }
                }
            }
            let mut g = Polynomial::one(spec.target_ctx());
            for p in &parts {
                g = &g * p;
            }
            let g = g.primitive(&g.default_order());
            (g, Provenance::Eliminated, true)
        }
    };
    verified_image(spec, g, provenance, branches_non_associate, seed)
}

/// Wraps an image equation known from elsewhere (a cache, say) after the
/// checks that are cheap: it vanishes at the origin and on every branch.
pub fn verified_image(
    spec: &MapGermSpec,
    g: Polynomial,
    provenance: Provenance,
    branches_non_associate: bool,
    seed: u64,
) -> Result<ImageEquation, GermError> {
    if g.ctx() != spec.target_ctx() {
        return Err(GermError::InvalidGerm("image equation uses a foreign context".into()));
    }
    check_origin(&g)?;
    for b in 0..spec.branches().len() {
        if !compose_with_branch(&g, spec, b)?.is_zero() {
            return Err(GermError::ImageMismatch { branch: b + 1 });
        }
    }
    let squarefree_on_line = squarefree_on_random_line(&g, seed);
    Ok(ImageEquation { g, provenance, reducedness: ReducednessCheck { branches_non_associate, squarefree_on_line } })
}

/// Mutual membership of principal ideals, by normal forms.
fn associate(a: &Polynomial, b: &Polynomial, limits: &Limits) -> Result<bool, GermError> {
    let ia = Ideal::new(a.ctx(), vec![a.clone()], OrderingSpec::DegRevLex)?;
    let ib = Ideal::new(b.ctx(), vec![b.clone()], OrderingSpec::DegRevLex)?;
    ia.groebner_basis(limits)?;
    ib.groebner_basis(limits)?;
    Ok(ia.contains(b)? && ib.contains(a)?)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-100..=100);
    let den: i64 = rng.gen_range(1..=100);
    Rational::new(num.into(), den.into())
}

/// Restricts `g` to a random affine line `a + t b` and tests the univariate
/// result for repeated roots. A line through the origin would not do: there
/// the restriction always has the factor `t^mult(g)`.
pub fn squarefree_on_random_line(g: &Polynomial, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_11e5);
    let deg = g.total_degree().unwrap_or(0);
    let line_ctx = VariableContext::uniform(["t"], Role::Auxiliary).expect("valid name");
    let t = Polynomial::var_index(&line_ctx, 0);
    // a line along which the degree drops says nothing; try a few
    for _ in 0..8 {
        let bindings: HashMap<String, Polynomial> = g
            .ctx()
            .names()
            .iter()
            .map(|n| {
                let a = Polynomial::constant(&line_ctx, random_rational(&mut rng));
                let b = random_rational(&mut rng);
                (n.clone(), &a + &t.scale(&b))
            })
            .collect();
        let restricted = g.substitute(&bindings, &line_ctx).expect("bindings cover the context");
        if restricted.total_degree().unwrap_or(0) != deg {
            continue;
        }
        let mut coeffs = vec![Rational::from_integer(0.into()); deg as usize + 1];
        for (m, c) in restricted.terms() {
            coeffs[m.exponent(0) as usize] = c.clone();
        }
        return Univariate::new(coeffs).is_squarefree();
    }
    false
}
