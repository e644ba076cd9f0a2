use std::sync::Arc;

use crate::error::GermError;
use crate::poly::{Polynomial, Role, VariableContext};

/// Hypotheses the tool cannot verify; they are taken on the user's word and
/// echoed into reports.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GermFlags {
    /// `F` is a stabilisation of `f`.
    pub stabilisation: bool,
    /// `F` is a one-parameter stable unfolding of `f`.
    pub stable_unfolding: bool,
    /// Weights on the target and parameter variables (in that order) making
    /// the image equation weighted homogeneous.
    pub weights: Option<Vec<u32>>,
}

/// A polynomial multigerm `f` together with a one-parameter unfolding
/// `F(x, s) = (f_s(x), s)`. Each branch is centred at the origin of its own
/// copy of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapGermSpec {
    branch_ctx: Arc<VariableContext>,
    target_ctx: Arc<VariableContext>,
    branches: Vec<Vec<Polynomial>>,
    image: Option<Polynomial>,
    flags: GermFlags,
}

impl MapGermSpec {
    /// Builds the contexts `(source, s)` and `(target, s)` and validates the
    /// shapes. Branch components must live over the branch context.
    pub fn new(
        source: &[&str],
        target: &[&str],
        parameter: &str,
        branches: Vec<Vec<Polynomial>>,
        image: Option<Polynomial>,
        flags: GermFlags,
    ) -> Result<Self, GermError> {
        let (branch_ctx, target_ctx) = Self::contexts(source, target, parameter)?;
        Self::from_parts(branch_ctx, target_ctx, branches, image, flags)
    }

    /// The branch context `(x_1..x_n, s)` and target context `(y_1..y_{n+1}, s)`.
    pub fn contexts(
        source: &[&str],
        target: &[&str],
        parameter: &str,
    ) -> Result<(Arc<VariableContext>, Arc<VariableContext>), GermError> {
        if source.is_empty() {
            return Err(GermError::InvalidGerm("no source variables".into()));
        }
        if target.len() != source.len() + 1 {
            return Err(GermError::InvalidGerm(format!(
                "{} source variables need {} target variables, found {}",
                source.len(),
                source.len() + 1,
                target.len()
            )));
        }
        if let Some(t) = target.iter().find(|t| source.contains(t)) {
            return Err(GermError::InvalidGerm(format!("`{t}` is both a source and a target variable")));
        }
        let bad = |e: crate::error::AlgebraError| GermError::InvalidGerm(e.to_string());
        let branch_ctx = VariableContext::new(
            source.iter().map(|&n| (n, Role::Source)).chain([(parameter, Role::Parameter)]),
        )
        .map_err(bad)?;
        let target_ctx = VariableContext::new(
            target.iter().map(|&n| (n, Role::Target)).chain([(parameter, Role::Parameter)]),
        )
        .map_err(bad)?;
        Ok((branch_ctx, target_ctx))
    }

    pub fn from_parts(
        branch_ctx: Arc<VariableContext>,
        target_ctx: Arc<VariableContext>,
        branches: Vec<Vec<Polynomial>>,
        image: Option<Polynomial>,
        flags: GermFlags,
    ) -> Result<Self, GermError> {
        if branches.is_empty() {
            return Err(GermError::InvalidGerm("no branches".into()));
        }
        let rank = target_ctx.len() - 1;
        let origin = vec![crate::poly::Rational::from_integer(0.into()); branch_ctx.len()];
        for (b, comps) in branches.iter().enumerate() {
            if comps.len() != rank {
                return Err(GermError::InvalidGerm(format!(
                    "branch {} has {} components, expected {rank}",
                    b + 1,
                    comps.len()
                )));
            }
            for (j, c) in comps.iter().enumerate() {
                if c.ctx() != &branch_ctx {
                    return Err(GermError::InvalidGerm(format!("branch {} component {} uses a foreign context", b + 1, j + 1)));
                }
                if !num_traits::Zero::is_zero(&c.eval(&origin)) {
                    return Err(GermError::InvalidGerm(format!(
                        "branch {} component {} does not vanish at the origin",
                        b + 1,
                        j + 1
                    )));
                }
            }
        }
        if let Some(g) = &image {
            if g.ctx() != &target_ctx {
                return Err(GermError::InvalidGerm("image equation uses a foreign context".into()));
            }
        }
        if let Some(w) = &flags.weights {
            if w.len() != target_ctx.len() {
                return Err(GermError::InvalidGerm(format!(
                    "expected {} weights (target variables and parameter), found {}",
                    target_ctx.len(),
                    w.len()
                )));
            }
            if w.contains(&0) {
                return Err(GermError::InvalidGerm("weights must be positive".into()));
            }
        }
        Ok(MapGermSpec { branch_ctx, target_ctx, branches, image, flags })
    }

    /// `n`, the source dimension.
    pub fn n(&self) -> usize {
        self.branch_ctx.len() - 1
    }

    pub fn branch_ctx(&self) -> &Arc<VariableContext> {
        &self.branch_ctx
    }

    pub fn target_ctx(&self) -> &Arc<VariableContext> {
        &self.target_ctx
    }

    pub fn source_names(&self) -> &[String] {
        &self.branch_ctx.names()[..self.n()]
    }

    pub fn target_names(&self) -> &[String] {
        &self.target_ctx.names()[..self.n() + 1]
    }

    pub fn parameter_name(&self) -> &str {
        self.branch_ctx.name(self.n())
    }

    pub fn branches(&self) -> &[Vec<Polynomial>] {
        &self.branches
    }

    pub fn image(&self) -> Option<&Polynomial> {
        self.image.as_ref()
    }

    pub fn flags(&self) -> &GermFlags {
        &self.flags
    }

    pub fn with_flags(mut self, flags: GermFlags) -> Result<Self, GermError> {
        self.flags = flags;
        Self::from_parts(self.branch_ctx, self.target_ctx, self.branches, self.image, self.flags)
    }

    /// The core germ `f = f_0`, obtained by setting `s := 0`.
    pub fn core(&self) -> Vec<Vec<Polynomial>> {
        let s = self.n();
        let zero = crate::poly::Rational::from_integer(0.into());
        self.branches
            .iter()
            .map(|b| b.iter().map(|c| c.specialize(&[(s, zero.clone())])).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_polynomial;

    fn cross_cap() -> Result<MapGermSpec, GermError> {
        let (bctx, tctx) = MapGermSpec::contexts(&["x", "y"], &["u", "v", "w"], "s")?;
        let p = |t: &str| parse_polynomial(t, &bctx).unwrap();
        MapGermSpec::from_parts(bctx.clone(), tctx, vec![vec![p("x"), p("y^2"), p("x*y")]], None, GermFlags::default())
    }

    #[test]
    fn builds_cross_cap() {
        let g = cross_cap().unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.parameter_name(), "s");
        assert_eq!(g.target_names(), ["u", "v", "w"]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(MapGermSpec::contexts(&["x", "y"], &["u", "v"], "s").is_err());
        assert!(MapGermSpec::contexts(&["x"], &["x", "v"], "s").is_err());
        let (bctx, tctx) = MapGermSpec::contexts(&["x"], &["u", "v"], "s").unwrap();
        let p = |t: &str| parse_polynomial(t, &bctx).unwrap();
        let off = MapGermSpec::from_parts(bctx.clone(), tctx.clone(), vec![vec![p("x + 1"), p("x^2")]], None, GermFlags::default());
        assert!(matches!(off, Err(GermError::InvalidGerm(m)) if m.contains("vanish")));
        let short = MapGermSpec::from_parts(bctx.clone(), tctx, vec![vec![p("x")]], None, GermFlags::default());
        assert!(short.is_err());
    }

    #[test]
    fn core_drops_parameter() {
        let (bctx, tctx) = MapGermSpec::contexts(&["x"], &["u", "v"], "s").unwrap();
        let p = |t: &str| parse_polynomial(t, &bctx).unwrap();
        let g = MapGermSpec::from_parts(bctx.clone(), tctx, vec![vec![p("x^2"), p("x^3 + s*x")]], None, GermFlags::default()).unwrap();
        assert_eq!(g.core()[0][1], p("x^3"));
    }
}
