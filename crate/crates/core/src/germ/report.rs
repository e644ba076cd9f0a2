//! The full invariant report and the configuration that drives it.

use std::fmt;

use super::image::{image_equation, ImageEquation};
use super::invariants::{GermAnalysis, LcDimension, QuasiHomogeneousCheck, SiersmaCount};
use super::spec::{GermFlags, MapGermSpec};
use crate::error::GermError;
use crate::gb::{KrullDim, Limits};
use crate::poly::Rational;

/// Knobs for one report run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportConfig {
    /// Largest `k` in the Samuel profile `d_k`.
    pub k_max: u32,
    pub seed: u64,
    /// Sample values of `s` tried by the critical-point count.
    pub retries: u32,
    /// First sample value of `s`; later ones are drawn from `seed`.
    pub s0: Option<Rational>,
    pub limits: Limits,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig { k_max: 12, seed: 0, retries: 5, s0: None, limits: Limits::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stability {
    Stable,
    Unstable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
        })
    }
}

/// Conditions worth a reader's attention. Each has a fixed key and message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// The Samuel multiplicity and the critical-point count differ.
    RoutesDisagree { samuel: u64, siersma: u64 },
    /// `G` has a repeated root on a random affine line.
    NotSquarefree,
    /// `μ_I` reads `F` as a stabilisation, which was not asserted.
    StabilisationNotAsserted,
    StabilisationAsserted,
    StableUnfoldingAsserted,
    WeightsAsserted,
    /// `g_0` has non-isolated critical points off `X_0`, so nothing was
    /// discounted from the critical-point count.
    PersistentCountInfinite,
    /// `g_{s0}` has fewer critical points off `X_{s0}` than `g_0` has off
    /// `X_0`; some escaped, and `s0` is not close enough to 0.
    CriticalPointsEscaped { global: u64, persistent: u64 },
    /// The weights do not satisfy `dG(ε) = d·G`.
    EulerIdentityFails,
    /// The weights satisfy the Euler identity but the two ideals differ.
    QuasiHomogeneousIdealsDiffer,
    /// `ft_codim = 0` and `μ_I = 0` do not hold together.
    StabilityMismatch,
    /// The bounds on `dim LC(G)` did not meet.
    LcDimensionUnsettled,
    /// Substituting `p := 0, q := 1` into `LC(G)` does not give `FT(π, G)`.
    LcSubstitutionFails,
}

impl Warning {
    pub fn key(&self) -> &'static str {
        match self {
            Warning::RoutesDisagree { .. } => "routes_disagree",
            Warning::NotSquarefree => "not_squarefree",
            Warning::StabilisationNotAsserted => "stabilisation_not_asserted",
            Warning::StabilisationAsserted => "stabilisation_asserted",
            Warning::StableUnfoldingAsserted => "stable_unfolding_asserted",
            Warning::WeightsAsserted => "weights_asserted",
            Warning::PersistentCountInfinite => "persistent_count_infinite",
            Warning::CriticalPointsEscaped { .. } => "critical_points_escaped",
            Warning::EulerIdentityFails => "euler_identity_fails",
            Warning::QuasiHomogeneousIdealsDiffer => "quasi_homogeneous_ideals_differ",
            Warning::StabilityMismatch => "stability_mismatch",
            Warning::LcDimensionUnsettled => "lc_dimension_unsettled",
            Warning::LcSubstitutionFails => "lc_substitution_fails",
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::RoutesDisagree { samuel, siersma } => {
                write!(f, "Samuel multiplicity {samuel} and critical-point count {siersma} disagree")
            }
            Warning::NotSquarefree => f.write_str("G restricted to a random line has a repeated root; G may not be reduced"),
            Warning::StabilisationNotAsserted => f.write_str("mu_image assumes F is a stabilisation, which was not asserted"),
            Warning::StabilisationAsserted => f.write_str("F is a stabilisation (asserted by the user, not verified)"),
            Warning::StableUnfoldingAsserted => {
                f.write_str("F is a one-parameter stable unfolding (asserted by the user, not verified)")
            }
            Warning::WeightsAsserted => f.write_str("weights supplied by the user"),
            Warning::PersistentCountInfinite => {
                f.write_str("g_0 has non-isolated critical points off X_0; the critical-point count is global")
            }
            Warning::CriticalPointsEscaped { global, persistent } => write!(
                f,
                "g_s0 has {global} critical points off X_s0 but g_0 has {persistent} off X_0; s0 is too far from 0"
            ),
            Warning::EulerIdentityFails => f.write_str("the weights do not satisfy the Euler identity for G"),
            Warning::QuasiHomogeneousIdealsDiffer => {
                f.write_str("G is weighted homogeneous but dpi(Der(-log X)) differs from FT(pi, G) + (s)")
            }
            Warning::StabilityMismatch => f.write_str("ft_codim = 0 and mu_image = 0 do not agree"),
            Warning::LcDimensionUnsettled => f.write_str("the bounds on dim LC(G) did not meet"),
            Warning::LcSubstitutionFails => f.write_str("p := 0, q := 1 does not map LC(G) onto FT(pi, G)"),
        }
    }
}

/// Everything computed for one germ.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub image: ImageEquation,
    pub flags: GermFlags,
    /// `μ_I`, as a Samuel multiplicity.
    pub mu_image: u64,
    /// `μ_I`, as a count of critical points.
    pub mu_image_oracle: SiersmaCount,
    pub ft_codim: u64,
    pub mu_br: u64,
    pub cm_flag: bool,
    pub stability: Stability,
    /// Only with the stable-unfolding flag.
    pub ae_codim: Option<u64>,
    pub samuel_profile: Vec<u64>,
    pub ft_krull_dim: KrullDim,
    pub lc_dimension: LcDimension,
    pub lc_substitution: bool,
    /// Only with weights.
    pub quasi_homogeneous: Option<QuasiHomogeneousCheck>,
    pub warnings: Vec<Warning>,
}

impl InvariantReport {
    pub fn routes_agree(&self) -> bool {
        self.mu_image == self.mu_image_oracle.value
    }
}

/// Image equation plus the analysis object every invariant hangs off.
pub fn analyse(spec: &MapGermSpec, config: &ReportConfig) -> Result<GermAnalysis, GermError> {
    let image = image_equation(spec, &config.limits, config.seed)?;
    Ok(GermAnalysis::new(image, config.limits.clone()))
}

/// Runs every computation and cross-check on `spec`.
pub fn full_report(spec: &MapGermSpec, config: &ReportConfig) -> Result<InvariantReport, GermError> {
    let analysis = analyse(spec, config)?;
    report_from(&analysis, spec.flags(), config)
}

/// [`full_report`] on an existing analysis.
pub fn report_from(analysis: &GermAnalysis, flags: &GermFlags, config: &ReportConfig) -> Result<InvariantReport, GermError> {
    let mut warnings = Vec::new();
    if !analysis.image().reducedness().squarefree_on_line {
        warnings.push(Warning::NotSquarefree);
    }
    warnings.push(if flags.stabilisation { Warning::StabilisationAsserted } else { Warning::StabilisationNotAsserted });
    if flags.stable_unfolding {
        warnings.push(Warning::StableUnfoldingAsserted);
    }
    if flags.weights.is_some() {
        warnings.push(Warning::WeightsAsserted);
    }

    let ft_codim = analysis.ft_codim()?;
    let samuel = analysis.samuel(config.k_max)?;
    let mu_image = samuel.multiplicity;
    let stability = if ft_codim == 0 { Stability::Stable } else { Stability::Unstable };
    if (ft_codim == 0) != (mu_image == 0) {
        warnings.push(Warning::StabilityMismatch);
    }

    let oracle = analysis.siersma(config.s0.clone(), config.seed, config.retries)?;
    match oracle.persistent {
        None => warnings.push(Warning::PersistentCountInfinite),
        Some(p) if p > oracle.global => warnings.push(Warning::CriticalPointsEscaped { global: oracle.global, persistent: p }),
        Some(_) => {}
    }
    if oracle.value != mu_image {
        warnings.push(Warning::RoutesDisagree { samuel: mu_image, siersma: oracle.value });
    }

    let mu_br = analysis.bruce_roberts()?;
    let ae_codim = if flags.stable_unfolding { Some(analysis.ae_codim()?) } else { None };

    let ft_krull_dim = analysis.ft_krull_dim(config.k_max)?;
    let lc_dimension = analysis.lc_dimension(config.seed, 3)?;
    if lc_dimension.value().is_none() {
        warnings.push(Warning::LcDimensionUnsettled);
    }
    let lc_substitution = analysis.lc_substitution_holds()?;
    if !lc_substitution {
        warnings.push(Warning::LcSubstitutionFails);
    }

    let quasi_homogeneous = match &flags.weights {
        Some(w) => match analysis.quasi_homogeneous(w) {
            Ok(check) => {
                if !check.euler_identity {
                    warnings.push(Warning::EulerIdentityFails);
                } else if !check.ideals_equal {
                    warnings.push(Warning::QuasiHomogeneousIdealsDiffer);
                }
                Some(check)
            }
            Err(GermError::NotWeightedHomogeneous) => {
                warnings.push(Warning::EulerIdentityFails);
                None
            }
            Err(e) => return Err(e),
        },
        None => None,
    };

    Ok(InvariantReport {
        image: analysis.image().clone(),
        flags: flags.clone(),
        mu_image,
        mu_image_oracle: oracle,
        ft_codim,
        mu_br,
        cm_flag: mu_image == ft_codim,
        stability,
        ae_codim,
        samuel_profile: samuel.profile,
        ft_krull_dim,
        lc_dimension,
        lc_substitution,
        quasi_homogeneous,
        warnings,
    })
}

/// `A_e`-codimension through the Bruce-Roberts ideal; needs the
/// stable-unfolding flag.
pub fn ae_codim_opsu(analysis: &GermAnalysis, flags: &GermFlags) -> Result<u64, GermError> {
    if !flags.stable_unfolding {
        return Err(GermError::FlagRequired("ae_codim", "stable-unfolding"));
    }
    analysis.ae_codim()
}
