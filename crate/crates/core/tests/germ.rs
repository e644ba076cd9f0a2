use germ_invariants::germ::{full_report, InvariantReport, ReportConfig, Stability, Warning};
use germ_invariants::io::GermFile;
use germ_invariants::poly::rational;
use germ_invariants::KrullDim;
use proptest::prelude::*;

const CROSS_CAP: &str = include_str!("../../../corpus/cross_cap.germ");
const S1: &str = include_str!("../../../corpus/s1.germ");
const TWO_PLANES: &str = include_str!("../../../corpus/two_planes.germ");

fn report(text: &str, config: &ReportConfig) -> InvariantReport {
    let file = GermFile::parse(text).unwrap();
    let mut config = config.clone();
    file.config.apply(&mut config);
    full_report(&file.spec, &config).unwrap()
}

/// The `S_k` family: `(x, y^2, y^3 + x^(k+1) y)` unfolded by `s y`.
fn s_k(k: u32) -> String {
    format!(
        "source: x, y\ntarget: u, v, w\nparameter: s\nbranch:\n  x\n  y^2\n  y^3 + x^{}*y + s*y\nend\nflags: stabilisation, stable-unfolding\n",
        k + 1
    )
}

fn perturbed_s1(a: &str, b: &str, c: &str) -> String {
    format!(
        "source: x, y\ntarget: u, v, w\nparameter: s\nbranch:\n  x\n  y^2\n  ({a})*y^3 + ({b})*x^2*y + ({c})*s*y\nend\nflags: stabilisation, stable-unfolding\n"
    )
}

/// Relations every report must satisfy, whatever the germ.
fn check_invariants(r: &InvariantReport) {
    assert!(r.routes_agree(), "Samuel {} vs critical points {}", r.mu_image, r.mu_image_oracle.value);
    assert_eq!(r.stability == Stability::Stable, r.ft_codim == 0);
    assert_eq!(r.ft_codim == 0, r.mu_image == 0, "stable exactly when mu_image = 0");
    assert!(r.mu_image <= r.ft_codim, "e(s) <= length of O/(FT + (s))");
    assert_eq!(r.cm_flag, r.mu_image == r.ft_codim);
    assert!(r.lc_substitution);
    if let Some(ae) = r.ae_codim {
        assert_eq!(ae == 0, r.mu_image == 0);
    }
    if r.mu_image > 0 {
        assert_eq!(r.ft_krull_dim, KrullDim::Dim(1));
        let incs: Vec<u64> = r.samuel_profile.windows(2).map(|w| w[1] - w[0]).collect();
        assert_eq!(incs.last(), Some(&r.mu_image));
    }
    assert!(!r.warnings.iter().any(|w| matches!(w, Warning::RoutesDisagree { .. } | Warning::StabilityMismatch)));
}

#[test]
fn cross_cap_is_stable_with_no_critical_points() {
    let r = report(CROSS_CAP, &ReportConfig::default());
    assert_eq!(r.image.polynomial().to_string().replace(' ', ""), "u^2*v-w^2");
    assert_eq!((r.mu_image, r.mu_image_oracle.value, r.ft_codim, r.mu_br), (0, 0, 0, 0));
    assert_eq!(r.mu_image_oracle.global, 0);
    assert_eq!(r.stability, Stability::Stable);
    assert_eq!(r.ae_codim, Some(0));
    assert_eq!(r.ft_krull_dim, KrullDim::Empty);
    check_invariants(&r);
}

#[test]
fn two_transverse_planes_are_stable() {
    let r = report(TWO_PLANES, &ReportConfig::default());
    assert_eq!((r.mu_image, r.ft_codim, r.mu_br), (0, 0, 0));
    assert_eq!(r.stability, Stability::Stable);
    check_invariants(&r);
}

#[test]
fn s1_values() {
    let config = ReportConfig { s0: Some(rational(1, 3)), ..ReportConfig::default() };
    let r = report(S1, &config);
    assert_eq!(r.mu_image, 1);
    assert_eq!(r.mu_image_oracle.value, 1);
    assert_eq!(r.mu_image_oracle.s0, rational(1, 3));
    assert_eq!((r.ft_codim, r.mu_br, r.ae_codim), (1, 1, Some(1)));
    assert!(r.cm_flag);
    assert_eq!(r.stability, Stability::Unstable);
    assert_eq!(r.lc_dimension.value(), Some(5));
    let q = r.quasi_homogeneous.as_ref().unwrap();
    assert!(q.euler_identity && q.ideals_equal);
    assert_eq!(q.weighted_degree, 6);
    check_invariants(&r);
}

#[test]
fn s1_oracle_does_not_depend_on_the_seed() {
    for seed in 0..4 {
        let r = report(S1, &ReportConfig { seed, ..ReportConfig::default() });
        assert_eq!(r.mu_image_oracle.value, 1, "seed {seed}");
    }
}

#[test]
fn s_k_family() {
    for k in 1..=3u64 {
        let r = report(&s_k(k as u32), &ReportConfig::default());
        assert_eq!(r.mu_image, k, "S_{k}");
        assert_eq!(r.ae_codim, Some(k), "S_{k}");
        check_invariants(&r);
    }
}

#[test]
fn wrong_weights_are_reported() {
    let text = S1.replace("weights: 1, 2, 3, 2", "weights: 1, 1, 1, 1");
    let r = report(&text, &ReportConfig::default());
    assert!(r.warnings.contains(&Warning::EulerIdentityFails));
}

#[test]
fn missing_flags_are_warned() {
    let text = S1.replace("flags: stabilisation, stable-unfolding\n", "");
    let r = report(&text, &ReportConfig::default());
    assert!(r.warnings.contains(&Warning::StabilisationNotAsserted));
    assert_eq!(r.ae_codim, None);
}

fn nonzero_rational() -> impl Strategy<Value = String> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=7).prop_map(|(n, d)| format!("{n}/{d}"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// `(x, y^2, a y^3 + b x^2 y + c s y)` is `S_1` up to coordinate changes
    /// for nonzero `a, b, c`.
    #[test]
    fn s1_perturbations_keep_their_invariants(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational(), seed in 0u64..1000) {
        let r = report(&perturbed_s1(&a, &b, &c), &ReportConfig { seed, ..ReportConfig::default() });
        prop_assert_eq!(r.mu_image, 1);
        prop_assert_eq!(r.ft_codim, 1);
        prop_assert_eq!(r.ae_codim, Some(1));
        check_invariants(&r);
    }
}
