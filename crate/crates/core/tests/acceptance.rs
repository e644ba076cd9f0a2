//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact; the only time bound is the five minutes allowed for the golden germ.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use germ_invariants::germ::{analyse, full_report, milnor_number, report_from, GermAnalysis, InvariantReport, ReportConfig, Stability};
use germ_invariants::io::{parse_polynomial, report_record, GermFile};
use germ_invariants::syzygy::{syzygy_basis, ModuleElement, Submodule};
use germ_invariants::{Dimension, Ideal, KrullDim, Limits, Monomial, OrderingSpec, Polynomial, Rational, Role, VariableContext};

const GOLDEN_BUDGET: Duration = Duration::from_secs(300);
const SEEDS: [u64; 3] = [1, 2, 3];

const CORPUS: [(&str, &str); 4] = [
    ("golden", include_str!("../../../corpus/golden.germ")),
    ("cross_cap", include_str!("../../../corpus/cross_cap.germ")),
    ("s1", include_str!("../../../corpus/s1.germ")),
    ("two_planes", include_str!("../../../corpus/two_planes.germ")),
];

fn parse(text: &str) -> GermFile {
    GermFile::parse(text).expect("fixture parses")
}

fn config_for(file: &GermFile, seed: u64) -> ReportConfig {
    let mut config = ReportConfig { seed, ..ReportConfig::default() };
    file.config.apply(&mut config);
    config
}

/// `(x, y^2, a y^3 + b x^2 y + c s y)` with seeded nonzero rationals.
fn s1_perturbations(count: usize) -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut draw = || loop {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=7);
        if n != 0 {
            return format!("{n}/{d}");
        }
    };
    (0..count)
        .map(|i| {
            let (a, b, c) = (draw(), draw(), draw());
            let text = format!(
                "source: x, y\ntarget: u, v, w\nparameter: s\nbranch:\n  x\n  y^2\n  ({a})*y^3 + ({b})*x^2*y + ({c})*s*y\nend\nflags: stabilisation, stable-unfolding\n"
            );
            (format!("s1_perturbed_{i}"), text)
        })
        .collect()
}

/// Shared state: the golden germ is expensive, so its analysis is built once.
struct Fixtures {
    golden: GermAnalysis,
    golden_report: InvariantReport,
    golden_time: Duration,
    reports: Vec<(String, InvariantReport)>,
}

fn fixtures() -> Fixtures {
    let file = parse(CORPUS[0].1);
    let config = config_for(&file, SEEDS[0]);
    let start = Instant::now();
    let golden = analyse(&file.spec, &config).expect("golden image");
    let golden_report = report_from(&golden, file.spec.flags(), &config).expect("golden report");
    let golden_time = start.elapsed();
    let mut reports = vec![("golden".to_string(), golden_report.clone())];
    for (name, text) in CORPUS[1..].iter().map(|(n, t)| (n.to_string(), t.to_string())).chain(s1_perturbations(3)) {
        let file = parse(&text);
        let r = full_report(&file.spec, &config_for(&file, SEEDS[0])).unwrap_or_else(|e| panic!("{name}: {e}"));
        reports.push((name, r));
    }
    Fixtures { golden, golden_report, golden_time, reports }
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn criterion_1(fx: &Fixtures) -> Result<String, String> {
    let r = &fx.golden_report;
    check(r.mu_image == 7, format!("mu_image = {}, expected 7", r.mu_image))?;
    check(r.mu_br == 8, format!("mu_br = {}, expected 8", r.mu_br))?;
    check(r.ft_codim == 7, format!("ft_codim = {}, expected 7", r.ft_codim))?;
    check(r.cm_flag, "cm_flag is false")?;
    check(r.stability == Stability::Unstable, "golden reported stable")?;
    check(fx.golden_time < GOLDEN_BUDGET, format!("took {:.1?}, budget {GOLDEN_BUDGET:?}", fx.golden_time))?;
    Ok(format!("golden: mu_image=7 mu_br=8 ft_codim=7 cm_flag=true unstable in {:.1?}", fx.golden_time))
}

fn criterion_2(fx: &Fixtures) -> Result<String, String> {
    let mut checked = 0;
    for (name, text) in CORPUS.iter().map(|(n, t)| (n.to_string(), t.to_string())).chain(s1_perturbations(3)) {
        let file = parse(&text);
        let fresh;
        let analysis = if name == "golden" {
            &fx.golden
        } else {
            fresh = analyse(&file.spec, &config_for(&file, SEEDS[0])).map_err(|e| format!("{name}: {e}"))?;
            &fresh
        };
        let samuel = analysis.samuel(12).map_err(|e| format!("{name}: {e}"))?.multiplicity;
        for seed in SEEDS {
            let oracle = analysis.siersma(None, seed, 5).map_err(|e| format!("{name}, seed {seed}: {e}"))?;
            check(oracle.value == samuel, format!("{name}, seed {seed}: Samuel {samuel}, critical points {}", oracle.value))?;
            checked += 1;
        }
    }
    Ok(format!("Samuel route = critical-point route on 7 germs x 3 seeds ({checked} comparisons)"))
}

fn criterion_3(fx: &Fixtures) -> Result<String, String> {
    for (name, r) in &fx.reports {
        let expect_stable = matches!(name.as_str(), "cross_cap" | "two_planes");
        if expect_stable {
            check(r.mu_image == 0 && r.stability == Stability::Stable, format!("{name}: mu_image {} {}", r.mu_image, r.stability))?;
        } else {
            check(r.mu_image >= 1 && r.stability == Stability::Unstable, format!("{name}: mu_image {} {}", r.mu_image, r.stability))?;
        }
    }
    Ok("stable fixtures have mu_image = 0, unstable ones mu_image >= 1".into())
}

fn criterion_4(fx: &Fixtures) -> Result<String, String> {
    for (name, r) in &fx.reports {
        check(r.mu_image <= r.ft_codim, format!("{name}: mu_image {} > ft_codim {}", r.mu_image, r.ft_codim))?;
        check(r.cm_flag == (r.mu_image == r.ft_codim), format!("{name}: cm_flag inconsistent"))?;
    }
    let r = &fx.golden_report;
    check(r.cm_flag && r.mu_br > r.mu_image, format!("golden: mu_br {} not above mu_image {}", r.mu_br, r.mu_image))?;
    Ok("mu_image <= ft_codim everywhere, equality iff cm_flag; golden mu_br 8 > 7".into())
}

fn criterion_5(fx: &Fixtures) -> Result<String, String> {
    let file = parse(CORPUS[2].1);
    let analysis = analyse(&file.spec, &config_for(&file, SEEDS[0])).map_err(|e| e.to_string())?;
    let limits = analysis.limits().clone();
    let s = parse_polynomial("s", file.spec.target_ctx()).map_err(|e| e.to_string())?;
    let br = analysis.br_ideal().map_err(|e| e.to_string())?.with_ordering(OrderingSpec::LocalDegRevLex).map_err(|e| e.to_string())?;
    let ft_s = analysis.ft_ideal().map_err(|e| e.to_string())?.with_generators([s]).map_err(|e| e.to_string())?;
    br.compute(&limits).map_err(|e| e.to_string())?;
    ft_s.compute(&limits).map_err(|e| e.to_string())?;
    // normal forms with respect to local standard bases
    check(br.contains_ideal(&ft_s).map_err(|e| e.to_string())?, "FT + (s) not inside dpi(Der(-log X))")?;
    check(ft_s.contains_ideal(&br).map_err(|e| e.to_string())?, "dpi(Der(-log X)) not inside FT + (s)")?;
    let r = &fx.reports.iter().find(|(n, _)| n == "s1").unwrap().1;
    let q = r.quasi_homogeneous.as_ref().ok_or("no weighted-homogeneous check in the S1 report")?;
    check(q.euler_identity && q.ideals_equal, "report's weighted-homogeneous check failed")?;
    check(r.ae_codim == Some(1) && r.mu_image == 1, format!("ae_codim {:?}, mu_image {}", r.ae_codim, r.mu_image))?;
    Ok("S1: dpi(Der(-log X)) = FT + (s) by mutual containment; ae_codim = 1 = mu_image".into())
}

fn criterion_6(fx: &Fixtures) -> Result<String, String> {
    for (name, r) in &fx.reports {
        check(r.lc_substitution, format!("{name}: p := 0, q := 1 does not give FT"))?;
    }
    let r = &fx.golden_report;
    check(r.ft_krull_dim == KrullDim::Dim(1), format!("golden: dim O/FT = {}", r.ft_krull_dim))?;
    check(r.lc_dimension.value() == Some(5), format!("golden: LC dimension {:?}", r.lc_dimension))?;
    Ok("LC(G) specialises to FT on all fixtures; golden dim O/FT = 1, dim LC(G) = 5".into())
}

fn random_poly(ctx: &std::sync::Arc<VariableContext>, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = rng.gen_range(1..=3);
    Polynomial::from_terms(
        ctx,
        (0..n).map(|_| {
            let m = Monomial::from_exponents((0..ctx.len()).map(|_| rng.gen_range(0..=2)));
            (m, Rational::from_integer(rng.gen_range(-3i64..=3).into()))
        }),
    )
}

fn spoly_reduces(basis: &[Polynomial], ideal: &Ideal, ord: &OrderingSpec) -> bool {
    let o = ord.compile(ideal.ctx().len()).unwrap();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            let (ma, ca) = basis[a].leading_term(&o).unwrap();
            let (mb, cb) = basis[b].leading_term(&o).unwrap();
            let l = ma.lcm(mb);
            let s = &basis[a].mul_monomial(&ma.quotient_of(&l)).scale(&ca.recip()) - &basis[b].mul_monomial(&mb.quotient_of(&l)).scale(&cb.recip());
            if !ideal.normal_form(&s).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

fn criterion_7() -> Result<String, String> {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let xyz = VariableContext::uniform(["x", "y", "z"], Role::Target).unwrap();
    for round in 0..100 {
        let gens: Vec<Polynomial> = (0..3).map(|_| random_poly(&xyz, &mut rng)).filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::new(&xyz, gens, OrderingSpec::DegRevLex).unwrap();
        let basis = ideal.groebner_basis(&limits).map_err(|e| e.to_string())?.elements().to_vec();
        check(spoly_reduces(&basis, &ideal, &OrderingSpec::DegRevLex), format!("S-polynomial certificate fails in round {round}"))?;
    }

    let xy = VariableContext::uniform(["x", "y"], Role::Target).unwrap();
    let p = |t: &str| parse_polynomial(t, &xy).unwrap();
    let local = Ideal::new(&xy, vec![p("x^2 + x^3"), p("y")], OrderingSpec::LocalDegRevLex).unwrap();
    let d = local.quotient_dim_local(&limits).map_err(|e| e.to_string())?;
    check(d == Dimension::Finite(2), format!("<x^2 + x^3, y> has local colength {d:?}"))?;

    for (gens, f) in [(vec!["x^2*y", "x*y^2"], "x"), (vec!["x^3*(y - 1)", "y^2*x"], "x"), (vec!["x*y*(x - y)", "x^4"], "x + y")] {
        let f = p(f);
        let i = Ideal::new(&xy, gens.iter().map(|g| p(g)).collect(), OrderingSpec::DegRevLex).unwrap();
        let sat = i.saturation(&f, &limits).map_err(|e| e.to_string())?;
        let again = sat.quotient(&f, &limits).map_err(|e| e.to_string())?;
        check(again.equals(&sat, &limits).map_err(|e| e.to_string())?, format!("saturation of {gens:?} not idempotent"))?;
    }

    let mut tuples = 0;
    while tuples < 1000 {
        let g: Vec<Polynomial> = (0..3).map(|_| random_poly(&xy, &mut rng)).collect();
        if g.iter().any(Polynomial::is_zero) {
            continue;
        }
        tuples += 1;
        let syz = syzygy_basis(&g, &OrderingSpec::DegRevLex, &limits).map_err(|e| e.to_string())?;
        for e in syz.elements() {
            check(e.pair_with(&g).unwrap().is_zero(), format!("non-syzygy for tuple {tuples}"))?;
        }
        let module = Submodule::new(&xy, 3, syz.elements(), &OrderingSpec::DegRevLex, &limits).map_err(|e| e.to_string())?;
        let zero = Polynomial::zero(&xy);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let mut comps = vec![zero.clone(); 3];
            comps[i] = g[j].clone();
            comps[j] = -&g[i];
            check(module.contains(&ModuleElement::new(comps)).unwrap(), format!("Koszul syzygy missing for tuple {tuples}"))?;
        }
    }

    for k in 1..=6u64 {
        let mu = milnor_number(&p(&format!("x^{} + y^2", k + 1)), &limits).map_err(|e| e.to_string())?;
        check(mu == Dimension::Finite(k), format!("mu(x^{} + y^2) = {mu:?}", k + 1))?;
    }
    Ok("S-polynomial certificates (100 ideals), unit absorption, saturation idempotence, 1000 syzygy tuples, mu(A_k) = k for k = 1..6".into())
}

fn criterion_8() -> Result<String, String> {
    let run = || -> Result<String, String> {
        let mut out = String::new();
        for (name, text) in CORPUS {
            let file = parse(text);
            let r = full_report(&file.spec, &config_for(&file, SEEDS[0])).map_err(|e| format!("{name}: {e}"))?;
            out.push_str(&format!("file={name}\n"));
            out.push_str(&report_record(&r).machine());
        }
        Ok(out)
    };
    let (a, b) = (run()?, run()?);
    check(a.as_bytes() == b.as_bytes(), "machine reports differ between runs")?;
    Ok(format!("two runs over the corpus gave identical machine reports ({} bytes)", a.len()))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let fx = catch_unwind(fixtures).ok();
    type Criterion<'a> = Box<dyn Fn() -> Result<String, String> + 'a>;
    let needs = |f: fn(&Fixtures) -> Result<String, String>| -> Criterion<'_> {
        let fx = fx.as_ref();
        Box::new(move || fx.map_or_else(|| Err("fixture reports could not be computed".to_string()), f))
    };
    let criteria: Vec<(&str, Criterion)> = vec![
        ("golden germ", needs(criterion_1)),
        ("route equivalence", needs(criterion_2)),
        ("stability characterisation", needs(criterion_3)),
        ("Cohen-Macaulay corollary", needs(criterion_4)),
        ("quasi-homogeneous identity", needs(criterion_5)),
        ("LC consistency", needs(criterion_6)),
        ("algebra substrate", Box::new(criterion_7)),
        ("determinism", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed in {:.1?}", criteria.len() - failed, criteria.len(), started.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
