use std::collections::HashMap;
use std::sync::Arc;

use germ_invariants::germ::milnor_number;
use germ_invariants::io::parse_polynomial;
use germ_invariants::{Dimension, Ideal, KrullDim, Limits, Monomial, OrderingSpec, Polynomial, Rational, Role, VariableContext};
use proptest::prelude::*;

fn ctx(names: &[&str]) -> Arc<VariableContext> {
    VariableContext::uniform(names.iter().copied(), Role::Target).unwrap()
}

fn p(text: &str, c: &Arc<VariableContext>) -> Polynomial {
    parse_polynomial(text, c).unwrap()
}

fn ideal(c: &Arc<VariableContext>, gens: &[&str], ord: OrderingSpec) -> Ideal {
    Ideal::new(c, gens.iter().map(|g| p(g, c)).collect(), ord).unwrap()
}

fn lim() -> Limits {
    Limits::default()
}

/// `S(f, g)` with respect to `ord`.
fn spoly(f: &Polynomial, g: &Polynomial, ord: &OrderingSpec) -> Polynomial {
    let ord = ord.compile(f.ctx().len()).unwrap();
    let (mf, cf) = f.leading_term(&ord).unwrap();
    let (mg, cg) = g.leading_term(&ord).unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_monomial(&mf.quotient_of(&l)).scale(&cf.recip());
    let b = g.mul_monomial(&mg.quotient_of(&l)).scale(&cg.recip());
    &a - &b
}

fn poly_strategy(nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -5i64..=5), 1..=max_terms)
}

fn build(c: &Arc<VariableContext>, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    Polynomial::from_terms(c, terms.iter().map(|(e, k)| (Monomial::from_exponents(e.iter().copied()), Rational::from_integer((*k).into()))))
}

#[test]
fn buchberger_certificate_on_fixed_ideals() {
    let c = ctx(&["x", "y", "z"]);
    let cases: [&[&str]; 4] = [
        &["x^2 - y", "x*y - z", "y^2 - x*z"],
        &["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
        &["x*y*z - 1", "x^2 - y", "z^2 - x"],
        &["x^2 + y^2 + z^2 - 1", "x - y", "y*z - 1/2"],
    ];
    for gens in cases {
        for ord in [OrderingSpec::DegRevLex, OrderingSpec::Lex] {
            let i = ideal(&c, gens, ord.clone());
            let basis = i.groebner_basis(&lim()).unwrap().elements().to_vec();
            for a in 0..basis.len() {
                for b in a + 1..basis.len() {
                    let s = spoly(&basis[a], &basis[b], &ord);
                    assert!(i.normal_form(&s).unwrap().is_zero(), "S-polynomial of {gens:?} does not reduce to 0");
                }
            }
            for g in gens {
                assert!(i.contains(&p(g, &c)).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn buchberger_certificate_random(a in poly_strategy(3, 3, 2), b in poly_strategy(3, 3, 2), cc in poly_strategy(3, 2, 2)) {
        let c = ctx(&["x", "y", "z"]);
        let gens: Vec<Polynomial> = [a, b, cc].iter().map(|t| build(&c, t)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let i = Ideal::new(&c, gens.clone(), OrderingSpec::DegRevLex).unwrap();
        let basis = i.groebner_basis(&lim()).unwrap().elements().to_vec();
        for x in 0..basis.len() {
            for y in x + 1..basis.len() {
                let s = spoly(&basis[x], &basis[y], &OrderingSpec::DegRevLex);
                prop_assert!(i.normal_form(&s).unwrap().is_zero());
            }
        }
        for g in &gens {
            prop_assert!(i.contains(g).unwrap());
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(f in poly_strategy(2, 5, 4), g in poly_strategy(2, 5, 4)) {
        let c = ctx(&["x", "y"]);
        let i = ideal(&c, &["x^2 - y^3", "x*y^2 - 1"], OrderingSpec::DegRevLex);
        i.compute(&lim()).unwrap();
        let (f, g) = (build(&c, &f), build(&c, &g));
        let nf = i.normal_form(&f).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
        let ng = i.normal_form(&g).unwrap();
        prop_assert_eq!(i.normal_form(&(&f + &g)).unwrap(), i.normal_form(&(&nf + &ng)).unwrap());
    }

    #[test]
    fn local_normal_form_is_idempotent(f in poly_strategy(2, 4, 4)) {
        let c = ctx(&["x", "y"]);
        let i = ideal(&c, &["x^2 + x^3", "y^2 - x*y^3"], OrderingSpec::LocalDegRevLex);
        i.compute(&lim()).unwrap();
        let f = build(&c, &f);
        let nf = i.normal_form(&f).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn local_dimension_drops_under_enlargement(extra in poly_strategy(2, 3, 3)) {
        let c = ctx(&["x", "y"]);
        let i = ideal(&c, &["x^3 - y^2", "x*y^2"], OrderingSpec::LocalDegRevLex);
        let bigger = i.with_generators([build(&c, &extra)]).unwrap();
        let (a, b) = (i.quotient_dim_local(&lim()).unwrap(), bigger.quotient_dim_local(&lim()).unwrap());
        prop_assert!(b <= a, "{b:?} > {a:?}");
    }
}

#[test]
fn unit_absorption_in_the_local_ring() {
    let c = ctx(&["x", "y"]);
    let i = ideal(&c, &["x^2 + x^3", "y"], OrderingSpec::LocalDegRevLex);
    assert_eq!(i.quotient_dim_local(&lim()).unwrap(), Dimension::Finite(2));
    // globally the extra point x = -1 counts too
    let g = ideal(&c, &["x^2 + x^3", "y"], OrderingSpec::DegRevLex);
    assert_eq!(g.quotient_dim(&lim()).unwrap(), Dimension::Finite(3));
}

#[test]
fn local_dimension_examples() {
    let c = ctx(&["x", "y"]);
    assert_eq!(ideal(&c, &["x", "y"], OrderingSpec::LocalDegRevLex).quotient_dim_local(&lim()).unwrap(), Dimension::Finite(1));
    assert_eq!(ideal(&c, &["x^2", "y^3"], OrderingSpec::LocalDegRevLex).quotient_dim_local(&lim()).unwrap(), Dimension::Finite(6));
    assert_eq!(ideal(&c, &["x*y"], OrderingSpec::LocalDegRevLex).quotient_dim_local(&lim()).unwrap(), Dimension::Infinite);
}

#[test]
fn milnor_numbers_of_a_k() {
    let c = ctx(&["x", "y"]);
    for k in 1..=6 {
        let h = p(&format!("x^{} + y^2", k + 1), &c);
        assert_eq!(milnor_number(&h, &lim()).unwrap(), Dimension::Finite(k), "A_{k}");
    }
}

#[test]
fn milnor_numbers_of_other_singularities() {
    let c = ctx(&["x", "y", "z"]);
    assert_eq!(milnor_number(&p("x^2 + y^2 + z^2", &c), &lim()).unwrap(), Dimension::Finite(1));
    let c = ctx(&["x", "y"]);
    // xy is a nondegenerate quadratic part, so the origin is a Morse point
    assert_eq!(milnor_number(&p("x^3 + y^3 + x*y", &c), &lim()).unwrap(), Dimension::Finite(1));
    assert_eq!(milnor_number(&p("x^3 + y^3", &c), &lim()).unwrap(), Dimension::Finite(4));
    assert_eq!(milnor_number(&p("x^2*y", &c), &lim()).unwrap(), Dimension::Infinite);
}

#[test]
fn quotient_and_saturation_examples() {
    let c = ctx(&["x", "y"]);
    let q = ideal(&c, &["x*y"], OrderingSpec::DegRevLex).quotient(&p("y", &c), &lim()).unwrap();
    assert!(q.equals(&ideal(&c, &["x"], OrderingSpec::DegRevLex), &lim()).unwrap());
    let s = ideal(&c, &["x^2"], OrderingSpec::DegRevLex).saturation(&p("x", &c), &lim()).unwrap();
    assert!(s.is_unit(&lim()).unwrap());
}

#[test]
fn cross_cap_slice_has_no_off_image_critical_points() {
    let c = ctx(&["u", "v", "w"]);
    let g = p("w^2 - u^2*v", &c);
    let jac: Vec<Polynomial> = (0..3).map(|i| g.derivative(i)).collect();
    let j = Ideal::new(&c, jac, OrderingSpec::DegRevLex).unwrap();
    assert!(j.saturation(&g, &lim()).unwrap().is_unit(&lim()).unwrap());
    assert_eq!(j.saturation_dim(&g, 8, &lim()).unwrap(), Dimension::Finite(0));
}

#[test]
fn saturation_is_idempotent() {
    let c = ctx(&["x", "y"]);
    let cases: [(&[&str], &str); 3] = [(&["x^2*y", "x*y^2"], "x"), (&["x^3*(y - 1)", "y^2*x"], "x"), (&["x*y*(x - y)", "x^4"], "x + y")];
    for (gens, f) in cases {
        let f = p(f, &c);
        let sat = ideal(&c, gens, OrderingSpec::DegRevLex).saturation(&f, &lim()).unwrap();
        let again = sat.quotient(&f, &lim()).unwrap();
        assert!(again.equals(&sat, &lim()).unwrap(), "{gens:?}");
    }
}

#[test]
fn saturation_dimension_agrees_with_the_saturated_ideal() {
    let c = ctx(&["x", "y"]);
    let cases: [(&[&str], &str); 3] = [
        (&["x*y", "x^2 - x"], "x"),
        (&["x^3*y", "x^3*(x - 1)^2", "y^2"], "x"),
        (&["(x^2 - 1)*y", "y^2 - y", "x^3 - x"], "x*y"),
    ];
    for (gens, f) in cases {
        let f = p(f, &c);
        let i = ideal(&c, gens, OrderingSpec::DegRevLex);
        let sat = i.saturation(&f, &lim()).unwrap();
        assert_eq!(i.saturation_dim(&f, 8, &lim()).unwrap(), sat.quotient_dim(&lim()).unwrap(), "{gens:?}");
    }
}

#[test]
fn elimination_soundness() {
    let c = VariableContext::new([("x", Role::Source), ("y1", Role::Target), ("y2", Role::Target)]).unwrap();
    let i = ideal(&c, &["y1 - x^2", "y2 - x^3"], OrderingSpec::DegRevLex);
    i.compute(&lim()).unwrap();
    let e = i.elimination_ideal(&[0], &lim()).unwrap();
    assert_eq!(e.generators().len(), 1);
    let g = &e.generators()[0];
    let expected = p("y1^3 - y2^2", e.ctx());
    assert!(*g == expected || *g == -&expected);
    for g in e.generators() {
        assert!(i.contains(&g.in_context(&c).unwrap()).unwrap());
    }
    // a surjective projection eliminates to zero
    let c = VariableContext::new([("t", Role::Source), ("y", Role::Target)]).unwrap();
    let e = ideal(&c, &["y - t"], OrderingSpec::DegRevLex).elimination_ideal(&[0], &lim()).unwrap();
    assert!(e.generators().iter().all(Polynomial::is_zero));
}

#[test]
fn elimination_vanishes_on_the_parametrisation() {
    // x = t^2 + t, y = t^3 - 1 is generically injective, so the image is a cubic
    let c = VariableContext::new([("t", Role::Source), ("x", Role::Target), ("y", Role::Target)]).unwrap();
    let e = ideal(&c, &["x - t^2 - t", "y - t^3 + 1"], OrderingSpec::DegRevLex).elimination_ideal(&[0], &lim()).unwrap();
    assert_eq!(e.generators().len(), 1);
    let g = &e.generators()[0];
    assert_eq!(g.total_degree(), Some(3));
    let bindings = HashMap::from([("x".to_string(), p("t^2 + t", &c)), ("y".to_string(), p("t^3 - 1", &c))]);
    let back = g.in_context(&c).unwrap().substitute(&bindings, &c).unwrap();
    assert!(back.is_zero());
}

#[test]
fn krull_dimension_of_leading_ideals() {
    let c = ctx(&["x", "y"]);
    let i = ideal(&c, &["x"], OrderingSpec::DegRevLex);
    i.compute(&lim()).unwrap();
    assert_eq!(i.krull_dim_leading().unwrap(), KrullDim::Dim(1));
    let u = ideal(&c, &["1"], OrderingSpec::DegRevLex);
    u.compute(&lim()).unwrap();
    assert_eq!(u.krull_dim_leading().unwrap(), KrullDim::Empty);
}

#[test]
fn local_quotient_matches_global_quotient_for_homogeneous_ideals() {
    let c = ctx(&["x", "y", "z"]);
    let cases: [(&[&str], &str); 3] = [(&["x^3", "y^2", "z^2"], "x*y"), (&["x^2 - y^2", "x*y", "z^3"], "x"), (&["x^2", "y^2", "z^2"], "x + y + z")];
    for (gens, f) in cases {
        let f = p(f, &c);
        let i = ideal(&c, gens, OrderingSpec::DegRevLex);
        let local = i.local_quotient(&f, &lim()).unwrap();
        let global = i.quotient(&f, &lim()).unwrap();
        assert_eq!(Dimension::Finite(local.colength()), global.quotient_dim(&lim()).unwrap(), "{gens:?}");
    }
}

#[test]
fn resource_limits_are_errors() {
    let c = ctx(&["x", "y", "z"]);
    let tight = Limits { max_pairs: 2, ..Limits::default() };
    let i = ideal(&c, &["x^2 - y", "x*y - z", "y^2 - x*z", "z^2 - x"], OrderingSpec::Lex);
    let e = i.groebner_basis(&tight).unwrap_err();
    assert!(e.is_resource_limit());
}
