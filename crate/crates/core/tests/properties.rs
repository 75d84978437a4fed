use num_traits::{One, Zero};
use proptest::prelude::*;

use ellsurf::exactmath::{gcd_free_basis, int, parse_poly, rat, valuation, Place, Poly, Rational, Valuation};
use ellsurf::invariants::{
    check_numerical_gluing, marked_volume, multisection_self_intersection, noether_check, sigma_volume,
    wall_positions, GluingType, IntersectionProfile,
};
use ellsurf::lct::{
    builtin_graph, discrepancy_vector, lct, parse_graph, pullback, GraphBuilder, KawamataFiberType,
};
use ellsurf::quotsing::{chain_discrepancies, hj_expansion, is_t_singularity, normalize, CyclicQuotient, TWitness};
use ellsurf::stability::{git_classify, stratum, StabilityClass, StratumPoint};
use ellsurf::weierstrass::{euler_sum, KodairaType, WeierstrassModel};

fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-4i64..=4, 1i64..=3), 0..=max_degree + 1)
        .prop_map(|c| Poly::from_coeffs(c.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

fn nonzero_poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    poly(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

/// Products of small linear and quadratic factors, to hit repeated roots.
fn factored_poly(max_factors: usize) -> impl Strategy<Value = Poly> {
    (1i64..=3, prop::collection::vec(0usize..5, 0..=max_factors)).prop_map(|(c, fs)| {
        let factors = ["t", "t-1", "t+1", "t^2+1", "t-2"];
        fs.into_iter().fold(Poly::constant(int(c)), |acc, i| &acc * &parse_poly(factors[i]).unwrap())
    })
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![
        (-3i64..=3).prop_map(|c| Place::Finite(Poly::linear(int(c)))),
        Just(Place::Finite(parse_poly("t^2+1").unwrap())),
        Just(Place::Finite(parse_poly("t^2-2").unwrap())),
        Just(Place::Infinity),
    ]
}

fn level_one_model() -> impl Strategy<Value = WeierstrassModel> {
    (prop_oneof![poly(4), factored_poly(4)], prop_oneof![poly(6), factored_poly(6)])
        .prop_filter_map("degree bounds and nonzero discriminant", |(a, b)| WeierstrassModel::new(a, b, 1).ok())
}

fn minimal_model() -> impl Strategy<Value = WeierstrassModel> {
    level_one_model().prop_filter("minimal", |m| m.fiber_survey().is_ok())
}

fn kodaira() -> impl Strategy<Value = KodairaType> {
    use KodairaType::*;
    prop_oneof![
        (0u32..=9).prop_map(I),
        Just(II),
        Just(III),
        Just(IV),
        (0u32..=4).prop_map(IStar),
        Just(IVStar),
        Just(IIIStar),
        Just(IIStar),
    ]
}

fn coprime_pair(max: u64) -> impl Strategy<Value = (u64, u64)> {
    (2..=max).prop_flat_map(|n| (Just(n), 1..n)).prop_filter("coprime", |&(n, q)| num_integer::gcd(n, q) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn valuation_is_additive(f in nonzero_poly(4), g in nonzero_poly(4), v in place()) {
        let level = 8;
        let fg = &f * &g;
        let vf = valuation(&f, &v, level / 2).unwrap();
        let vg = valuation(&g, &v, level / 2).unwrap();
        prop_assert_eq!(valuation(&fg, &v, level).unwrap(), vf + vg);
        let sum = &f + &g;
        let vs = valuation(&sum, &v, level / 2).unwrap();
        prop_assert!(vs >= vf.min(vg));
    }

    #[test]
    fn gcd_free_basis_factors_inputs(fs in prop::collection::vec(factored_poly(5), 1..4)) {
        let fs: Vec<Poly> = fs.into_iter().filter(|f| !f.is_constant()).collect();
        let basis = gcd_free_basis(&fs);
        for (i, p) in basis.iter().enumerate() {
            prop_assert!(p.is_monic() && !p.is_constant());
            for q in &basis[i + 1..] {
                prop_assert!(p.gcd(q).is_constant());
            }
        }
        for f in &fs {
            let mut rest = f.clone();
            for p in &basis {
                while let Some(q) = rest.exact_div(p) {
                    rest = q;
                }
            }
            prop_assert!(rest.is_constant(), "{} leaves {}", f, rest);
        }
    }

    #[test]
    fn parse_print_round_trip(f in poly(7)) {
        let text = f.to_string();
        let g = parse_poly(&text).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(g.to_string(), text);
    }

    #[test]
    fn classification_ignores_order(mut fibers in prop::collection::vec(kodaira(), 1..8), seed: u64) {
        let before = git_classify(&fibers);
        let n = fibers.len();
        fibers.rotate_left((seed as usize) % n);
        fibers.swap(0, (seed as usize / 7) % n);
        prop_assert_eq!(git_classify(&fibers), before);
    }

    #[test]
    fn closed_orbit_broken_by_any_i_k(k in 1u32..=12) {
        use KodairaType::*;
        prop_assert_eq!(git_classify(&[IStar(0), IStar(0)]), Ok(StabilityClass::StrictlySemistableClosedOrbit));
        prop_assert_eq!(git_classify(&[IStar(0), I(k), IStar(0)]), Ok(StabilityClass::StrictlySemistable));
    }

    #[test]
    fn weight_swap_reverses_chain((n, q) in coprime_pair(400)) {
        let s = CyclicQuotient::new(n, q).unwrap();
        let mut rev = hj_expansion(&s.swapped()).entries().to_vec();
        rev.reverse();
        prop_assert_eq!(hj_expansion(&s).entries().to_vec(), rev);
    }

    #[test]
    fn lct_scales_inversely(idx in 0usize..7, num in 2i64..=9, den in 1i64..=3) {
        let lambda = rat(num, den) + Rational::one();
        let g = builtin_graph(KawamataFiberType::lct_bearing()[idx]).unwrap().graph;
        let mults = g.strict_mults();
        let scaled: Vec<Rational> = mults.iter().map(|m| m * &lambda).collect();
        prop_assert_eq!(lct(&g, &scaled).unwrap(), lct(&g, &mults).unwrap() / &lambda);
    }

    #[test]
    fn generated_cycles_solve_exactly(m in 1u64..=3, d in 1u64..=4, (r, a) in coprime_pair(9)) {
        let t = KawamataFiberType::multiple_i(m, d, r, a).unwrap();
        let b = builtin_graph(t).unwrap();
        let g = &b.graph;
        let disc = discrepancy_vector(g);
        let pull = pullback(g, &g.strict_mults()).unwrap();
        let mat = g.intersection_matrix();
        let f = g.strict_intersections(&g.strict_mults());
        for i in 0..mat.len() {
            let row = |x: &[Rational]| -> Rational { mat[i].iter().zip(x).map(|(&m, v)| int(m) * v).sum() };
            prop_assert_eq!(row(&disc), int(-2 - g.vertices()[i].self_int));
            prop_assert_eq!(row(&pull) + &f[i], Rational::zero());
        }
        for c in &b.chains {
            let sub: Vec<Rational> = c.vertices.iter().map(|&i| disc[i].clone()).collect();
            prop_assert_eq!(sub, chain_discrepancies(&hj_expansion(&c.singularity)));
        }
        let l = lct(g, &g.strict_mults()).unwrap();
        prop_assert!(l > Rational::zero() && l <= Rational::one());
    }

    #[test]
    fn relabelling_permutes_solutions(chain in prop::collection::vec(2u64..=6, 1..6), shift in 0usize..6, mult in 1i64..=4) {
        let n = chain.len();
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let build = |order: &[usize]| {
            let mut b = GraphBuilder::new();
            for &i in order {
                b = b.vertex(&format!("E{i}"), -(chain[i] as i64));
            }
            for i in 1..n {
                b = b.edge(&format!("E{}", i - 1), &format!("E{i}"));
            }
            b.strict("F", int(mult), &["E0"]).build().unwrap()
        };
        let g = build(&(0..n).collect::<Vec<_>>());
        let h = build(&perm);
        let (dg, dh) = (discrepancy_vector(&g), discrepancy_vector(&h));
        let (pg, ph) = (pullback(&g, &[int(mult)]).unwrap(), pullback(&h, &[int(mult)]).unwrap());
        for (k, &i) in perm.iter().enumerate() {
            prop_assert_eq!(&dh[k], &dg[i]);
            prop_assert_eq!(&ph[k], &pg[i]);
        }
        prop_assert_eq!(lct(&g, &[int(mult)]), lct(&h, &[int(mult)]));
        prop_assert_eq!(parse_graph(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn marked_volume_is_bilinear(a in -20i64..20, b in -20i64..20, f in -5i64..5, den in 1i64..5) {
        let prof = IntersectionProfile { abar_sq: rat(a, den), abar_dot_fm: rat(b, den), fm_sq: rat(f, den) };
        // (Abar + 2F)^2 by expanding the Gram matrix.
        let gram = [[prof.abar_sq.clone(), prof.abar_dot_fm.clone()], [prof.abar_dot_fm.clone(), prof.fm_sq.clone()]];
        let v = [int(1), int(2)];
        let mut expected = Rational::zero();
        for i in 0..2 {
            for j in 0..2 {
                expected += &v[i] * &gram[i][j] * &v[j];
            }
        }
        prop_assert_eq!(marked_volume(&prof), expected);
    }

    #[test]
    fn sigma_volume_matches_intersection_numbers((p, q) in coprime_pair(12).prop_filter("p > 1", |&(_, q)| q > 1), c_num in 1i64..=6, c_den in 6i64..=12) {
        let c = rat(c_num, c_den);
        let s = sigma_volume(p, q, &c).unwrap();
        prop_assert!(s.eval(&Rational::zero()).is_zero());
        prop_assert_eq!(s.coeff(2), int(multisection_self_intersection(p, q)));
        // K.A = (1 - 1/p - 1/q) pq from the canonical bundle formula, B.A = c(p + q).
        let (pr, qr) = (int(p as i64), int(q as i64));
        let k_a = (Rational::one() - pr.recip() - qr.recip()) * &pr * &qr;
        prop_assert_eq!(s.coeff(1), int(2) * (k_a + &c * (&pr + &qr)));
    }

    #[test]
    fn noether_identity(k_sq in -1000i64..1000, chi in -100i64..100) {
        prop_assert!(noether_check(k_sq, chi, 12 * chi - k_sq));
        prop_assert!(!noether_check(k_sq, chi, 12 * chi - k_sq + 1));
    }
}

proptest! {
    // Fiber surveys are the expensive part; fewer cases.
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn euler_budget_and_discriminant_degree(m in minimal_model()) {
        let survey = m.fiber_survey().unwrap();
        prop_assert_eq!(euler_sum(&survey), 12);
        let d = m.discriminant();
        let at_infinity = valuation(&d, &Place::Infinity, 12).unwrap().order().unwrap();
        prop_assert_eq!(d.degree().unwrap() as u32 + at_infinity, 12);
        for r in &survey {
            prop_assert_eq!(Valuation::Order(r.euler), r.v_delta);
        }
    }

    #[test]
    fn minimalize_is_idempotent(m in level_one_model()) {
        let once = m.minimalize();
        prop_assert_eq!(once.minimalize(), once.clone());
        prop_assert!(once.fiber_survey().is_ok());
    }

    #[test]
    fn fiber_types_survive_rescaling(m in minimal_model(), num in 1i64..=9, den in 1i64..=9, neg: bool) {
        let lambda = rat(if neg { -num } else { num }, den);
        let scaled = WeierstrassModel::new(m.a().scale(&lambda.pow(4)), m.b().scale(&lambda.pow(6)), 1).unwrap();
        let types = |x: &WeierstrassModel| {
            x.fiber_survey().unwrap().into_iter().map(|r| (r.place, r.kodaira)).collect::<Vec<_>>()
        };
        prop_assert_eq!(types(&scaled), types(&m));
    }

    #[test]
    fn stratum_agrees_with_classification(m in minimal_model()) {
        let types: Vec<KodairaType> = m
            .fiber_survey()
            .unwrap()
            .into_iter()
            .flat_map(|r| std::iter::repeat_n(r.kodaira, r.place_degree))
            .collect();
        let stable = !types.is_empty() && git_classify(&types) == Ok(StabilityClass::Stable);
        prop_assert_eq!(matches!(stratum(&m), Ok(StratumPoint::InteriorStable)), stable);
    }
}

#[test]
fn hj_round_trip_up_to_200() {
    for n in 2..=200u64 {
        for q in (1..n).filter(|&q| num_integer::gcd(n, q) == 1) {
            let chain = hj_expansion(&CyclicQuotient::new(n, q).unwrap());
            assert_eq!(chain.value(), rat(n as i64, q as i64), "1/{n}(1,{q})");
            let disc = chain_discrepancies(&chain);
            assert!(disc.iter().all(|b| b > &int(-1)), "1/{n}(1,{q})");
            let crepant = chain.entries().iter().all(|&e| e == 2);
            assert_eq!(disc.iter().all(Zero::is_zero), crepant, "1/{n}(1,{q})");
        }
    }
}

#[test]
fn wahl_family_is_class_t() {
    for r in 2..=30i64 {
        for a in (1..r).filter(|&a| num_integer::gcd(a, r) == 1) {
            let s = normalize(r * r, a, r - a).unwrap();
            assert!(is_t_singularity(&s).is_some(), "{s}");
        }
    }
}

#[test]
fn quarter_point_is_class_t() {
    let s = CyclicQuotient::new(4, 1).unwrap();
    assert_eq!(is_t_singularity(&s), Some(TWitness::Wahl { d: 1, n0: 2, a: 1, swapped: false }));
}

#[test]
fn separating_basis_of_model_data() {
    // Delta = 27 t^5 (4 (1+t)^3 + t^5) while A(0) B(0) != 0.
    let h = parse_poly("1+t").unwrap();
    let a = h.pow(2).scale(&int(-3));
    let b = &h.pow(3).scale(&int(2)) + &Poly::monomial(int(1), 5);
    let m = WeierstrassModel::new(a.clone(), b.clone(), 1).unwrap();
    let d = m.discriminant();
    let t = Poly::t();
    assert_eq!(valuation(&d, &Place::Finite(t.clone()), 12).unwrap(), Valuation::Order(5));
    let basis = gcd_free_basis(&[d.clone(), a, b]);
    assert!(basis.contains(&t));
    let survey = m.fiber_survey().unwrap();
    let at_t = survey.iter().find(|r| r.place == Place::Finite(t.clone())).unwrap();
    assert_eq!(at_t.kodaira, KodairaType::I(5));
    for p in basis.iter().filter(|&p| p != &t) {
        assert_eq!(p.gcd(&t), Poly::one());
    }
}

#[test]
fn gluing_degree_is_four_for_every_type() {
    for t in GluingType::ALL {
        assert_eq!(check_numerical_gluing(t).t1_degree, int(4), "{t}");
    }
}

#[test]
fn walls_are_builtin_thresholds() {
    for t in KawamataFiberType::lct_bearing() {
        let g = builtin_graph(t).unwrap().graph;
        assert_eq!(wall_positions(&[t]).unwrap(), vec![lct(&g, &g.strict_mults()).unwrap()]);
    }
    let all = wall_positions(&KawamataFiberType::lct_bearing()).unwrap();
    assert!(all.windows(2).all(|w| w[0] < w[1]));
}
