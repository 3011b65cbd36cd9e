//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them). The long
//! classification runs live in `odometer_runs.rs`; the multi-hour one is
//! `#[ignore]`d there.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use subfactor_core::atlas;
use subfactor_core::bigraph::{
    annular_multiplicities, binomial, canonical_key, loop_counts, relabel_pair, Bigraph,
    BigraphPair, WalkCounts,
};
use subfactor_core::obstructions::{
    ocneanu_triple_point, run_suite, suite_passes, SuiteOptions, TestKind,
};
use subfactor_core::odometer::{vine_elimination, TranslateVerdict, VineOptions};
use subfactor_core::poly::{
    dnumber_test, factor_over_integers, minimal_poly_of_norm_squared, AlgebraicReal, IntPoly,
    NumberField,
};
use subfactor_core::spectral::{graph_norm_exact, norm_bounds};
use subfactor_core::tl::{
    jones_wenzl, jones_wenzl_sym, markov_trace, multiply, quantum_int, TLDiagram, TLElement,
};

const E10: &str = "bwd1v1v1v1v1v1v1p1v1x0duals1v1v1v1v1";

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "ACCEPTANCE {}: {} — {}",
        criterion,
        if ok { "PASS" } else { "FAIL" },
        detail
    );
    assert!(ok, "criterion {} failed: {}", criterion, detail);
}

#[test]
fn criterion_1_index_table() {
    let t0 = std::time::Instant::now();
    // exact values: (5+sqrt13)/2, the extended cubic root, (5+sqrt17)/2,
    // 3+sqrt3, (5+sqrt21)/2; printed decimals are their 5-place roundings
    let exact = [
        ("haagerup", (5.0 + 13f64.sqrt()) / 2.0, "4.30278"),
        ("extended-haagerup", 4.377028547387075f64.max(4.37720285), "4.37720"),
        ("asaeda-haagerup", (5.0 + 17f64.sqrt()) / 2.0, "4.56155"),
        ("3311-goodman-de-la-harpe-jones", 3.0 + 3f64.sqrt(), "4.73205"),
        ("2221-izumi", (5.0 + 21f64.sqrt()) / 2.0, "4.79129"),
    ];
    for (name, value, dec) in exact {
        let e = atlas::main_entries()
            .into_iter()
            .find(|e| e.name == name)
            .unwrap();
        // the cubic root has no closed surd form; take it from the pinned
        // minimal polynomial instead of a hardcoded float
        let value = if name == "extended-haagerup" {
            let iv = subfactor_core::poly::sturm::isolate_largest_root(
                &e.minpoly(),
                &BigRational::new(BigInt::one(), BigInt::from(10u64.pow(10))),
            );
            subfactor_core::poly::intpoly::rational_to_f64(&iv.midpoint())
        } else {
            value
        };
        let p = e.parse_pair();
        for g in [&p.gamma, &p.gamma_prime] {
            let theta = AlgebraicReal::new_norm_squared(g);
            assert!(
                (theta.to_f64() - value).abs() < 1e-6,
                "{}: certified {} vs exact {}",
                name,
                theta.to_f64(),
                value
            );
            assert_eq!(theta.minpoly(), &e.minpoly(), "{}: minimal polynomial", name);
            assert_eq!(format!("{:.5}", theta.to_f64()), dec, "{}: printed decimal", name);
        }
    }
    let dt = t0.elapsed();
    report(
        "1 (index table)",
        dt.as_secs_f64() < 1.0,
        &format!("five indices certified to 1e-6 in {:?}", dt),
    );
}

#[test]
fn criterion_2_e10_landmark() {
    let t0 = std::time::Instant::now();
    let g = Bigraph::parse_bwd(E10).unwrap();
    let quintic = IntPoly::from_i64(&[-1, 12, -31, 27, -9, 1]);
    // norm^2 satisfies the quintic exactly
    let mp = minimal_poly_of_norm_squared(&g).unwrap();
    assert_eq!(mp, quintic);
    // and the quintic divides the even-block characteristic polynomial
    let even = subfactor_core::poly::char_poly_int(&g.squared_adjacency_even_block());
    assert!(IntPoly::divides(&quintic, &even));
    // numerics
    let enc = graph_norm_exact(&g, &BigRational::new(BigInt::one(), BigInt::from(10u64.pow(10))));
    let n2 = enc.to_f64().powi(2);
    assert!((n2 - 4.02642).abs() < 1e-4, "norm^2 = {}", n2);
    let dt = t0.elapsed();
    report(
        "2 (E10 landmark)",
        dt.as_secs_f64() < 1.0,
        &format!("norm^2 root of the quintic, {:.5} in {:?}", n2, dt),
    );
}

#[test]
fn criterion_5_haagerup_vine_elimination() {
    let t0 = std::time::Instant::now();
    let v = BigraphPair::parse_pair(atlas::HAAGERUP).unwrap();
    let report_v = vine_elimination(&v, 55, None, VineOptions::default());
    let mut survivors = Vec::new();
    for r in &report_v.records {
        match &r.verdict {
            TranslateVerdict::Survives { .. } => survivors.push(r.supertransitivity),
            TranslateVerdict::Eliminated { method, data } => {
                if method == "nonabelian-certificate" {
                    // replay the certificate independently
                    let cert: subfactor_core::poly::NonAbelianCertificate =
                        serde_json::from_value(data.clone()).unwrap();
                    let mp = IntPoly::from_coeff_string(r.minpoly.as_ref().unwrap()).unwrap();
                    let disc = mp.discriminant();
                    assert!(
                        !(disc % BigInt::from(cert.prime)).eq(&BigInt::from(0)),
                        "certificate prime divides the discriminant"
                    );
                    let fp = subfactor_core::poly::modp::PolyP::from_bigint_poly(
                        cert.prime,
                        mp.coeffs(),
                    );
                    let degs = subfactor_core::poly::modp::factor_degrees_mod_p(&fp);
                    assert_eq!(degs, cert.factor_degrees, "replayed factor degrees differ");
                    let first = degs[0];
                    assert!(degs.iter().any(|&d| d != first), "degrees not mixed");
                } else {
                    panic!("unexpected elimination method {} at st {}", method, r.supertransitivity);
                }
            }
            TranslateVerdict::Inconclusive { reason } => {
                panic!("inconclusive at st {}: {}", r.supertransitivity, reason)
            }
        }
    }
    survivors.sort_unstable();
    let dt = t0.elapsed();
    report(
        "5 (vine elimination)",
        survivors == vec![3, 7] && dt.as_secs_f64() < 300.0,
        &format!("survivors {:?} with replayable certificates in {:?}", survivors, dt),
    );
}

#[test]
fn criterion_6_suite_soundness_on_corpus() {
    let t0 = std::time::Instant::now();
    for e in atlas::all_entries() {
        let p = e.parse_pair();
        let verdicts = run_suite(
            &p,
            &TestKind::ALL,
            SuiteOptions { exhaustive: true, ..Default::default() },
        );
        assert!(
            suite_passes(&verdicts),
            "{} failed the suite: {:?}",
            e.name,
            verdicts.iter().filter(|v| v.failed()).collect::<Vec<_>>()
        );
    }
    // both displayed forbidden beginnings must fail
    let p1 = "bwd1v1p1v1x0p1x0duals1v1x2";
    let p2 = "bwd1v1p1v1x0p0x1duals1v1x2";
    for s in [p1, p2] {
        let pair = BigraphPair::parse_pair(&format!("{},{}", s, s)).unwrap();
        assert!(ocneanu_triple_point(&pair).failed(), "{} should fail", s);
    }
    let dt = t0.elapsed();
    report(
        "6 (suite soundness)",
        dt.as_secs_f64() < 10.0,
        &format!("12 corpus pairs pass, both forbidden patterns fail, in {:?}", dt),
    );
}

#[test]
fn criterion_7_temperley_lieb() {
    let t0 = std::time::Instant::now();
    // displayed coefficients of f(2) and f(3)
    let f2 = jones_wenzl(2);
    assert_eq!(
        f2.coeff(&TLDiagram::e(2, 1)).unwrap(),
        &subfactor_core::tl::RatFunc::new(IntPoly::from_i64(&[-1]), quantum_int(2))
    );
    let f3 = jones_wenzl(3);
    let e1 = TLDiagram::e(3, 1);
    let e2 = TLDiagram::e(3, 2);
    let hump = subfactor_core::tl::RatFunc::new(quantum_int(2).neg(), quantum_int(3));
    let twohump = subfactor_core::tl::RatFunc::new(IntPoly::one(), quantum_int(3));
    assert_eq!(f3.coeff(&e1).unwrap(), &hump);
    assert_eq!(f3.coeff(&e2).unwrap(), &hump);
    assert_eq!(f3.coeff(&e1.stack(&e2).0).unwrap(), &twohump);
    assert_eq!(f3.coeff(&e2.stack(&e1).0).unwrap(), &twohump);

    // symbolic idempotency, annihilation and trace for n <= 8, over cleared
    // denominators: f f = f iff N N = D N
    let delta = IntPoly::x();
    for n in 1..=8usize {
        let sym = jones_wenzl_sym(n);
        let nel = sym.numerator_element();
        let sq = multiply(&nel, &nel, &delta).unwrap();
        assert_eq!(sq, nel.scale(&sym.den), "f({}) not idempotent", n);
        for i in 1..n {
            let ei = TLElement::from_diagram(TLDiagram::e(n, i), IntPoly::one());
            assert!(multiply(&ei, &nel, &delta).unwrap().is_zero());
            assert!(multiply(&nel, &ei, &delta).unwrap().is_zero());
        }
        assert_eq!(markov_trace(&nel, &delta), quantum_int(n + 1).mul(&sym.den));
    }

    // quantization witness: tr f(4) = [5] vanishes exactly at 2cos(pi/5)
    let golden = AlgebraicReal::from_surd(1, 1, 5, 2);
    let field = NumberField::new(golden);
    let f4 = jones_wenzl_sym(4).eval_at(&field.gen()).unwrap();
    let tr = markov_trace(&f4, &field.gen());
    assert!(tr.is_zero(), "tr f(4) at 2cos(pi/5) = {:?}", tr.to_f64());
    let dt = t0.elapsed();
    report(
        "7 (Temperley-Lieb)",
        dt.as_secs_f64() < 30.0,
        &format!("f2/f3 coefficients, n<=8 idempotents, vanishing trace, in {:?}", dt),
    );
}

#[test]
fn criterion_8_annular_multiplicities() {
    let t0 = std::time::Instant::now();
    for e in atlas::all_entries() {
        let p = e.parse_pair();
        let nmax = p.gamma.max_depth().min(p.gamma_prime.max_depth());
        let a = annular_multiplicities(&loop_counts(&p.gamma, nmax));
        let b = annular_multiplicities(&loop_counts(&p.gamma_prime, nmax));
        assert_eq!(a, b, "{}: sequences differ", e.name);
        assert!(a.iter().all(|x| x >= &BigInt::from(0)), "{}: negative", e.name);
        let st = p.supertransitivity();
        for n in 1..=st.min(nmax) {
            assert_eq!(a[n], BigInt::from(0), "{}: a_{} nonzero below supertransitivity", e.name, n);
        }
    }
    // Catalan counts mean no annular modules above weight zero
    let cat: Vec<BigInt> = (0..=10u64)
        .map(|n| binomial(2 * n, n) / BigInt::from(n + 1))
        .collect();
    let a = annular_multiplicities(&WalkCounts { omega: cat });
    for n in 1..=10 {
        assert_eq!(a[n], BigInt::from(0), "Catalan a_{}", n);
    }
    let dt = t0.elapsed();
    report(
        "8 (annular multiplicities)",
        dt.as_secs_f64() < 5.0,
        &format!("corpus sequences agree/nonnegative/vanish, Catalan identity, in {:?}", dt),
    );
}

#[test]
fn criterion_9_property_suites() {
    let t0 = std::time::Instant::now();
    let mut state = 0xabcdef12u64;
    let mut rng = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };

    // canonical-form invariance, >= 100 random relabelings per corpus pair
    for e in atlas::all_entries() {
        let p = e.parse_pair();
        let key = canonical_key(&p);
        for _ in 0..100 {
            let perms_g: Vec<Vec<usize>> = (0..=p.gamma.max_depth())
                .map(|d| random_perm(p.gamma.width(d), &mut rng))
                .collect();
            let perms_gp: Vec<Vec<usize>> = (0..=p.gamma_prime.max_depth())
                .map(|d| random_perm(p.gamma_prime.width(d), &mut rng))
                .collect();
            let r = relabel_pair(&p, &perms_g, &perms_gp);
            assert_eq!(canonical_key(&r), key, "{}", e.name);
        }
    }

    // Sturm vs power-iteration enclosures agree on every corpus graph
    for e in atlas::all_entries() {
        let p = e.parse_pair();
        for g in [&p.gamma, &p.gamma_prime] {
            let cw = norm_bounds(g, 60);
            let exact =
                graph_norm_exact(g, &BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12))));
            assert!(cw.lo <= exact.hi && exact.lo <= cw.hi);
            let gap = cw.midpoint() - exact.midpoint();
            let gap = if gap < BigRational::from(BigInt::from(0)) { -gap } else { gap };
            assert!(gap <= cw.width() + exact.width());
        }
    }

    // factorization reconstructs 500 random products
    for _ in 0..500 {
        let nfactors = 1 + (rng() % 3) as usize;
        let mut prod = IntPoly::from_i64(&[1]);
        for _ in 0..nfactors {
            let deg = 1 + (rng() % 4) as usize;
            let mut coeffs: Vec<i64> = (0..=deg).map(|_| (rng() % 11) as i64 - 5).collect();
            if coeffs[deg] == 0 {
                coeffs[deg] = 1;
            }
            prod = prod.mul(&IntPoly::from_i64(&coeffs));
        }
        if prod.degree() > 12 || prod.is_zero() {
            continue;
        }
        let fac = factor_over_integers(&prod).unwrap();
        assert_eq!(fac.expand(), prod, "reconstruction failed for {}", prod);
    }

    // d-number criterion against the quadratic Galois-stability oracle:
    // for x^2 + bx + c the ideal (root) is stable iff the ratio of the two
    // roots is an algebraic integer, which happens iff c divides b^2
    for b in -20i64..=20 {
        for c in -20i64..=20 {
            let p = IntPoly::from_i64(&[c, b, 1]);
            let oracle = if c == 0 { true } else { (b * b) % c == 0 };
            assert_eq!(dnumber_test(&p), oracle, "b={} c={}", b, c);
        }
    }

    let dt = t0.elapsed();
    report(
        "9 (property suites)",
        dt.as_secs_f64() < 300.0,
        &format!(
            "canonical invariance, enclosure agreement, factorization, d-number oracle in {:?} \
             (gauge invariance covered in connections unit tests)",
            dt
        ),
    );
}

#[test]
fn criterion_10_long_runs_documented_opt_in() {
    // The full index-5 sweep is not part of any default run: budgets gate it
    // and the bespoke eliminations of the five hand-treated weeds are out of
    // scope. This test pins the gating behavior.
    use subfactor_core::odometer::{run, ClassificationStatement, GenerationCaps, OdometerBudget, RunStatus};
    let root = BigraphPair::parse_pair("bwd1duals1,bwd1duals1").unwrap();
    let s = ClassificationStatement::trivial(root, "5").unwrap();
    let result = run(
        s,
        OdometerBudget { max_steps: 2, max_weeds: 100, max_depth: 4 },
        GenerationCaps::default(),
    )
    .unwrap();
    report(
        "10 (long runs opt-in)",
        result.status == RunStatus::BudgetExhausted,
        "index-5 run stops at its budget and reports exhaustion distinctly",
    );
}

fn random_perm(n: usize, rng: &mut impl FnMut() -> u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng() % (i as u64 + 1)) as usize;
        p.swap(i, j);
    }
    p
}
