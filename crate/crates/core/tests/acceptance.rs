//! Acceptance checks. Each test prints one `PASS` or `FAIL` line.
//!
//! Criterion 6 asks for the Fermat quintic at p = 5, where the curve is
//! singular and refused; that half prints FAIL without failing the test.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use tightcurve::cohomology::{cech_class_vanishes, h0_line, h1_line, quotient_class_image, ForcingClass};
use tightcurve::criteria::{
    exclusion_bound_no_syzygy, hm_ampleness_rule, inclusion_bound_no_syzygy, semistability_certificate, verify_certificate,
    Caveat, DegreeKind, DegreeRange, Engine, EngineConfig, Extension, Semistability, Status, Witness,
};
use tightcurve::curvering::{ideal_graded_piece, ideal_membership, make_curve, CurveRing, IdealGens};
use tightcurve::exactfield::{ratio, FieldSpec};
use tightcurve::frobenius::{frobenius_closure_lower_bound, frobenius_pullback_problem, scan, FrobeniusBound, ScanGrid};
use tightcurve::parse::{parse_poly, parse_poly_list};
use tightcurve::polyspace::{monomial_basis, HomPoly, Monomial};
use tightcurve::syzygy::{is_primary_syzygy, koszul_basis, minimal_syzygy_degree, syzygy_dim, syzygy_space, SyzygyVec};

type Check = Result<(), String>;

fn report(n: u32, title: &str, r: &Check) -> bool {
    match r {
        Ok(()) => println!("PASS [{n}] {title}"),
        Err(e) => println!("FAIL [{n}] {title}: {e}"),
    }
    r.is_ok()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

fn ring(curve: &str, p: u64) -> Result<CurveRing, String> {
    let f = field(p);
    make_curve(&parse_poly(curve, f).map_err(|e| e.to_string())?, f).map_err(|e| e.to_string())
}

fn ideal(r: &CurveRing, gens: &str) -> IdealGens {
    IdealGens::new(r, parse_poly_list(gens, r.field()).unwrap()).unwrap()
}

fn poly(r: &CurveRing, s: &str) -> HomPoly {
    parse_poly(s, r.field()).unwrap()
}

fn engine(g: &IdealGens) -> Engine {
    Engine::new(g, EngineConfig { seed: 2024, ..EngineConfig::default() }).unwrap()
}

fn fixed_runner(seed: u8) -> TestRunner {
    let cfg = Config { cases: 200, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(cfg, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

#[test]
fn criterion_1_fermat_cubic_xyz() {
    let check = || -> Check {
        for p in [0, 5, 7, 11, 13] {
            let r = ring("x^3+y^3+z^3", p)?;
            let g = ideal(&r, "x^2,y^2,z^2");
            let xyz = poly(&r, "x*y*z");
            ensure(!ideal_membership(&g, &xyz).unwrap().member, || format!("p = {p}: xyz in the ideal"))?;
            let v = engine(&g).decide(&xyz).unwrap();
            ensure(v.status == Status::InClosure && v.definite, || format!("p = {p}: got {} [{}]", v.status, v.caveat))?;
            ensure(v.cert.rule == "primary-syzygy/strongly-semistable", || format!("p = {p}: rule {}", v.cert.rule))?;
            let syz = v.cert.witnesses.iter().any(|w| {
                matches!(w, Witness::Syzygy { entries, degree: 3, primary: true, .. } if entries.iter().map(|e| e.to_string()).collect::<Vec<_>>() == ["x", "y", "z"])
            });
            ensure(syz, || format!("p = {p}: witness is not (x, y, z) at degree 3"))?;
            ensure(verify_certificate(&r, &v.cert).unwrap(), || format!("p = {p}: certificate does not verify"))?;
        }
        Ok(())
    };
    assert!(report(1, "xyz over (x^2,y^2,z^2) on the Fermat cubic", &check()));
}

#[test]
fn criterion_2_quartic_tenth_powers() {
    let check = || -> Check {
        // generators reordered to (x^10, y^10, z^10)
        let g_text = "-2*y^6-y^2*z^4,2*x^2*y^4-3*x^2*z^4,x^2*y^2*z^2";
        for p in [0, 5] {
            let r = ring("x^4+y^4-z^4", p)?;
            let g = ideal(&r, "x^10,y^10,z^10");
            let s = SyzygyVec::new(&g, parse_poly_list(g_text, r.field()).unwrap()).map_err(|e| format!("p = {p}: {e}"))?;
            ensure(s.total_degree == 16 && s.verify(&g).unwrap(), || format!("p = {p}: relation fails"))?;
            ensure(is_primary_syzygy(&s, &r).unwrap(), || format!("p = {p}: not primary"))?;
            let rep = engine(&g).degree_profile(0, 30).unwrap();
            for row in &rep.rows {
                if row.m <= 13 {
                    ensure(row.kind == DegreeKind::IffIdeal, || format!("p = {p}, m = {}: {}", row.m, row.kind.name()))?;
                }
                if row.m >= 16 {
                    ensure(row.kind == DegreeKind::AllIn && row.definite, || format!("p = {p}, m = {}: {}", row.m, row.kind.name()))?;
                }
            }
        }
        let r3 = ring("x^4+y^4-z^4", 3)?;
        let g3 = ideal(&r3, "x^10,y^10,z^10");
        let s3 = SyzygyVec::new(&g3, parse_poly_list(g_text, r3.field()).unwrap()).map_err(|e| format!("p = 3: {e}"))?;
        ensure(s3.verify(&g3).unwrap() && !is_primary_syzygy(&s3, &r3).unwrap(), || "p = 3: expected a non-primary syzygy".into())?;
        Ok(())
    };
    assert!(report(2, "(x^10,y^10,z^10) on x^4+y^4-z^4", &check()));
}

#[test]
fn criterion_3_hundredth_powers() {
    let check = || -> Check {
        let r5 = ring("x^4+y^4+z^4", 5)?;
        let g5 = ideal(&r5, "x^100,y^100,z^100");
        let k0 = minimal_syzygy_degree(&g5, Some(300));
        ensure(k0 == Some(100), || format!("F_5: minimal syzygy degree {k0:?}"))?;
        let two = ideal(&r5, "x^100,y^100");
        ensure(ideal_membership(&two, &poly(&r5, "z^100")).unwrap().member, || "F_5: z^100 not in (x^100, y^100)".into())?;

        let r37 = ring("x^4+y^4+z^4", 37)?;
        let g37 = ideal(&r37, "x^100,y^100,z^100");
        let dim = syzygy_space(&g37, 148).dim();
        ensure(dim >= 1, || "F_37: no syzygy at 148".into())?;
        let w = SyzygyVec::new(&g37, parse_poly_list("x^48,y^48,z^48", r37.field()).unwrap()).map_err(|e| e.to_string())?;
        ensure(w.verify(&g37).unwrap(), || "F_37: (x^48, y^48, z^48) is not a syzygy".into())?;
        let rs = tightcurve::criteria::RuleSet::new(&g37, 1, 8).unwrap();
        let (sem, cert) = semistability_certificate(&rs);
        ensure(sem == Semistability::Decomposable, || format!("F_37: {}", sem.name()))?;
        let ineq = cert.witnesses.iter().any(|w| {
            matches!(w, Witness::Inequality { lhs, rhs, .. } if *lhs == ratio(148, 1) && *rhs == ratio(299, 2))
        });
        ensure(ineq, || "F_37: expected the inequality 148 < 150 - 1/2".into())?;
        ensure(verify_certificate(&r37, &cert).unwrap(), || "F_37: certificate does not verify".into())?;
        Ok(())
    };
    assert!(report(3, "(x^100,y^100,z^100) on the Fermat quartic over F_5 and F_37", &check()));
}

#[test]
fn criterion_4_quintic_without_degree_seven_syzygies() {
    let check = || -> Check {
        let r = ring("x^5+y^5+z^5+x^3*y*z+x*y^3*z+x*y*z^3", 0)?;
        let g = ideal(&r, "x^4,y^4,z^4");
        ensure(syzygy_dim(&g, 7) == 0, || "Syz_7 is not zero".into())?;
        let e = engine(&g);
        ensure(e.semistability().0 == Semistability::Semistable, || format!("{}", e.semistability().0.name()))?;
        ensure(e.semistability().1.rule == "semistability/no-syzygy-above-bound", || e.semistability().1.rule.clone())?;
        let inc = inclusion_bound_no_syzygy(e.rules(), 7).map_err(|x| x.to_string())?;
        ensure(inc.range == DegreeRange::at_least(6), || format!("inclusion {}", inc.range))?;
        let exc = exclusion_bound_no_syzygy(e.rules(), 7).map_err(|x| x.to_string())?;
        ensure(exc.range == DegreeRange::at_most(5), || format!("exclusion {}", exc.range))?;
        let t = exc.cert.witnesses.iter().any(|w| matches!(w, Witness::Inequality { rhs, .. } if *rhs == ratio(27, 5)));
        ensure(t, || "exclusion threshold is not 27/5".into())?;
        let rep = e.degree_profile(0, 12).unwrap();
        ensure(rep.all_in_from() == Some(6), || format!("AllIn from {:?}", rep.all_in_from()))?;
        ensure(rep.iff_ideal_to() == Some(5), || format!("IffIdeal to {:?}", rep.iff_ideal_to()))?;
        let codim = ideal_graded_piece(&g, 6).codim();
        ensure(codim >= 7, || format!("dim R_6 / I_6 = {codim}"))?;
        Ok(())
    };
    assert!(report(4, "(x^4,y^4,z^4) on a quintic with Syz_7 = 0", &check()));
}

#[test]
fn criterion_5_heptic_char_three() {
    let check = || -> Check {
        let r = ring("x^7+y^7+z^7", 3)?;
        let g = ideal(&r, "x^2,y^2,z^2");
        let pb = frobenius_pullback_problem(&g, 1).unwrap();
        ensure(pb.pulled.gens().iter().map(|p| p.to_string()).collect::<Vec<_>>() == ["x^6", "y^6", "z^6"], || "pull-back".into())?;
        let s = SyzygyVec::new(&pb.pulled, parse_poly_list("x,y,z", r.field()).unwrap()).map_err(|e| e.to_string())?;
        ensure(s.total_degree == 7 && is_primary_syzygy(&s, &r).unwrap(), || "(x, y, z) is not primary at 7".into())?;
        let fq = pb.pull_element(&poly(&r, "x*y*z"));
        let fc = ForcingClass::with_pair(&pb.pulled, fq, Some((0, 1)));
        ensure(!quotient_class_image(&fc, &s).unwrap(), || "quotient class vanishes".into())?;
        let two = ideal(&r, "x^6,y^6");
        ensure(!ideal_membership(&two, &poly(&r, "x^3*y^3*z^4")).unwrap().member, || "x^3y^3z^4 in (x^6, y^6)".into())?;
        let (ample, hm) = hm_ampleness_rule(&r, Extension { sub_degree: 0, quot_degree: 14, nonsplit: true }, 3);
        let bound = hm.witnesses.iter().any(|w| matches!(w, Witness::Inequality { lhs, rhs, .. } if *lhs == ratio(14, 1) && *rhs == ratio(28, 3)));
        ensure(ample && bound, || "ampleness 14 > 28/3 not established".into())?;
        let v = engine(&g).decide(&poly(&r, "x*y*z")).unwrap();
        ensure(v.status == Status::NotInClosure && v.caveat == Caveat::DefiniteForGivenP, || format!("{} [{}]", v.status, v.caveat))?;
        ensure(verify_certificate(&r, &v.cert).unwrap(), || "certificate does not verify".into())?;
        Ok(())
    };
    assert!(report(5, "xyz over (x^2,y^2,z^2) on x^7+y^7+z^7 in characteristic 3", &check()));
}

#[test]
fn criterion_6_cubes() {
    let quintic = |p: u64| -> Check {
        let r = ring("x^5+y^5+z^5", p).map_err(|e| format!("p = {p}: {e}"))?;
        let g = ideal(&r, "x^3,y^3,z^3");
        let s = SyzygyVec::new(&g, parse_poly_list("x^2,y^2,z^2", r.field()).unwrap()).map_err(|e| e.to_string())?;
        ensure(s.total_degree == 5 && is_primary_syzygy(&s, &r).unwrap(), || format!("p = {p}: no primary syzygy at 5"))?;
        ensure(syzygy_space(&g, 4).dim() == 0, || format!("p = {p}: Syz_4 is not zero"))?;
        let rep = engine(&g).degree_profile(0, 12).unwrap();
        ensure(rep.all_in_from() == Some(5) && rep.iff_ideal_to() == Some(4), || {
            format!("p = {p}: AllIn from {:?}, IffIdeal to {:?}", rep.all_in_from(), rep.iff_ideal_to())
        })?;
        ensure(rep.rows.iter().all(|r| r.definite), || format!("p = {p}: conditional rows"))?;
        Ok(())
    };
    let quartic = || -> Check {
        for p in [0, 5, 7] {
            let r = ring("x^4+y^4+z^4", p)?;
            let g = ideal(&r, "x^3,y^3,z^3");
            let rep = engine(&g).degree_profile(0, 12).unwrap();
            ensure(rep.all_in_from() == Some(5), || format!("quartic p = {p}: AllIn from {:?}", rep.all_in_from()))?;
            let rule = rep.row(5).and_then(|r| r.cert.as_ref()).map(|c| c.rule.clone()).unwrap_or_default();
            let s = rep.primary.as_ref().map(|s| (s.total_degree, s.entries_text()));
            ensure(rule == "primary-syzygy/inclusion" && s == Some((4, "x, y, z".into())), || format!("quartic p = {p}: {rule} {s:?}"))?;
            ensure(rep.row(5).unwrap().caveat == Some(Caveat::AlsoPlusClosure), || "plus closure flag".into())?;
        }
        Ok(())
    };
    let p3 = quintic(3);
    let quart = quartic();
    let p5 = quintic(5);
    let result = match (&p3, &quart, &p5) {
        (Ok(()), Ok(()), Ok(())) => Ok(()),
        (Ok(()), Ok(()), Err(e)) => Err(format!("{e} (p = 3 and the quartic pass; x^5+y^5+z^5 is singular in characteristic 5)")),
        _ => Err(format!("{p3:?} {quart:?} {p5:?}")),
    };
    report(6, "(x^3,y^3,z^3) on the Fermat quintic (p = 3, 5) and quartic", &result);
    assert!(p3.is_ok() && quart.is_ok(), "{p3:?} {quart:?}");
}

fn run_suite<S: Strategy>(seed: u8, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Check
where
    S::Value: std::fmt::Debug,
{
    fixed_runner(seed).run(&strategy, test).map_err(|e| e.to_string())
}

fn fermat(p: u64, delta: u32) -> CurveRing {
    let f = field(p);
    let mut eq = HomPoly::zero(f, delta as i64);
    for v in 0..3 {
        eq = eq.add(&HomPoly::var(f, v).pow(delta)).unwrap();
    }
    make_curve(&eq, f).unwrap()
}

#[test]
fn criterion_7_property_suites() {
    // (a) h⁰(Syz(k)) - h¹(Syz(k)) with h¹(Syz(k)) = dim Syz_{Σd-k+δ-3}
    let a = run_suite(
        1,
        (prop_oneof![Just(5u64), Just(7)], 3u32..6, 1u32..5, 1u32..5, (0u32..4, 0u32..4, 1u32..4), 0i64..14),
        |(p, delta, a, b, (u, v, w), k)| {
            prop_assume!(delta as u64 % p != 0);
            let r = fermat(p, delta);
            let f = r.field();
            // x = y = 0 misses every Fermat curve, so the ideal is primary
            let gens = vec![
                HomPoly::monomial(f, Monomial::new(a, 0, 0)),
                HomPoly::monomial(f, Monomial::new(0, b, 0)),
                HomPoly::monomial(f, Monomial::new(u, v, w)),
            ];
            let g = IdealGens::new(&r, gens).unwrap();
            let d = g.degree_sum();
            let delta = delta as i64;
            let genus = r.genus() as i64;
            let lhs = syzygy_dim(&g, k) as i64 - syzygy_dim(&g, d - k + delta - 3) as i64;
            prop_assert_eq!(lhs, (2 * k - d) * delta + 2 * (1 - genus));
            Ok(())
        },
    );
    // (b) line bundles
    let b = run_suite(2, (prop_oneof![Just(0u64), Just(5), Just(7)], 3u32..7, -8i64..16), |(p, delta, t)| {
        prop_assume!(p == 0 || delta as u64 % p != 0);
        let r = fermat(p, delta);
        let g = r.genus() as i64;
        prop_assert_eq!(h0_line(&r, t) as i64 - h1_line(&r, t) as i64, t * delta as i64 + 1 - g);
        Ok(())
    });
    // (c) below δ every syzygy of (x^a,y^a,z^a) is Koszul
    let c = run_suite(
        3,
        (prop_oneof![Just((2u32, 5u32)), Just((3, 7)), Just((4, 9))], prop_oneof![Just(0u64), Just(11), Just(13)], 0i64..9),
        |((a, delta), p, k)| {
            prop_assume!(k < delta as i64);
            prop_assume!(p == 0 || delta as u64 % p != 0);
            let r = fermat(p, delta);
            let pw = |v| HomPoly::var(r.field(), v).pow(a);
            let g = IdealGens::new(&r, vec![pw(0), pw(1), pw(2)]).unwrap();
            prop_assert_eq!(syzygy_dim(&g, k), koszul_basis(&g, k).unwrap().dim());
            Ok(())
        },
    );
    // (d) [h / (f_1 f_2)] = 0 iff [h f_1 f_2 / (f_1^2 f_2^2)] = 0
    let d = run_suite(
        4,
        (prop_oneof![Just(5u64), Just(7)], 2i64..7, proptest::collection::vec(-3i64..4, 1..12), 0usize..3),
        |(p, deg, cs, which)| {
            let r = ring("x^4+y^4+z^4+x^3*y", p).unwrap();
            let f = r.field();
            let (fi, fj) = match which {
                0 => (poly(&r, "x"), poly(&r, "y")),
                1 => (poly(&r, "x^2"), poly(&r, "y+z")),
                _ => (poly(&r, "x+z"), poly(&r, "y^2-z^2")),
            };
            let basis = monomial_basis(deg);
            let mut h = HomPoly::zero(f, deg);
            for (i, c) in cs.iter().enumerate() {
                h = h.add(&HomPoly::term(f, basis[i % basis.len()], f.from_i64(*c))).unwrap();
            }
            let once = cech_class_vanishes(&r, &h, &fi, 1, &fj, 1).unwrap();
            let lifted = h.mul(&fi).unwrap().mul(&fj).unwrap();
            prop_assert_eq!(once, cech_class_vanishes(&r, &lifted, &fi, 2, &fj, 2).unwrap());
            Ok(())
        },
    );
    // (e) every emitted verdict re-verifies
    let cases: Vec<(&str, &str, u64)> = vec![
        ("x^3+y^3+z^3", "x^2,y^2,z^2", 7),
        ("x^3+y^3+z^3", "x^2,y^2,z^2", 0),
        ("x^4+y^4+z^4", "x^3,y^3,z^3", 0),
        ("x^4+y^4+z^4", "x^2,y^2,z^2", 5),
        ("x^5+y^5+z^5", "x^3,y^3,z^3", 3),
        ("x^7+y^7+z^7", "x^2,y^2,z^2", 3),
        ("x^4+y^4-z^4", "x^10,y^10,z^10", 0),
        ("x^3+y^3+z^3", "x^3,y^3", 0),
        ("x^5+y^5+z^5+x^3*y*z+x*y^3*z+x*y*z^3", "x^4,y^4,z^4", 0),
    ];
    let engines: Vec<(CurveRing, Engine)> = cases
        .iter()
        .map(|(c, i, p)| {
            let r = ring(c, *p).unwrap();
            let e = engine(&ideal(&r, i));
            (r, e)
        })
        .collect();
    let e = run_suite(5, (0..cases.len(), 0i64..19, any::<u64>()), |(which, m, pick)| {
        let (r, eng) = &engines[which];
        let basis = monomial_basis(m);
        let f0 = HomPoly::monomial(r.field(), basis[(pick % basis.len() as u64) as usize]);
        let v = eng.decide(&f0).unwrap();
        prop_assert!(verify_certificate(r, &v.cert).unwrap(), "{} fails for {}", v.cert.rule, f0);
        Ok(())
    });
    let parts = [("a", a), ("b", b), ("c", c), ("d", d), ("e", e)];
    let failed: Vec<String> = parts.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("({n}) {e}"))).collect();
    let result = if failed.is_empty() { Ok(()) } else { Err(failed.join("; ")) };
    assert!(report(7, "property suites (a)-(e), 200 cases each", &result));
}

#[test]
fn criterion_8_oracle_consistency() {
    let check = || -> Check {
        let grid = ScanGrid { primes: vec![5, 7, 11], deltas: vec![3, 4, 5], powers: vec![2, 3], degrees: None, e_max: 3, seed: 8 };
        let cells = scan(&grid, |_| {}).unwrap();
        ensure(cells.len() == 16, || format!("{} cells", cells.len()))?;
        for c in &cells {
            ensure(c.consistent(), || format!("p = {}, δ = {}, a = {} contradicts the oracle", c.p, c.delta, c.a))?;
        }
        let r = ring("x^3+y^3+z^3", 7)?;
        let g = ideal(&r, "x^2,y^2,z^2");
        let xyz = poly(&r, "x*y*z");
        let o = frobenius_closure_lower_bound(&g, &xyz, 3).unwrap();
        ensure(matches!(o, FrobeniusBound::Inconclusive { .. }), || format!("oracle {o:?}"))?;
        let v = engine(&g).decide(&xyz).unwrap();
        ensure(v.status == Status::InClosure, || format!("decide {}", v.status))?;
        Ok(())
    };
    assert!(report(8, "Frobenius oracle never contradicts a definite exclusion", &check()));
}
