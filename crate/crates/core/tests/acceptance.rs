//! Acceptance run: one PASS/FAIL line per criterion.

use std::sync::Arc;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use rht_core::fano;
use rht_core::kahler::{self, Ellipticity, HodgeDiamond};
use rht_core::linalg::{self, frac, int, MatrixQ};
use rht_core::rings;
use rht_core::sullivan::{check_fh_bounds, Certificate};
use rht_core::{build_bigraded_model, classify_dichotomy, Derivation, FreeGCA, Polynomial, Presentation, Rational, VerdictKind};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(t < limit, format!("{} took {:.2?}, limit {:.2?}", what, t, limit))
}

fn nonzero_through(h: &Presentation, n: u32) -> Result<Vec<(u32, usize)>, String> {
    let (_, table) = build_bigraded_model(h, n).map_err(|e| e.to_string())?;
    Ok(table.nonzero())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let h = rings::projective_space(3);
    let table = nonzero_through(&h, 11)?;
    let v = classify_dichotomy(&h, 11).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    check(table == vec![(2, 1), (7, 1)], format!("table {:?}", table))?;
    check(v.kind == VerdictKind::Elliptic, format!("verdict {}", v.kind))?;
    within(t, Duration::from_secs(1), "P^3")?;
    Ok(format!("pi_2 = 1, pi_7 = 1 through degree 11, ELLIPTIC, {:.0?}", t))
}

fn criterion_2() -> Outcome {
    let mut worst = Duration::ZERO;
    for beta in [int(-2), int(0), int(1), frac(7, 3)] {
        let start = Instant::now();
        let h = rings::diamond_b(&beta);
        let table = nonzero_through(&h, 11)?;
        let v = classify_dichotomy(&h, 11).map_err(|e| e.to_string())?;
        let t = start.elapsed();
        worst = worst.max(t);
        check(table == vec![(2, 2), (3, 1), (5, 1)], format!("beta = {}: table {:?}", beta, table))?;
        check(v.kind == VerdictKind::Elliptic, format!("beta = {}: verdict {}", beta, v.kind))?;
        let Certificate::Elliptic { regularity, .. } = &v.certificate else {
            return Err(format!("beta = {}: no elliptic certificate", beta));
        };
        check(regularity.regular, format!("beta = {}: sequence not regular", beta))?;
        check(
            regularity.radical_power == Some(4),
            format!("beta = {}: radical power {:?}", beta, regularity.radical_power),
        )?;
        within(t, Duration::from_secs(5), &format!("beta = {}", beta))?;
    }
    Ok(format!("beta in {{-2, 0, 1, 7/3}}: pi_2 = 2, pi_3 = 1, pi_5 = 1, regular, k = 4, worst {:.0?}", worst))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let h = rings::diamond_c();
    let table = nonzero_through(&h, 11)?;
    let v = classify_dichotomy(&h, 11).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    check(table == vec![(2, 3), (3, 3)], format!("table {:?}", table))?;
    check(v.kind == VerdictKind::Elliptic, format!("verdict {}", v.kind))?;
    within(t, Duration::from_secs(10), "diamond (c)")?;
    Ok(format!("pi_2 = 3, pi_3 = 3, ELLIPTIC, {:.0?}", t))
}

fn criterion_4() -> Outcome {
    let inputs = [
        ("P^3", rings::projective_space(3)),
        ("diamond (b)", rings::diamond_b(&int(0))),
        ("diamond (c)", rings::diamond_c()),
    ];
    let mut parts = Vec::new();
    for (name, h) in inputs {
        let v = classify_dichotomy(&h, 11).map_err(|e| e.to_string())?;
        let audit = check_fh_bounds(&v.table, 6, None).map_err(|e| e.to_string())?;
        for item in ["(i)", "(ii)", "(iii)", "(iv)"] {
            let i = audit.item(item).ok_or(format!("{}: missing {}", name, item))?;
            check(i.pass, format!("{}: {} fails ({} vs {})", name, item, i.lhs, i.rhs))?;
        }
        let iii = audit.item("(iii)").expect("present");
        check(iii.lhs == 6, format!("{}: identity (iii) gives {}", name, iii.lhs))?;
        parts.push(format!("{} (odd sum {}, even sum {})", name, audit.odd_degree_sum, audit.even_degree_sum));
    }
    Ok(format!("(i)-(iv) hold with m = 6, (iii) = 6: {}", parts.join("; ")))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let h = rings::wedge_of_two_spheres();
    let (_, table) = build_bigraded_model(&h, 4).map_err(|e| e.to_string())?;
    let v = classify_dichotomy(&h, 4).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    let (b3, r) = (h.dim(3), h.symmetric_square_kernel_dim());
    check(table.dim(2) == 2, format!("pi_2 = {}", table.dim(2)))?;
    check(table.dim(3) == 3, format!("pi_3 = {}", table.dim(3)))?;
    check(table.dim(3) == b3 + r, format!("pi_3 = {} but b3 + r = {} + {}", table.dim(3), b3, r))?;
    check((b3, r) == (0, 3), format!("b3 = {}, r = {}", b3, r))?;
    check(v.kind == VerdictKind::Hyperbolic, format!("verdict {}", v.kind))?;
    let Certificate::Hyperbolic { violations, .. } = &v.certificate else {
        return Err("no hyperbolic certificate".into());
    };
    check(!violations.is_empty(), "no bound violation recorded")?;
    within(t, Duration::from_secs(5), "wedge")?;
    Ok(format!("pi_2 = 2, pi_3 = 3 = b3 + r = 0 + 3, HYPERBOLIC ({}), {:.0?}", violations[0], t))
}

fn criterion_6() -> Outcome {
    let ex = kahler::exclude_diamond_d(&HodgeDiamond::threefold_d()).map_err(|e| e.to_string())?;
    check(ex.chi_o == 2, format!("chi(O) = {}", ex.chi_o))?;
    check(ex.three_c1c2 == 144, format!("3 int c1c2 = {}", ex.three_c1c2))?;
    check(ex.cases.len() == 3, "expected three lambda cases")?;
    check(ex.trace.last().is_some_and(|l| l.ends_with("144")), "trace does not end with 144")?;
    check(
        kahler::exclude_diamond_d(&HodgeDiamond::threefold_a()).is_err(),
        "diamond (a) accepted as (d)",
    )?;
    Ok("chi(O) = 2, 3 int c1 c2 = 144, three lambda cases".into())
}

fn criterion_7() -> Outcome {
    let a = kahler::classify_surface(&HodgeDiamond::surface_a()).map_err(|e| e.to_string())?;
    check(
        a.elliptic == Ellipticity::Yes && a.cases.len() == 1 && a.cases[0].space.contains("P^2"),
        "diamond (a) is not P^2",
    )?;
    let b = kahler::classify_surface(&HodgeDiamond::surface_b()).map_err(|e| e.to_string())?;
    let inv = b.surface_invariants.clone().ok_or("no invariants for (b)")?;
    check((inv.chi_o, inv.c2, inv.c1sq) == (1, 4, 8), format!("invariants {:?}", inv))?;
    check(b.elliptic == Ellipticity::Yes && b.cases.len() == 2, "diamond (b) cases")?;
    check(b.cases[0].space.starts_with("Hirzebruch"), "first case is not Hirzebruch")?;
    check(
        b.cases[1].space.contains("fake quadric") && b.cases[1].status == Ellipticity::Conditional,
        "fake quadric is not conditional",
    )?;
    let k3 = kahler::classify_surface(&HodgeDiamond::k3()).map_err(|e| e.to_string())?;
    check(k3.elliptic == Ellipticity::No, "K3 accepted")?;
    check(k3.trace.iter().any(|t| t.contains("b2 = 22 > 2")), "K3 rejection does not cite b2 = 22 > 2")?;
    Ok("(a) -> P^2; (b) -> Hirzebruch + conditional fake quadric, (chi, c2, c1^2) = (1, 4, 8); K3 rejected, b2 = 22 > 2".into())
}

fn criterion_8() -> Outcome {
    let counts: Vec<usize> = (1..=3).map(|b2| fano::list_families(Some(b2), Some(true)).len()).collect();
    check(counts == vec![3, 14, 22], format!("counts {:?}", counts))?;
    let expected = [
        ("V5", ">=1"),
        ("V4", "4"),
        ("V3", "10"),
        ("V2", "20"),
        ("V1", "42"),
        ("X2", "104"),
        ("X4", "60"),
        ("X6", "40"),
        ("X8", "28"),
        ("X12", "14"),
        ("X14", "10"),
        ("X16", "6"),
        ("X18", "4"),
        ("X22", "0"),
    ];
    for (name, b3) in expected {
        let f = fano::lookup(&format!("b2=1/{}", name)).map_err(|e| e.to_string())?;
        check(f.b3.to_string() == b3, format!("{}: b3 = {}, expected {}", name, f.b3, b3))?;
    }
    Ok("elliptic counts (3, 14, 22); b3 of V5..V1 and X2..X22 as listed".into())
}

// Property suites.

const CASES: u32 = 100;

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn homogeneous(a: Arc<FreeGCA>, max_degree: u32) -> impl Strategy<Value = Polynomial> + Clone {
    (0..=max_degree).prop_flat_map(move |n| {
        let a = Arc::clone(&a);
        let basis = a.monomial_basis(n);
        proptest::collection::vec(-3i64..=3, basis.len().max(1)).prop_map(move |cs| {
            let mut out = a.zero();
            for (m, c) in basis.iter().zip(cs) {
                out = &out + &Polynomial::from_monomial(&a, m.clone(), int(c));
            }
            out
        })
    })
}

fn koszul_sign(da: u32, db: u32) -> Rational {
    int(if da * db % 2 == 1 { -1 } else { 1 })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn suite_koszul_signs() -> Result<(), String> {
    let a = FreeGCA::from_pairs(&[("y", 2), ("x1", 3), ("x2", 3), ("x3", 5), ("z", 4)]).unwrap();
    let s = homogeneous(Arc::clone(&a), 12);
    runner()
        .run(&(s.clone(), s), |(p, q)| {
            let (dp, dq) = (p.homogeneous_degree().unwrap_or(0), q.homogeneous_degree().unwrap_or(0));
            prop_assert_eq!(&p * &q, (&q * &p).scale(&koszul_sign(dp, dq)));
            Ok(())
        })
        .map_err(|e| format!("Koszul signs: {}", e))
}

fn mixed_derivation() -> Derivation {
    let a = FreeGCA::from_pairs(&[("y", 2), ("u", 3), ("x", 4), ("w", 6)]).unwrap();
    let (y, u, x) = (a.gen(0), a.gen(1), a.gen(2));
    Derivation::new(&a, vec![a.zero(), a.zero(), &y * &u, &u * &x]).unwrap()
}

fn suite_leibniz() -> Result<(), String> {
    let d = mixed_derivation();
    let s = homogeneous(Arc::clone(d.algebra()), 14);
    runner()
        .run(&(s.clone(), s), |(p, q)| {
            let dp = p.homogeneous_degree().unwrap_or(0);
            let lhs = d.apply(&(&p * &q)).unwrap();
            let rhs = &(&d.apply(&p).unwrap() * &q) + &(&p * &d.apply(&q).unwrap()).scale(&koszul_sign(dp, 1));
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| format!("Leibniz: {}", e))
}

fn suite_d_squared() -> Result<(), String> {
    let (model, _) = build_bigraded_model(&rings::diamond_b(&int(1)), 11).unwrap();
    let d = model.differential().clone();
    let mixed = mixed_derivation();
    let s1 = homogeneous(Arc::clone(model.algebra()), 16);
    let s2 = homogeneous(Arc::clone(mixed.algebra()), 16);
    runner()
        .run(&(s1, s2), |(p, q)| {
            prop_assert!(d.apply(&d.apply(&p).unwrap()).unwrap().is_zero());
            prop_assert!(mixed.apply(&mixed.apply(&q).unwrap()).unwrap().is_zero());
            Ok(())
        })
        .map_err(|e| format!("d^2 = 0: {}", e))
}

fn suite_rank_nullity() -> Result<(), String> {
    let s = (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], r * c).prop_map(move |e| (r, c, e))
    });
    runner()
        .run(&s, |(r, c, e)| {
            let entries: Vec<Rational> = e.iter().map(|&v| int(v)).collect();
            let m = MatrixQ::from_dense(r, c, &entries).unwrap();
            let kernel = linalg::kernel_basis(&m);
            prop_assert_eq!(linalg::rank(&m) + kernel.len(), c);
            for v in &kernel {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == int(0)));
            }
            Ok(())
        })
        .map_err(|e| format!("rank-nullity: {}", e))
}

/// Random element of `ℚ[y1, y2]` in degree `2k`.
fn element(a: &Arc<FreeGCA>, n: u32, cs: &[i64]) -> Polynomial {
    let mut out = a.zero();
    for (m, &c) in a.monomial_basis(n).into_iter().zip(cs) {
        out = &out + &Polynomial::from_monomial(a, m, int(c));
    }
    out
}

fn suite_quotient() -> Result<(), String> {
    let coeffs = proptest::collection::vec(-5i64..=5, 12);
    let s = (rational(), 2u32..=5, coeffs.clone(), coeffs, 0usize..2);
    runner()
        .run(&s, |(beta, k, ca, cr, which)| {
            let h = rings::diamond_b(&beta);
            let amb = h.ambient();
            let n = 2 * k;
            let p = &h.relations()[which];
            let dp = p.homogeneous_degree().unwrap();
            let a = element(amb, n, &ca);
            let r = if n >= dp { element(amb, n - dp, &cr) } else { amb.zero() };
            let shifted = &a + &(&r * p);
            prop_assert_eq!(h.reduce_in_degree(&a, n).unwrap(), h.reduce_in_degree(&shifted, n).unwrap());
            Ok(())
        })
        .map_err(|e| format!("quotient well-defined: {}", e))
}

/// `Π(1 - t^{|p_i|}) / Π(1 - t^{|y_j|})` through `t^n`.
fn complete_intersection_series(gens: &[u32], rels: &[u32], n: usize) -> Vec<i64> {
    let mut s = vec![0i64; n + 1];
    s[0] = 1;
    for &d in rels {
        for k in (d as usize..=n).rev() {
            s[k] -= s[k - d as usize];
        }
    }
    for &d in gens {
        for k in d as usize..=n {
            s[k] += s[k - d as usize];
        }
    }
    s
}

fn suite_hilbert() -> Result<(), String> {
    let s = (1u32..=5, 1u32..=5, -4i64..=4, prop_oneof![Just(2u32), Just(4u32)]);
    runner()
        .run(&s, |(a_exp, b_exp, c, zdeg)| {
            // (y^a, z^b + c y^{b |z| / 2}) is regular: both generators are nilpotent in the quotient
            let a = FreeGCA::from_pairs(&[("y", 2), ("z", zdeg)]).unwrap();
            let (y, z) = (a.gen(0), a.gen(1));
            let p1 = y.pow(a_exp);
            let p2 = &z.pow(b_exp) + &y.pow(b_exp * zdeg / 2).scale(&int(c));
            let h = Presentation::new(a, vec![p1, p2], None).unwrap();
            let oracle = complete_intersection_series(&[2, zdeg], &[2 * a_exp, zdeg * b_exp], 20);
            let got: Vec<i64> = h.hilbert_series(20).iter().map(|&v| v as i64).collect();
            prop_assert_eq!(got, oracle);
            Ok(())
        })
        .map_err(|e| format!("Hilbert series: {}", e))
}

/// Diamond (a), (b) with random β, or (c) with a random invertible change of
/// variables applied to its relations.
fn diamond_ring(which: usize, beta: &Rational, g: &[i64]) -> Option<Presentation> {
    match which {
        0 => Some(rings::projective_space(3)),
        1 => Some(rings::diamond_b(beta)),
        _ => {
            let m = MatrixQ::from_dense(3, 3, &g.iter().map(|&v| int(v)).collect::<Vec<_>>()).unwrap();
            if linalg::rank(&m) < 3 {
                return None;
            }
            let base = rings::diamond_c();
            let a = Arc::clone(base.ambient());
            let images: Vec<Polynomial> = (0..3)
                .map(|i| {
                    let mut out = a.zero();
                    for j in 0..3 {
                        out = &out + &a.gen(j).scale(&int(g[3 * i + j]));
                    }
                    out
                })
                .collect();
            let rels = base.relations().iter().map(|p| p.map_hom(&images, &a)).collect();
            Some(Presentation::new(a, rels, Some(6)).unwrap())
        }
    }
}

fn suite_poincare() -> Result<(), String> {
    let s = (0usize..3, rational(), proptest::collection::vec(-3i64..=3, 9));
    runner()
        .run(&s, |(which, beta, g)| {
            let Some(h) = diamond_ring(which, &beta, &g) else {
                return Err(TestCaseError::reject("singular change of variables"));
            };
            let r = h.check_poincare_duality(6).unwrap();
            prop_assert!(r.pass, "failing degrees {:?}", r.failing_degrees);
            Ok(())
        })
        .map_err(|e| format!("Poincare duality: {}", e))
}

fn suite_lefschetz() -> Result<(), String> {
    let s = (rational(), (-5i64..=5, -5i64..=5).prop_filter("nonzero", |(a, b)| (*a, *b) != (0, 0)));
    runner()
        .run(&s, |(beta, (a, b))| {
            let hb = rings::diamond_b(&beta);
            let y1 = hb.ambient().gen(0);
            prop_assert!(hb.check_hard_lefschetz(&y1, 3).unwrap().pass);
            let hc = rings::diamond_c();
            let amb = hc.ambient();
            prop_assert!(hc.check_hard_lefschetz(&amb.gen(0), 3).unwrap().pass);
            let omega = &amb.gen(1).scale(&int(a)) + &amb.gen(2).scale(&int(b));
            // omega is primitive for y1, and fails to be a Lefschetz class
            prop_assert!(hc.in_ideal(&(&amb.gen(0).pow(2) * &omega)).unwrap());
            prop_assert!(!hc.check_hard_lefschetz(&omega, 3).unwrap().pass);
            Ok(())
        })
        .map_err(|e| format!("Hard Lefschetz: {}", e))
}

fn suite_hodge_riemann() -> Result<(), String> {
    let s = (rational(), (-5i64..=5, -5i64..=5).prop_filter("nonzero", |(a, b)| (*a, *b) != (0, 0)));
    runner()
        .run(&s, |(beta, (a, b))| {
            let hc = rings::diamond_c();
            let amb = hc.ambient();
            let y = &amb.gen(1).scale(&int(a)) + &amb.gen(2).scale(&int(b));
            prop_assert!(hc.hodge_riemann_sign(&amb.gen(0), &y, 3).unwrap().kahler_compatible());
            let hb = rings::diamond_b(&beta);
            let amb = hb.ambient();
            let y = amb.gen(1).scale(&int(a + b * 7));
            if !y.is_zero() {
                prop_assert!(hb.hodge_riemann_sign(&amb.gen(0), &y, 3).unwrap().kahler_compatible());
            }
            Ok(())
        })
        .map_err(|e| format!("Hodge-Riemann: {}", e))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let suites: [(&str, fn() -> Result<(), String>); 9] = [
        ("Koszul signs", suite_koszul_signs),
        ("Leibniz", suite_leibniz),
        ("d^2 = 0", suite_d_squared),
        ("rank-nullity", suite_rank_nullity),
        ("quotient", suite_quotient),
        ("Hilbert series", suite_hilbert),
        ("Poincare duality", suite_poincare),
        ("Hard Lefschetz", suite_lefschetz),
        ("Hodge-Riemann", suite_hodge_riemann),
    ];
    let mut timings = Vec::new();
    for (name, run) in suites {
        let t = Instant::now();
        run()?;
        timings.push(format!("{} {:.1?}", name, t.elapsed()));
    }
    let total = start.elapsed();
    within(total, Duration::from_secs(60), "property suites")?;
    Ok(format!("9 suites x {} cases, total {:.1?} ({})", CASES, total, timings.join(", ")))
}

fn criterion_10() -> Outcome {
    let degrees = |h: &Presentation| -> Result<Vec<u32>, String> {
        let v = classify_dichotomy(h, 11).map_err(|e| e.to_string())?;
        check(v.kind == VerdictKind::Elliptic, "fibre or base not elliptic")?;
        Ok(v.table.degrees())
    };
    let fibre = degrees(&rings::sphere2())?;
    let base = degrees(&rings::projective_space(2))?;
    let total = degrees(&rings::diamond_b(&int(0)))?;
    let mut union: Vec<u32> = fibre.iter().chain(&base).copied().collect();
    union.sort_unstable();
    check(fibre == vec![2, 3] && base == vec![2, 5], format!("fibre {:?}, base {:?}", fibre, base))?;
    check(total == union, format!("total {:?} != {:?}", total, union))?;
    Ok(format!("{:?} = {:?} + {:?}", total, fibre, base))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("P^3 model", criterion_1),
        ("diamond (b) models", criterion_2),
        ("diamond (c) model", criterion_3),
        ("Friedlander-Halperin audit", criterion_4),
        ("hyperbolic witness", criterion_5),
        ("diamond (d) exclusion", criterion_6),
        ("surface classifier", criterion_7),
        ("Fano queries", criterion_8),
        ("property suites", criterion_9),
        ("fibration fixture", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {}: {}", i + 1, name, detail),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {}: {}", i + 1, name, why);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
