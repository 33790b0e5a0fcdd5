use super::*;
use crate::linalg::int;
use proptest::prelude::*;

fn alg(pairs: &[(&str, u32)]) -> Arc<FreeGCA> {
    FreeGCA::from_pairs(pairs).unwrap()
}

fn p(src: &str, a: &Arc<FreeGCA>) -> Polynomial {
    parse_poly(src, a).unwrap()
}

/// Coefficients of `Π_even 1/(1-t^|y|) · Π_odd (1+t^|x|)` through `t^n`,
/// expanded one factor at a time.
fn generating_function(a: &FreeGCA, n: usize) -> Vec<u64> {
    let mut series = vec![0u64; n + 1];
    series[0] = 1;
    for g in a.gens() {
        let d = g.degree as usize;
        let factor: Vec<u64> = (0..=n)
            .map(|k| {
                if g.is_odd() {
                    u64::from(k == 0 || k == d)
                } else {
                    u64::from(k % d == 0)
                }
            })
            .collect();
        let mut next = vec![0u64; n + 1];
        for i in 0..=n {
            for j in 0..=n - i {
                next[i + j] += series[i] * factor[j];
            }
        }
        series = next;
    }
    series
}

#[test]
fn monomial_basis_examples() {
    let a = alg(&[("y", 2)]);
    let b = a.monomial_basis(6);
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].display(&a), "y^3");

    let a = alg(&[("y1", 2), ("y2", 2)]);
    let names: Vec<String> = a.monomial_basis(4).iter().map(|m| m.display(&a)).collect();
    assert_eq!(names, ["y1^2", "y1*y2", "y2^2"]);
    // #{(a,b): 2a + 2b = 4} = 3
    assert_eq!(names.len(), (0..=2).filter(|i| (4 - 2 * i) % 2 == 0).count());

    let a = alg(&[("x1", 3), ("x2", 5)]);
    let names: Vec<String> = a.monomial_basis(8).iter().map(|m| m.display(&a)).collect();
    assert_eq!(names, ["x1*x2"]);
}

#[test]
fn monomial_basis_is_sorted() {
    let a = alg(&[("a", 2), ("b", 3), ("c", 4), ("d", 5)]);
    for n in 0..16 {
        let basis = a.monomial_basis(n);
        assert!(basis.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn dimension_matches_generating_function() {
    for pairs in [
        vec![("y", 2)],
        vec![("y1", 2), ("y2", 2), ("x1", 3), ("x2", 5)],
        vec![("a", 1), ("b", 3), ("c", 4), ("d", 6), ("e", 7)],
        vec![("u", 3), ("v", 3), ("w", 3), ("z", 2)],
    ] {
        let a = alg(&pairs);
        let oracle = generating_function(&a, 20);
        for n in 0..=20u32 {
            assert_eq!(a.monomial_basis(n).len() as u64, oracle[n as usize], "{a} degree {n}");
        }
    }
}

#[test]
fn multiplication_examples() {
    let a = alg(&[("y1", 2), ("y2", 2), ("x1", 3), ("x2", 5)]);
    let (x1, x2) = (p("x1", &a), p("x2", &a));
    assert_eq!(&x1 * &x2, -&(&x2 * &x1));
    assert!((&x1 * &x1).is_zero());
    let s = p("y1 + y2", &a);
    assert_eq!(&s * &s, p("y1^2 + 2*y1*y2 + y2^2", &a));
}

#[test]
fn mixed_algebras_rejected() {
    let a = alg(&[("y", 2)]);
    let b = alg(&[("z", 2)]);
    assert_eq!(
        multiply(&p("y", &a), &p("z", &b)),
        Err(RingError::MixedAlgebras)
    );
}

#[test]
fn algebra_validation() {
    assert!(matches!(FreeGCA::from_pairs(&[("y", 0)]), Err(RingError::ZeroDegree(_))));
    assert!(matches!(
        FreeGCA::from_pairs(&[("y", 2), ("y", 4)]),
        Err(RingError::DuplicateGenerator(_))
    ));
    assert!(matches!(FreeGCA::from_pairs(&[("1y", 2)]), Err(RingError::InvalidName(_))));
}

#[test]
fn parse_examples() {
    let a = alg(&[("y1", 2), ("y2", 2), ("y3", 2), ("x1", 3)]);
    let q = p("y1^2 - 2*y1*y2 + y2^2", &a);
    assert_eq!(q.num_terms(), 3);
    assert_eq!(q.to_string(), "y1^2 - 2*y1*y2 + y2^2");

    let m = p("y1^2*y2", &a);
    assert_eq!(m.num_terms(), 1);
    assert_eq!(m.homogeneous_degree(), Some(6));

    assert!(matches!(
        parse_poly("x1^2", &a),
        Err(ParseError::ExteriorPower { ref name, exponent: 2, .. }) if name == "x1"
    ));
    assert!(matches!(
        parse_poly("y1 + w", &a),
        Err(ParseError::UnknownGenerator { ref name, pos: 5 }) if name == "w"
    ));
    assert!(matches!(parse_poly("y1 + ", &a), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse_poly("y1 ^ y2", &a), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse_poly("1/0 y1", &a), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse_poly("(y1)", &a), Err(ParseError::Syntax { .. })));
}

#[test]
fn parse_implicit_products_and_fractions() {
    let a = alg(&[("y1", 2), ("y2", 2)]);
    assert_eq!(p("2/3 y1 y2", &a), p("2/3*y1*y2", &a));
    assert_eq!(p("-y1 + y1", &a), a.zero());
    assert_eq!(p("7/3*y1^2", &a).coefficient(&a.monomial(vec![2, 0]).unwrap()), crate::linalg::frac(7, 3));
}

fn pure_bc() -> (Arc<FreeGCA>, Derivation) {
    let a = alg(&[("y1", 2), ("y2", 2), ("x1", 3), ("x2", 5)]);
    let d = Derivation::new(
        &a,
        vec![a.zero(), a.zero(), p("y1^2 + y2^2", &a), p("y1^2*y2", &a)],
    )
    .unwrap();
    (a, d)
}

#[test]
fn derivation_examples() {
    let a = alg(&[("y1", 2), ("y2", 2), ("x1", 3)]);
    let d = Derivation::new(&a, vec![a.zero(), a.zero(), p("y1^2", &a)]).unwrap();
    assert_eq!(d.apply(&p("x1*y2", &a)).unwrap(), p("y1^2*y2", &a));
    assert!(d.apply(&p("y1^3", &a)).unwrap().is_zero());

    // d(x1 x2) = d(x1) x2 - x1 d(x2), expanded term by term.
    let (a, d) = pure_bc();
    let lhs = d.apply(&p("x1*x2", &a)).unwrap();
    let p1 = p("y1^2 + y2^2", &a);
    let p2 = p("y1^2*y2", &a);
    let rhs = &(&p1 * &p("x2", &a)) - &(&p("x1", &a) * &p2);
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.to_string(), "-y1^2*y2*x1 + y1^2*x2 + y2^2*x2");
}

#[test]
fn derivation_rejects_wrong_degree() {
    let a = alg(&[("y", 2), ("x", 3)]);
    let err = Derivation::new(&a, vec![a.zero(), p("y", &a)]).unwrap_err();
    assert!(matches!(err, RingError::Inhomogeneous { expected: 4, .. }));
    let err = Derivation::new(&a, vec![a.zero(), p("y^2 + y", &a)]).unwrap_err();
    assert!(matches!(err, RingError::Inhomogeneous { .. }));
}

#[test]
fn embed_and_map_hom() {
    let a = alg(&[("y", 2)]);
    let b = alg(&[("y", 2), ("x", 7)]);
    let e = p("y^3", &a).embed(&b).unwrap();
    assert_eq!(e, p("y^3", &b));
    assert!(p("y", &b).embed(&a).is_err());
    // y -> y1 + y2 applied to y^2
    let c = alg(&[("y1", 2), ("y2", 2)]);
    let img = p("y^2", &a).map_hom(&[p("y1 + y2", &c)], &c);
    assert_eq!(img, p("y1^2 + 2 y1 y2 + y2^2", &c));
}

// Non-pure differential: dy = du = 0, dx = y u, dw = u x.
fn mixed() -> (Arc<FreeGCA>, Derivation) {
    let a = alg(&[("y", 2), ("u", 3), ("x", 4), ("w", 6)]);
    let d = Derivation::new(&a, vec![a.zero(), a.zero(), p("y*u", &a), p("u*x", &a)]).unwrap();
    (a, d)
}

#[test]
fn square_zero_on_generators() {
    assert!(pure_bc().1.squares_to_zero());
    assert!(mixed().1.squares_to_zero());
    let a = alg(&[("y", 2), ("x", 3), ("z", 4)]);
    let d = Derivation::new(&a, vec![a.zero(), p("y^2", &a), p("y*x", &a)]).unwrap();
    assert!(!d.squares_to_zero());
}

fn arb_homogeneous(a: Arc<FreeGCA>, max_degree: u32) -> impl Strategy<Value = Polynomial> {
    (0..=max_degree).prop_flat_map(move |n| {
        let a = Arc::clone(&a);
        let basis = a.monomial_basis(n);
        let len = basis.len().max(1);
        proptest::collection::vec(-3i64..=3, len).prop_map(move |cs| {
            let mut out = a.zero();
            for (m, c) in basis.iter().zip(cs) {
                out = &out + &Polynomial::from_monomial(&a, m.clone(), int(c));
            }
            out
        })
    })
}

fn sign(deg_a: u32, deg_b: u32) -> Rational {
    if (deg_a * deg_b) % 2 == 1 {
        int(-1)
    } else {
        int(1)
    }
}

proptest! {
    #[test]
    fn koszul_sign_coherence(
        a in arb_homogeneous(alg(&[("y1", 2), ("x1", 3), ("x2", 3), ("x3", 5), ("z", 4)]), 12),
        b in arb_homogeneous(alg(&[("y1", 2), ("x1", 3), ("x2", 3), ("x3", 5), ("z", 4)]), 12),
    ) {
        let (da, db) = (a.homogeneous_degree().unwrap_or(0), b.homogeneous_degree().unwrap_or(0));
        prop_assert_eq!(&a * &b, (&b * &a).scale(&sign(da, db)));
    }

    #[test]
    fn associativity(
        a in arb_homogeneous(alg(&[("y", 2), ("x1", 3), ("x2", 5)]), 8),
        b in arb_homogeneous(alg(&[("y", 2), ("x1", 3), ("x2", 5)]), 8),
        c in arb_homogeneous(alg(&[("y", 2), ("x1", 3), ("x2", 5)]), 8),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn leibniz_rule(
        a in arb_homogeneous(alg(&[("y", 2), ("u", 3), ("x", 4), ("w", 6)]), 14),
        b in arb_homogeneous(alg(&[("y", 2), ("u", 3), ("x", 4), ("w", 6)]), 14),
    ) {
        let (_, d) = mixed();
        let da = a.homogeneous_degree().unwrap_or(0);
        let lhs = d.apply(&(&a * &b)).unwrap();
        let rhs = &(&d.apply(&a).unwrap() * &b)
            + &(&a * &d.apply(&b).unwrap()).scale(&sign(da, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_vanishes(
        a in arb_homogeneous(alg(&[("y", 2), ("u", 3), ("x", 4), ("w", 6)]), 18),
        b in arb_homogeneous(alg(&[("y1", 2), ("y2", 2), ("x1", 3), ("x2", 5)]), 18),
    ) {
        let (_, d) = mixed();
        prop_assert!(d.apply(&d.apply(&a).unwrap()).unwrap().is_zero());
        let (_, d) = pure_bc();
        prop_assert!(d.apply(&d.apply(&b).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn display_parse_round_trip(
        a in arb_homogeneous(alg(&[("y1", 2), ("y2", 2), ("x1", 3), ("x2", 5)]), 12),
    ) {
        let s = a.to_string();
        prop_assert_eq!(parse_poly(&s, a.algebra()).unwrap(), a);
    }
}
