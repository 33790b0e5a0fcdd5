//! Named cohomology rings used by the tests, the benches and the CLI
//! fixtures.

use crate::graded::FreeGCA;
use crate::linalg::Rational;
use crate::presentation::Presentation;

/// `ℚ[y]/(y^{n+1})` with `|y| = 2`, the cohomology of complex projective
/// `n`-space.
pub fn projective_space(n: u32) -> Presentation {
    let rel = format!("y^{}", n + 1);
    Presentation::parse(&[("y", 2)], &[&rel], Some(2 * n)).expect("valid presentation")
}

/// The 2-sphere, `ℚ[y]/(y²)`.
pub fn sphere2() -> Presentation {
    projective_space(1)
}

/// `ℚ[y1, y2]/(y1² - β y1 y2 + y2², y1² y2)`: threefolds with `b2 = 2` and
/// `b3 = 0`, with `y1` the Kähler class and `y2` primitive.
pub fn diamond_b(beta: &Rational) -> Presentation {
    let a = FreeGCA::from_pairs(&[("y1", 2), ("y2", 2)]).expect("valid generators");
    let (y1, y2) = (a.gen(0), a.gen(1));
    let p1 = &(&(&y1 * &y1) - &(&y1 * &y2).scale(beta)) + &(&y2 * &y2);
    let p2 = &(&y1 * &y1) * &y2;
    Presentation::new(a, vec![p1, p2], Some(6)).expect("diamond (b) ring has formal dimension 6")
}

/// Parameters `(α, β, γ, δ)` of the three quadratic relations for `b2 = 3`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiamondCParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl DiamondCParams {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, delta: Rational) -> Self {
        DiamondCParams {
            alpha,
            beta,
            gamma,
            delta,
        }
    }
}

/// `ℚ[y1, y2, y3]/(p1, p2, p3)` with
///
/// ```text
/// p1 = y2² + y1² - α y1 y2 - β y1 y3
/// p2 = y2 y3     - β y1 y2 - γ y1 y3
/// p3 = y3² + y1² - γ y1 y2 - δ y1 y3
/// ```
///
/// The formal dimension is not asserted since the quotient is only finite
/// for some parameter tuples.
pub fn diamond_c_relations(params: &DiamondCParams) -> Presentation {
    let a = FreeGCA::from_pairs(&[("y1", 2), ("y2", 2), ("y3", 2)]).expect("valid generators");
    let (y1, y2, y3) = (a.gen(0), a.gen(1), a.gen(2));
    let (y1y2, y1y3, sq1) = (&y1 * &y2, &y1 * &y3, &y1 * &y1);
    let p1 = &(&(&(&y2 * &y2) + &sq1) - &y1y2.scale(&params.alpha)) - &y1y3.scale(&params.beta);
    let p2 = &(&(&y2 * &y3) - &y1y2.scale(&params.beta)) - &y1y3.scale(&params.gamma);
    let p3 = &(&(&(&y3 * &y3) + &sq1) - &y1y2.scale(&params.gamma)) - &y1y3.scale(&params.delta);
    Presentation::new(a, vec![p1, p2, p3], None).expect("homogeneous relations")
}

/// The `b2 = 3` ring with all parameters zero, formal dimension 6.
pub fn diamond_c() -> Presentation {
    diamond_c_relations(&DiamondCParams::default())
        .with_formal_dimension(6)
        .expect("diamond (c) ring has formal dimension 6")
}

/// `ℚ⟨a, b⟩/(a², ab, b²)` with `|a| = |b| = 2`: the wedge of two 2-spheres.
/// Not a Poincaré duality algebra; its top degree is 2.
pub fn wedge_of_two_spheres() -> Presentation {
    Presentation::parse(&[("a", 2), ("b", 2)], &["a^2", "a*b", "b^2"], Some(2)).expect("valid presentation")
}

/// `S² × S²`, `ℚ[a, b]/(a², b²)`.
pub fn product_of_two_spheres() -> Presentation {
    Presentation::parse(&[("a", 2), ("b", 2)], &["a^2", "b^2"], Some(4)).expect("valid presentation")
}
