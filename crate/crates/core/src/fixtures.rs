//! Curve pairs with known closed-form conditioning, used by the `cond`
//! binary, the test suites and the fuzz seeds.

use crate::bernstein::BernsteinPoly;
use crate::curve::BezierCurve;

fn curve(points: &[(f64, f64)]) -> BezierCurve {
    BezierCurve::from_xy(points).expect("fixture control points are finite")
}

/// The line `(2s, 2s)` against the quadratically parameterized line
/// `(4t², 2 - 4t²)`. One root at `(1/2, 1/2)` with `κ = √202 / 8`.
pub fn transversal_line_quadratic() -> (BezierCurve, BezierCurve) {
    (
        curve(&[(0.0, 0.0), (2.0, 2.0)]),
        curve(&[(0.0, 2.0), (0.0, 2.0), (4.0, -2.0)]),
    )
}

/// `y = x` against `y = 1 - x`, every coefficient shifted by `d`.
/// Root at `(1/2, 1/2)` with `κ = √2 (2d + 1)`.
pub fn offset_lines(d: f64) -> (BezierCurve, BezierCurve) {
    (
        curve(&[(d, d), (1.0 + d, 1.0 + d)]),
        curve(&[(d, 1.0 + d), (1.0 + d, d)]),
    )
}

/// `y = 1` against `r x + y = 1 + r`. Root at `(1, 1)` with
/// `κ = sqrt(4/r² + 4/r + 2)`; coincident when `r = 0`.
pub fn coincidence_lines(r: f64) -> (BezierCurve, BezierCurve) {
    (
        curve(&[(0.0, 1.0), (1.0, 1.0)]),
        curve(&[(0.0, 1.0 + r), (1.0, 1.0)]),
    )
}

/// The parabola `y = x²` on `[-1, 1]` touching `y = 0` at the origin,
/// which is `(s, t) = (1/2, 1/2)`.
pub fn tangent_parabola() -> (BezierCurve, BezierCurve) {
    (
        curve(&[(-1.0, 1.0), (0.0, -1.0), (1.0, 1.0)]),
        curve(&[(-1.0, 0.0), (1.0, 0.0)]),
    )
}

/// Embeds a scalar root problem as `b0 = (p(s), 0)`, `b1 = (0, t)`, whose
/// roots are `(α, 0)` for each root `α` of `p`.
pub fn collapse_embedding(p: &BernsteinPoly) -> (BezierCurve, BezierCurve) {
    let zeros = BernsteinPoly::new(vec![0.0; p.coeffs().len()]).expect("zero polynomial");
    let b0 = BezierCurve::from_components(p.clone(), zeros).expect("equal degrees");
    (b0, curve(&[(0.0, 0.0), (0.0, 1.0)]))
}
