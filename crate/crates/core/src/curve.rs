//! Planar Bézier curves.

use crate::bernstein::BernsteinPoly;
use crate::error::{check_unit, Error, Result};
use crate::linalg::Vec2;

/// `b(s) = Σ b_j B_{j,n}(s)` with control points `b_j ∈ R²`.
///
/// Stored as the two coordinate polynomials, so the component views used by
/// the conditioning code are the control-point coordinates themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierCurve {
    x: BernsteinPoly,
    y: BernsteinPoly,
}

impl BezierCurve {
    pub fn new(points: &[Vec2]) -> Result<Self> {
        let x = BernsteinPoly::new(points.iter().map(|p| p.x).collect())?;
        let y = BernsteinPoly::new(points.iter().map(|p| p.y).collect())?;
        Ok(BezierCurve { x, y })
    }

    /// Convenience constructor from coordinate pairs.
    pub fn from_xy(points: &[(f64, f64)]) -> Result<Self> {
        let pts: Vec<Vec2> = points.iter().map(|&(x, y)| Vec2::new(x, y)).collect();
        Self::new(&pts)
    }

    pub fn from_components(x: BernsteinPoly, y: BernsteinPoly) -> Result<Self> {
        if x.degree() != y.degree() {
            return Err(Error::LengthMismatch {
                x: x.coeffs().len(),
                y: y.coeffs().len(),
            });
        }
        Ok(BezierCurve { x, y })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.x.degree()
    }

    #[inline]
    pub fn x(&self) -> &BernsteinPoly {
        &self.x
    }

    #[inline]
    pub fn y(&self) -> &BernsteinPoly {
        &self.y
    }

    pub fn control_points(&self) -> impl ExactSizeIterator<Item = Vec2> + '_ {
        self.x
            .coeffs()
            .iter()
            .zip(self.y.coeffs())
            .map(|(&x, &y)| Vec2::new(x, y))
    }

    /// Largest absolute control-point coordinate.
    pub fn max_abs_coord(&self) -> f64 {
        self.x
            .coeffs()
            .iter()
            .chain(self.y.coeffs())
            .fold(0.0_f64, |acc, c| acc.max(c.abs()))
    }

    pub fn eval_point(&self, s: f64) -> Result<Vec2> {
        Ok(Vec2::new(self.x.eval(s)?, self.y.eval(s)?))
    }

    /// The derivative curve. Degree-0 input gives the zero curve.
    pub fn hodograph(&self) -> BezierCurve {
        BezierCurve {
            x: self.x.derivative(),
            y: self.y.derivative(),
        }
    }

    /// de Casteljau split at `s = 1/2`.
    pub fn subdivide(&self) -> (BezierCurve, BezierCurve) {
        let (xl, xr) = self.x.split_half();
        let (yl, yr) = self.y.split_half();
        (BezierCurve { x: xl, y: yl }, BezierCurve { x: xr, y: yr })
    }

    /// Axis-aligned box of the control points. Contains the curve for
    /// every `s ∈ [0, 1]` by the convex hull property.
    pub fn bounding_box(&self) -> BoundingBox {
        let mut bb = BoundingBox {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for p in self.control_points() {
            bb.min_x = bb.min_x.min(p.x);
            bb.min_y = bb.min_y.min(p.y);
            bb.max_x = bb.max_x.max(p.x);
            bb.max_y = bb.max_y.max(p.y);
        }
        bb
    }

    /// Distance from the curve to its uniformly parameterized chord,
    /// bounded by the control points: `max_j |b_j - lerp(b_0, b_n, j/n)|`.
    ///
    /// Zero exactly when the curve is a line traversed at constant speed.
    pub fn flatness(&self) -> f64 {
        let pts: Vec<Vec2> = self.control_points().collect();
        let n = pts.len() - 1;
        if n == 0 {
            return 0.0;
        }
        let (first, last) = (pts[0], pts[n]);
        pts.iter()
            .enumerate()
            .map(|(j, &p)| (p - first.lerp(last, j as f64 / n as f64)).hypot())
            .fold(0.0, f64::max)
    }

    /// Applies `f(index, coordinate)` to every x and y coefficient.
    pub(crate) fn map_coords(
        &self,
        fx: impl Fn(usize, f64) -> f64,
        fy: impl Fn(usize, f64) -> f64,
    ) -> Result<BezierCurve> {
        Ok(BezierCurve {
            x: self.x.map(fx)?,
            y: self.y.map(fy)?,
        })
    }
}

/// `(x_min, y_min, x_max, y_max)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl BoundingBox {
    /// Closed-box overlap test, each box grown by `slack`.
    pub fn overlaps(&self, other: &BoundingBox, slack: f64) -> bool {
        self.min_x <= other.max_x + slack
            && other.min_x <= self.max_x + slack
            && self.min_y <= other.max_y + slack
            && other.min_y <= self.max_y + slack
    }

    pub fn contains(&self, p: Vec2, slack: f64) -> bool {
        p.x >= self.min_x - slack
            && p.x <= self.max_x + slack
            && p.y >= self.min_y - slack
            && p.y <= self.max_y + slack
    }

    pub fn as_tuple(&self) -> (f64, f64, f64, f64) {
        (self.min_x, self.min_y, self.max_x, self.max_y)
    }
}

/// A parameter sub-interval `[lo, hi]` of a curve's domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamBox {
    lo: f64,
    hi: f64,
}

impl ParamBox {
    pub const UNIT: ParamBox = ParamBox { lo: 0.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        check_unit("lo", lo)?;
        check_unit("hi", hi)?;
        if lo >= hi {
            return Err(Error::Domain {
                name: "hi",
                value: hi,
            });
        }
        Ok(ParamBox { lo, hi })
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Maps a local parameter `u ∈ [0, 1]` into this box.
    #[inline]
    pub fn global(&self, u: f64) -> f64 {
        (self.lo + u * self.width()).clamp(self.lo, self.hi)
    }

    pub fn split(&self) -> (ParamBox, ParamBox) {
        let mid = 0.5 * (self.lo + self.hi);
        (
            ParamBox {
                lo: self.lo,
                hi: mid,
            },
            ParamBox {
                lo: mid,
                hi: self.hi,
            },
        )
    }
}
