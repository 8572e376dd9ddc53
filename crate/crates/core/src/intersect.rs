//! Roots of `F(s, t) = b0(s) - b1(t)` on the unit square.
//!
//! Candidates are bracketed by recursive halving of both curves, pruning
//! pairs whose control-point boxes are disjoint. Once both pieces of a pair
//! are close to uniformly parameterized segments, the chord intersection
//! seeds a Newton iteration on the full curves.
//!
//! Tangent and coincident configurations are never "solved". They surface
//! as records with `transversal == false` plus a [`Diagnostic`].

use std::cmp::Ordering;
use std::fmt;

use crate::curve::{BezierCurve, ParamBox};
use crate::error::{check_unit, Error, Result};
use crate::linalg::{Mat2, Vec2};

/// Solver settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectConfig {
    /// Newton step tolerance in parameter space. The residual tolerance is
    /// `tol * max(1, largest |coordinate|)`.
    pub tol: f64,
    pub max_depth: usize,
    pub max_iter: usize,
    /// Records closer than this in `(s, t)` are merged.
    pub dedup_radius: f64,
    /// A root is transversal when `|det J| > floor * (max |J_ij|)²`.
    pub transversality_floor: f64,
    /// Upper bound on live box pairs at one subdivision level. Exceeding it
    /// means the curves overlap along a stretch.
    pub max_candidates: usize,
}

impl Default for IntersectConfig {
    fn default() -> Self {
        IntersectConfig {
            tol: 1e-12,
            max_depth: 40,
            max_iter: 25,
            dedup_radius: 1e-8,
            transversality_floor: 1e-9,
            max_candidates: 1 << 12,
        }
    }
}

/// Pieces whose flatness falls below this (relative to the coordinate
/// scale) are treated as segments.
const FLATNESS_TOL: f64 = 1e-7;

/// A root `(alpha, beta)` of `F` with its Jacobian.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionRecord {
    pub alpha: f64,
    pub beta: f64,
    /// `b0(alpha)`.
    pub point: Vec2,
    pub jacobian: Mat2,
    pub det_j: f64,
    pub transversal: bool,
    /// `‖F(alpha, beta)‖₂`.
    pub residual: f64,
}

impl IntersectionRecord {
    /// Builds a record at `(alpha, beta)`. `transversal` is decided from the
    /// determinant floor only.
    pub fn at(
        b0: &BezierCurve,
        b1: &BezierCurve,
        alpha: f64,
        beta: f64,
        config: &IntersectConfig,
    ) -> Result<Self> {
        let jac = jacobian(b0, b1, alpha, beta)?;
        let det_j = jac.det();
        Ok(IntersectionRecord {
            alpha,
            beta,
            point: b0.eval_point(alpha)?,
            jacobian: jac,
            det_j,
            transversal: is_transversal(&jac, config.transversality_floor),
            residual: f_value(b0, b1, alpha, beta)?.hypot(),
        })
    }
}

/// `|det J| > floor * (max |J_ij|)²`.
pub fn is_transversal(jac: &Mat2, floor: f64) -> bool {
    let scale = jac.max_abs();
    jac.det().abs() > floor * scale * scale
}

/// `F(s, t) = b0(s) - b1(t)`.
pub fn f_value(b0: &BezierCurve, b1: &BezierCurve, s: f64, t: f64) -> Result<Vec2> {
    check_unit("s", s)?;
    check_unit("t", t)?;
    Ok(b0.eval_point(s)? - b1.eval_point(t)?)
}

/// `J(s, t) = [b0'(s) | -b1'(t)]`, column-wise.
pub fn jacobian(b0: &BezierCurve, b1: &BezierCurve, s: f64, t: f64) -> Result<Mat2> {
    if b0.degree() == 0 || b1.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    let d0 = b0.hodograph().eval_point(s)?;
    let d1 = b1.hodograph().eval_point(t)?;
    Ok(Mat2::from_cols(d0, -d1))
}

/// Residual tolerance used with step tolerance `tol`.
pub fn residual_tolerance(b0: &BezierCurve, b1: &BezierCurve, tol: f64) -> f64 {
    tol * b0.max_abs_coord().max(b1.max_abs_coord()).max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonSolution {
    pub alpha: f64,
    pub beta: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Newton failure. Both variants carry the last iterate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NewtonError {
    #[error("singular Jacobian at ({alpha}, {beta}): non-transversal vicinity")]
    Singular {
        alpha: f64,
        beta: f64,
        residual: f64,
    },
    #[error("no convergence; last iterate ({alpha}, {beta}) with residual {residual}")]
    NoConvergence {
        alpha: f64,
        beta: f64,
        residual: f64,
    },
    #[error(transparent)]
    Input(#[from] Error),
}

impl NewtonError {
    /// Last iterate and its residual, if the iteration ran.
    pub fn last_iterate(&self) -> Option<(f64, f64, f64)> {
        match *self {
            NewtonError::Singular {
                alpha,
                beta,
                residual,
            }
            | NewtonError::NoConvergence {
                alpha,
                beta,
                residual,
            } => Some((alpha, beta, residual)),
            NewtonError::Input(_) => None,
        }
    }
}

/// Newton's method on `F`, iterates clamped to the unit square.
///
/// Succeeds when a step of 2-norm `<= tol` lands on a point whose residual
/// is within [`residual_tolerance`]. A tiny step with a large residual
/// (stuck against the boundary) is reported as no convergence.
pub fn newton_refine(
    b0: &BezierCurve,
    b1: &BezierCurve,
    s0: f64,
    t0: f64,
    tol: f64,
    max_iter: usize,
) -> std::result::Result<NewtonSolution, NewtonError> {
    check_unit("s0", s0)?;
    check_unit("t0", t0)?;
    let res_tol = residual_tolerance(b0, b1, tol);
    let (mut s, mut t) = (s0, t0);
    let mut residual = f_value(b0, b1, s, t)?.hypot();
    for iteration in 1..=max_iter {
        let f = f_value(b0, b1, s, t)?;
        let inv = jacobian(b0, b1, s, t)?
            .inverse()
            .ok_or(NewtonError::Singular {
                alpha: s,
                beta: t,
                residual,
            })?;
        let delta = inv.mul_vec(f);
        let ns = (s - delta.x).clamp(0.0, 1.0);
        let nt = (t - delta.y).clamp(0.0, 1.0);
        let step = (ns - s).hypot(nt - t);
        s = ns;
        t = nt;
        residual = f_value(b0, b1, s, t)?.hypot();
        if step <= tol {
            if residual <= res_tol {
                return Ok(NewtonSolution {
                    alpha: s,
                    beta: t,
                    iterations: iteration,
                    residual,
                });
            }
            break;
        }
    }
    Err(NewtonError::NoConvergence {
        alpha: s,
        beta: t,
        residual,
    })
}

/// Why a result may be incomplete or involve a non-simple root.
#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostic {
    /// A root was located but Newton did not converge quadratically or the
    /// Jacobian determinant is below the floor.
    NonTransversalRoot { alpha: f64, beta: f64 },
    /// Too many overlapping box pairs at one level.
    CandidateOverflow { depth: usize, candidates: usize },
    /// Box pairs still overlapping and not flat at `max_depth`.
    DepthExhausted { unresolved: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NonTransversalRoot { alpha, beta } => write!(
                f,
                "possibly coincident or tangent: non-transversal root near ({alpha}, {beta})"
            ),
            Diagnostic::CandidateOverflow { depth, candidates } => write!(
                f,
                "possibly coincident or tangent: {candidates} overlapping pieces at depth {depth}"
            ),
            Diagnostic::DepthExhausted { unresolved } => write!(
                f,
                "possibly coincident or tangent: {unresolved} unresolved pieces at maximum depth"
            ),
        }
    }
}

/// Output of [`find_intersections`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Intersections {
    /// Sorted by `(alpha, beta)`.
    pub records: Vec<IntersectionRecord>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Intersections {
    pub fn transversal(&self) -> impl Iterator<Item = &IntersectionRecord> {
        self.records.iter().filter(|r| r.transversal)
    }
}

struct Pair {
    c0: BezierCurve,
    p0: ParamBox,
    c1: BezierCurve,
    p1: ParamBox,
}

/// Finds every intersection of `b0` and `b1` over `[0, 1]²`.
pub fn find_intersections(
    b0: &BezierCurve,
    b1: &BezierCurve,
    config: &IntersectConfig,
) -> Result<Intersections> {
    if b0.degree() == 0 || b1.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    let scale = b0.max_abs_coord().max(b1.max_abs_coord()).max(1.0);
    let slack = 1e-12 * scale;
    let flat_tol = FLATNESS_TOL * scale;
    let mut diagnostics = Vec::new();
    let mut seeds: Vec<(f64, f64)> = Vec::new();

    let mut level = vec![Pair {
        c0: b0.clone(),
        p0: ParamBox::UNIT,
        c1: b1.clone(),
        p1: ParamBox::UNIT,
    }];
    let mut depth = 0;
    while !level.is_empty() {
        let mut next = Vec::new();
        let mut unresolved = 0;
        for pair in level {
            if !pair
                .c0
                .bounding_box()
                .overlaps(&pair.c1.bounding_box(), slack)
            {
                continue;
            }
            let flat0 = pair.c0.flatness() <= flat_tol;
            let flat1 = pair.c1.flatness() <= flat_tol;
            if (flat0 && flat1) || depth == config.max_depth {
                if !(flat0 && flat1) {
                    unresolved += 1;
                }
                seeds.push(chord_seed(&pair));
                continue;
            }
            let halves0 = split_unless_flat(&pair.c0, pair.p0, flat0);
            let halves1 = split_unless_flat(&pair.c1, pair.p1, flat1);
            for (c0, p0) in &halves0 {
                for (c1, p1) in &halves1 {
                    next.push(Pair {
                        c0: c0.clone(),
                        p0: *p0,
                        c1: c1.clone(),
                        p1: *p1,
                    });
                }
            }
        }
        if unresolved > 0 {
            diagnostics.push(Diagnostic::DepthExhausted { unresolved });
        }
        depth += 1;
        if next.len() > config.max_candidates {
            diagnostics.push(Diagnostic::CandidateOverflow {
                depth,
                candidates: next.len(),
            });
            break;
        }
        level = next;
    }

    let res_tol = residual_tolerance(b0, b1, config.tol);
    let mut records: Vec<IntersectionRecord> = Vec::new();
    for (s0, t0) in seeds {
        let record = match newton_refine(b0, b1, s0, t0, config.tol, config.max_iter) {
            Ok(sol) => IntersectionRecord::at(b0, b1, sol.alpha, sol.beta, config)?,
            Err(err) => match err.last_iterate() {
                Some((alpha, beta, residual)) if residual <= res_tol => {
                    let mut rec = IntersectionRecord::at(b0, b1, alpha, beta, config)?;
                    rec.transversal = false;
                    rec
                }
                _ => continue,
            },
        };
        merge_record(&mut records, record, config.dedup_radius);
    }
    records.sort_by(cmp_params);
    for r in records.iter().filter(|r| !r.transversal) {
        diagnostics.push(Diagnostic::NonTransversalRoot {
            alpha: r.alpha,
            beta: r.beta,
        });
    }
    Ok(Intersections {
        records,
        diagnostics,
    })
}

fn split_unless_flat(c: &BezierCurve, p: ParamBox, flat: bool) -> Vec<(BezierCurve, ParamBox)> {
    if flat {
        return vec![(c.clone(), p)];
    }
    let (cl, cr) = c.subdivide();
    let (pl, pr) = p.split();
    vec![(cl, pl), (cr, pr)]
}

// Intersection of the two chords, in global parameters. Parallel chords
// seed from the box centers.
fn chord_seed(pair: &Pair) -> (f64, f64) {
    let first = |c: &BezierCurve| c.control_points().next().unwrap_or(Vec2::ZERO);
    let last = |c: &BezierCurve| c.control_points().last().unwrap_or(Vec2::ZERO);
    let (a0, a1) = (first(&pair.c0), last(&pair.c0));
    let (q0, q1) = (first(&pair.c1), last(&pair.c1));
    let m = Mat2::from_cols(a1 - a0, -(q1 - q0));
    let (u, v) = match m.inverse() {
        Some(inv) => {
            let uv = inv.mul_vec(q0 - a0);
            (uv.x.clamp(0.0, 1.0), uv.y.clamp(0.0, 1.0))
        }
        None => (0.5, 0.5),
    };
    let (u, v) = if u.is_finite() && v.is_finite() {
        (u, v)
    } else {
        (0.5, 0.5)
    };
    (pair.p0.global(u), pair.p1.global(v))
}

fn cmp_params(a: &IntersectionRecord, b: &IntersectionRecord) -> Ordering {
    a.alpha
        .total_cmp(&b.alpha)
        .then_with(|| a.beta.total_cmp(&b.beta))
}

// Keeps one record per cluster: a transversal record beats a non-transversal
// one, then the smaller residual wins, then the smaller parameters.
fn merge_record(records: &mut Vec<IntersectionRecord>, record: IntersectionRecord, radius: f64) {
    let near = records
        .iter()
        .position(|r| (r.alpha - record.alpha).hypot(r.beta - record.beta) <= radius);
    match near {
        None => records.push(record),
        Some(i) => {
            let incumbent = &records[i];
            let better = (record.transversal, -record.residual)
                .partial_cmp(&(incumbent.transversal, -incumbent.residual))
                .unwrap_or(Ordering::Equal)
                .then_with(|| cmp_params(incumbent, &record));
            if better == Ordering::Greater {
                records[i] = record;
            }
        }
    }
}
