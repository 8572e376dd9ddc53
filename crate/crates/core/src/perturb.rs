//! Empirical check of the closed-form condition number.
//!
//! Every coefficient is moved by exactly `ε |c|`, with signs chosen so the
//! x-group and y-group contributions to the residual all agree in sign.
//! That realizes one corner `(±εμ₁, ±εμ₂)` of the first-order displacement
//! box. The perturbed system is re-solved by Newton from the original root
//! and the relative displacement is compared with `κ`.

use std::fmt;

use thiserror::Error;

use crate::conditioning::condition_report;
use crate::curve::BezierCurve;
use crate::error::{check_unit, Error};
use crate::intersect::{newton_refine, IntersectConfig, IntersectionRecord};

/// Below this the displacement is dominated by rounding in `f64`.
pub const RELIABLE_EPSILON: f64 = 1e-8;

pub const DEFAULT_EPSILONS: [f64; 4] = [1e-3, 1e-4, 1e-5, 1e-6];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PerturbError {
    #[error("condition number infinite for non-transversal intersections")]
    NonTransversal,
    #[error("relative displacement undefined for a root at the parameter origin")]
    ZeroRootNorm,
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("epsilon list must be non-empty, positive and strictly decreasing")]
    InvalidEpsilonList,
    #[error("expected {expected} perturbations, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Curve(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Signs of the x-group and y-group residual contributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignPattern(pub Sign, pub Sign);

impl SignPattern {
    pub const ALL: [SignPattern; 4] = [
        SignPattern(Sign::Plus, Sign::Plus),
        SignPattern(Sign::Plus, Sign::Minus),
        SignPattern(Sign::Minus, Sign::Plus),
        SignPattern(Sign::Minus, Sign::Minus),
    ];
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |s: Sign| if s == Sign::Plus { '+' } else { '-' };
        write!(f, "{}{}", c(self.0), c(self.1))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationTrial {
    pub epsilon: f64,
    pub sign_pattern: SignPattern,
    /// Root of the perturbed system, or the last Newton iterate.
    pub perturbed_root: (f64, f64),
    /// `‖δα‖₂ / (ε ‖(α, β)‖₂)`; NaN unless converged.
    pub ratio: f64,
    pub converged: bool,
}

/// Adds `deltas`, ordered as [`crate::conditioning::CoefficientVector`], to
/// the coefficients of both curves.
pub fn apply_perturbation(
    b0: &BezierCurve,
    b1: &BezierCurve,
    deltas: &[f64],
) -> Result<(BezierCurve, BezierCurve), PerturbError> {
    let (m1, n1) = (b0.degree() + 1, b1.degree() + 1);
    let expected = 2 * m1 + 2 * n1;
    if deltas.len() != expected {
        return Err(PerturbError::LengthMismatch {
            expected,
            got: deltas.len(),
        });
    }
    let (d0x, rest) = deltas.split_at(m1);
    let (d0y, rest) = rest.split_at(m1);
    let (d1x, d1y) = rest.split_at(n1);
    let p0 = b0.map_coords(|j, c| c + d0x[j], |j, c| c + d0y[j])?;
    let p1 = b1.map_coords(|j, c| c + d1x[j], |j, c| c + d1y[j])?;
    Ok((p0, p1))
}

/// Extremal perturbation `δ` with `|δ_j| = ε |c_j|`, in coefficient-vector
/// order. The `b1` groups enter `F` with a minus sign, so their deltas are
/// negated to keep each group's contribution aligned.
pub fn corner_deltas(
    b0: &BezierCurve,
    b1: &BezierCurve,
    epsilon: f64,
    pattern: SignPattern,
) -> Vec<f64> {
    let (sx, sy) = (pattern.0.value(), pattern.1.value());
    let group = |coeffs: &[f64], sign: f64| -> Vec<f64> {
        coeffs.iter().map(|c| sign * epsilon * c.abs()).collect()
    };
    [
        group(b0.x().coeffs(), sx),
        group(b0.y().coeffs(), sy),
        group(b1.x().coeffs(), -sx),
        group(b1.y().coeffs(), -sy),
    ]
    .concat()
}

/// Applies the corner perturbation for `pattern`. Zero coefficients stay
/// zero. The basis weights at `(alpha, beta)` are all nonnegative, so the
/// alignment does not depend on where in the unit square the root lies;
/// the parameters are only validated.
pub fn corner_perturb(
    b0: &BezierCurve,
    b1: &BezierCurve,
    alpha: f64,
    beta: f64,
    epsilon: f64,
    pattern: SignPattern,
) -> Result<(BezierCurve, BezierCurve), PerturbError> {
    check_unit("alpha", alpha)?;
    check_unit("beta", beta)?;
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(PerturbError::InvalidEpsilon(epsilon));
    }
    apply_perturbation(b0, b1, &corner_deltas(b0, b1, epsilon, pattern))
}

fn require_transversal(record: &IntersectionRecord) -> Result<f64, PerturbError> {
    if !record.transversal {
        return Err(PerturbError::NonTransversal);
    }
    let norm = record.alpha.hypot(record.beta);
    if norm == 0.0 {
        return Err(PerturbError::ZeroRootNorm);
    }
    Ok(norm)
}

// Re-solves from the unperturbed root. On failure the error carries the
// last iterate.
fn displaced_root(
    p0: &BezierCurve,
    p1: &BezierCurve,
    record: &IntersectionRecord,
) -> Result<(f64, f64), (f64, f64)> {
    let cfg = IntersectConfig::default();
    match newton_refine(p0, p1, record.alpha, record.beta, cfg.tol, cfg.max_iter) {
        Ok(sol) => Ok((sol.alpha, sol.beta)),
        Err(e) => Err(e
            .last_iterate()
            .map(|(a, b, _)| (a, b))
            .unwrap_or((record.alpha, record.beta))),
    }
}

/// Relative displacement for an arbitrary perturbation `deltas` of size
/// `epsilon`. `None` when the perturbed system does not converge.
pub fn displacement_ratio(
    b0: &BezierCurve,
    b1: &BezierCurve,
    record: &IntersectionRecord,
    deltas: &[f64],
    epsilon: f64,
) -> Result<Option<f64>, PerturbError> {
    let norm = require_transversal(record)?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(PerturbError::InvalidEpsilon(epsilon));
    }
    let (p0, p1) = apply_perturbation(b0, b1, deltas)?;
    Ok(displaced_root(&p0, &p1, record)
        .ok()
        .map(|(a, b)| (a - record.alpha).hypot(b - record.beta) / (epsilon * norm)))
}

/// The four corner trials at level `epsilon`, in [`SignPattern::ALL`] order.
pub fn empirical_ratio(
    b0: &BezierCurve,
    b1: &BezierCurve,
    record: &IntersectionRecord,
    epsilon: f64,
) -> Result<Vec<PerturbationTrial>, PerturbError> {
    let norm = require_transversal(record)?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(PerturbError::InvalidEpsilon(epsilon));
    }
    SignPattern::ALL
        .iter()
        .map(|&pattern| {
            let (p0, p1) = corner_perturb(b0, b1, record.alpha, record.beta, epsilon, pattern)?;
            let trial = match displaced_root(&p0, &p1, record) {
                Ok((a, b)) => PerturbationTrial {
                    epsilon,
                    sign_pattern: pattern,
                    perturbed_root: (a, b),
                    ratio: (a - record.alpha).hypot(b - record.beta) / (epsilon * norm),
                    converged: true,
                },
                Err(last) => PerturbationTrial {
                    epsilon,
                    sign_pattern: pattern,
                    perturbed_root: last,
                    ratio: f64::NAN,
                    converged: false,
                },
            };
            Ok(trial)
        })
        .collect()
}

/// Largest ratio among converged trials.
pub fn max_converged_ratio(trials: &[PerturbationTrial]) -> Option<f64> {
    trials
        .iter()
        .filter(|t| t.converged)
        .map(|t| t.ratio)
        .reduce(f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub epsilon: f64,
    /// `None` when no corner trial converged.
    pub max_ratio: Option<f64>,
    /// `epsilon` is below [`RELIABLE_EPSILON`].
    pub unreliable: bool,
    pub trials: Vec<PerturbationTrial>,
}

impl SweepRow {
    pub fn failed_trials(&self) -> usize {
        self.trials.iter().filter(|t| !t.converged).count()
    }
}

/// One row per `epsilon`, which must be positive and strictly decreasing.
pub fn convergence_sweep(
    b0: &BezierCurve,
    b1: &BezierCurve,
    record: &IntersectionRecord,
    eps_list: &[f64],
) -> Result<Vec<SweepRow>, PerturbError> {
    require_transversal(record)?;
    validate_epsilons(eps_list)?;
    eps_list
        .iter()
        .map(|&epsilon| {
            let trials = empirical_ratio(b0, b1, record, epsilon)?;
            Ok(SweepRow {
                epsilon,
                max_ratio: max_converged_ratio(&trials),
                unreliable: epsilon < RELIABLE_EPSILON,
                trials,
            })
        })
        .collect()
}

pub fn validate_epsilons(eps_list: &[f64]) -> Result<(), PerturbError> {
    let positive = eps_list.iter().all(|e| *e > 0.0 && e.is_finite());
    let decreasing = eps_list.windows(2).all(|w| w[0] > w[1]);
    if eps_list.is_empty() || !positive || !decreasing {
        return Err(PerturbError::InvalidEpsilonList);
    }
    Ok(())
}

/// Closed-form `κ` for the record, for comparison with the sweep.
pub fn closed_form_kappa(
    b0: &BezierCurve,
    b1: &BezierCurve,
    record: &IntersectionRecord,
) -> Result<f64, PerturbError> {
    require_transversal(record)?;
    Ok(condition_report(b0, b1, record)?.kappa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::intersect::find_intersections;

    fn root(b0: &BezierCurve, b1: &BezierCurve) -> IntersectionRecord {
        find_intersections(b0, b1, &IntersectConfig::default())
            .unwrap()
            .records
            .remove(0)
    }

    #[test]
    fn zero_epsilon_is_identity() {
        let (b0, b1) = fixtures::transversal_line_quadratic();
        for pattern in SignPattern::ALL {
            let (p0, p1) = corner_perturb(&b0, &b1, 0.5, 0.5, 0.0, pattern).unwrap();
            assert_eq!((p0, p1), (b0.clone(), b1.clone()));
        }
    }

    #[test]
    fn zero_coefficients_untouched() {
        let z = BezierCurve::from_xy(&[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]).unwrap();
        let (p0, p1) = corner_perturb(&z, &z, 0.2, 0.7, 0.5, SignPattern::ALL[1]).unwrap();
        assert_eq!((p0, p1), (z.clone(), z));
    }

    #[test]
    fn corner_signs_follow_groups() {
        let (b0, b1) = fixtures::transversal_line_quadratic();
        let eps = 0.5;
        let (p0, p1) = corner_perturb(
            &b0,
            &b1,
            0.5,
            0.5,
            eps,
            SignPattern(Sign::Plus, Sign::Minus),
        )
        .unwrap();
        // b0.x = [0, 2] -> [0, 3]; b0.y = [0, 2] -> [0, 1]
        assert_eq!(p0.x().coeffs(), &[0.0, 3.0]);
        assert_eq!(p0.y().coeffs(), &[0.0, 1.0]);
        // b1.x = [0, 0, 4] -> [0, 0, 2]; b1.y = [2, 2, -2] -> [3, 3, -1]
        assert_eq!(p1.x().coeffs(), &[0.0, 0.0, 2.0]);
        assert_eq!(p1.y().coeffs(), &[3.0, 3.0, -1.0]);
    }

    #[test]
    fn perturbation_length_checked() {
        let (b0, b1) = fixtures::transversal_line_quadratic();
        assert_eq!(
            apply_perturbation(&b0, &b1, &[0.0; 3]),
            Err(PerturbError::LengthMismatch {
                expected: 10,
                got: 3
            })
        );
    }

    #[test]
    fn corner_ratio_approaches_kappa() {
        let (b0, b1) = fixtures::transversal_line_quadratic();
        let rec = root(&b0, &b1);
        let kappa = closed_form_kappa(&b0, &b1, &rec).unwrap();
        let trials = empirical_ratio(&b0, &b1, &rec, 1e-6).unwrap();
        assert_eq!(trials.len(), 4);
        assert!(trials.iter().all(|t| t.converged && t.ratio.is_finite()));
        let best = max_converged_ratio(&trials).unwrap();
        assert!((best - kappa).abs() <= 1e-2 * kappa);
    }

    #[test]
    fn sweep_rows_and_errors() {
        let (b0, b1) = fixtures::transversal_line_quadratic();
        let rec = root(&b0, &b1);
        let rows = convergence_sweep(&b0, &b1, &rec, &DEFAULT_EPSILONS).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| !r.unreliable && r.failed_trials() == 0));
        let single = convergence_sweep(&b0, &b1, &rec, &[1e-9]).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single[0].unreliable);

        assert_eq!(
            convergence_sweep(&b0, &b1, &rec, &[1e-4, 1e-3]),
            Err(PerturbError::InvalidEpsilonList)
        );
        assert_eq!(
            convergence_sweep(&b0, &b1, &rec, &[]),
            Err(PerturbError::InvalidEpsilonList)
        );

        let (t0, t1) = fixtures::tangent_parabola();
        let tangent =
            IntersectionRecord::at(&t0, &t1, 0.5, 0.5, &IntersectConfig::default()).unwrap();
        let err = convergence_sweep(&t0, &t1, &tangent, &[1e-3]).unwrap_err();
        assert_eq!(err, PerturbError::NonTransversal);
        assert_eq!(
            err.to_string(),
            "condition number infinite for non-transversal intersections"
        );
    }

    #[test]
    fn failed_trials_are_excluded() {
        let trials = vec![
            PerturbationTrial {
                epsilon: 1e-3,
                sign_pattern: SignPattern::ALL[0],
                perturbed_root: (0.0, 0.0),
                ratio: f64::NAN,
                converged: false,
            },
            PerturbationTrial {
                epsilon: 1e-3,
                sign_pattern: SignPattern::ALL[1],
                perturbed_root: (0.0, 0.0),
                ratio: 2.0,
                converged: true,
            },
        ];
        assert_eq!(max_converged_ratio(&trials), Some(2.0));
        assert_eq!(max_converged_ratio(&trials[..1]), None);
    }

    #[test]
    fn pattern_display() {
        let shown: Vec<String> = SignPattern::ALL.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["++", "+-", "-+", "--"]);
    }
}
