//! Root condition numbers for curve intersections.
//!
//! The intersection map is written over the basis
//!
//! ```text
//! F(s, t) = Σ c¹_i [B_{i,m}(s), 0] + Σ c²_i [0, B_{i,m}(s)]
//!         + Σ c³_j [-B_{j,n}(t), 0] + Σ c⁴_j [0, -B_{j,n}(t)]
//! ```
//!
//! where `c¹, c²` are the x and y control coordinates of `b0` and `c³, c⁴`
//! those of `b1`. Under componentwise perturbations `|δc| <= ε|c|` the first
//! order root displacement is `ν₁ v + ν₂ w` with `J⁻¹ = [v w]`,
//! `|ν₁| <= ε μ₁` and `|ν₂| <= ε μ₂`. The supremum of its 2-norm sits at a
//! corner of that rectangle, which gives [`kappa`].
//!
//! [`kappa_higham`] bounds the whole perturbation vector by a 2-norm ball
//! instead. It allows perturbing zero coefficients and is never smaller than
//! [`kappa`]; both are reported.

use serde::{Deserialize, Serialize};

use crate::bernstein::{basis_weights, squared_weight_sum, BernsteinPoly};
use crate::curve::BezierCurve;
use crate::error::{check_unit, Error, Result};
use crate::intersect::IntersectionRecord;
use crate::linalg::{Mat2, Vec2};

/// Reasons a condition number is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Flag {
    /// `det J` vanishes (or is below the transversality floor).
    NonTransversal,
    /// `(α, β) = (0, 0)`; only the absolute number is meaningful.
    ZeroRootNorm,
}

/// Everything computed for one intersection.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub alpha: f64,
    pub beta: f64,
    pub mu1: f64,
    pub mu2: f64,
    /// Columns of `J⁻¹`, absent when `J` is exactly singular.
    pub v: Option<Vec2>,
    pub w: Option<Vec2>,
    /// Sum of squared basis weights at `(α, β)`.
    pub weight_sum: f64,
    /// Relative 2-norm root condition number; `+∞` when flagged.
    pub kappa: f64,
    /// `kappa * ‖(α, β)‖₂`.
    pub kappa_abs: f64,
    pub kappa_higham: f64,
    /// Sorted, without duplicates.
    pub flags: Vec<Flag>,
}

impl ConditionReport {
    pub fn is_finite(&self) -> bool {
        self.flags.is_empty()
    }
}

/// `μ₁ = x̃₀(α) + x̃₁(β)`, `μ₂ = ỹ₀(α) + ỹ₁(β)`.
pub fn mu_values(b0: &BezierCurve, b1: &BezierCurve, alpha: f64, beta: f64) -> Result<(f64, f64)> {
    check_unit("alpha", alpha)?;
    check_unit("beta", beta)?;
    let mu1 = b0.x().p_tilde(alpha)? + b1.x().p_tilde(beta)?;
    let mu2 = b0.y().p_tilde(alpha)? + b1.y().p_tilde(beta)?;
    Ok((mu1, mu2))
}

/// Columns `(v, w)` of `J⁻¹`, or `None` for a singular `J`.
pub fn inverse_jacobian_columns(jac: &Mat2) -> Option<(Vec2, Vec2)> {
    jac.inverse().map(|inv| (inv.col(0), inv.col(1)))
}

/// Relative and absolute closed-form condition numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaValue {
    /// `absolute / ‖(α, β)‖₂`, infinite at the origin.
    pub relative: f64,
    /// `sqrt(μ₁² v·v + 2 μ₁ μ₂ |v·w| + μ₂² w·w)`.
    pub absolute: f64,
    pub zero_root_norm: bool,
}

pub fn kappa(alpha: f64, beta: f64, v: Vec2, w: Vec2, mu1: f64, mu2: f64) -> KappaValue {
    let absolute =
        (mu1 * mu1 * v.dot(v) + 2.0 * mu1 * mu2 * v.dot(w).abs() + mu2 * mu2 * w.dot(w)).sqrt();
    let norm = alpha.hypot(beta);
    if norm == 0.0 {
        KappaValue {
            relative: f64::INFINITY,
            absolute,
            zero_root_norm: true,
        }
    } else {
        KappaValue {
            relative: absolute / norm,
            absolute,
            zero_root_norm: false,
        }
    }
}

/// The coefficients of both curves in the fixed order
/// `c¹ (b0.x), c² (b0.y), c³ (b1.x), c⁴ (b1.y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    values: Vec<f64>,
    m: usize,
    n: usize,
}

impl CoefficientVector {
    pub fn from_curves(b0: &BezierCurve, b1: &BezierCurve) -> Self {
        let values = [b0.x(), b0.y(), b1.x(), b1.y()]
            .iter()
            .flat_map(|p| p.coeffs().iter().copied())
            .collect();
        CoefficientVector {
            values,
            m: b0.degree(),
            n: b1.degree(),
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// A 2 × N matrix with columns ordered as in [`CoefficientVector`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    pub rows: [Vec<f64>; 2],
}

impl CoefficientMatrix {
    pub fn columns(&self) -> usize {
        self.rows[0].len()
    }

    pub fn left_mul(&self, a: &Mat2) -> CoefficientMatrix {
        let combine = |i: usize| -> Vec<f64> {
            self.rows[0]
                .iter()
                .zip(&self.rows[1])
                .map(|(&r0, &r1)| a.rows[i][0] * r0 + a.rows[i][1] * r1)
                .collect()
        };
        CoefficientMatrix {
            rows: [combine(0), combine(1)],
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .map(|e| e * e)
            .sum::<f64>()
            .sqrt()
    }
}

/// `F_c = ∂F/∂c` at `(α, β)`. Each column has a single nonzero row.
pub fn coefficient_jacobian(
    b0: &BezierCurve,
    b1: &BezierCurve,
    alpha: f64,
    beta: f64,
) -> Result<CoefficientMatrix> {
    let ba = basis_weights(b0.degree(), alpha)?;
    let bb = basis_weights(b1.degree(), beta)?;
    let zeros = |k: usize| std::iter::repeat_n(0.0, k);
    let (m1, n1) = (ba.len(), bb.len());
    let neg_bb = || bb.iter().map(|b| -b);
    let row_x: Vec<f64> = ba
        .iter()
        .copied()
        .chain(zeros(m1))
        .chain(neg_bb())
        .chain(zeros(n1))
        .collect();
    let row_y: Vec<f64> = zeros(m1)
        .chain(ba.iter().copied())
        .chain(zeros(n1))
        .chain(neg_bb())
        .collect();
    Ok(CoefficientMatrix {
        rows: [row_x, row_y],
    })
}

/// `‖J⁻¹ F_c‖_F` via `sqrt((v·v + w·w) W)`.
pub fn frobenius_closed_form(v: Vec2, w: Vec2, weight_sum: f64) -> f64 {
    ((v.dot(v) + w.dot(w)) * weight_sum).sqrt()
}

/// Norm-ball condition number and its ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighamKappa {
    /// `‖J⁻¹ F_c‖_F ‖c‖₂ / ‖(α, β)‖₂` from the explicit matrix.
    pub relative: f64,
    pub frobenius_explicit: f64,
    pub frobenius_closed_form: f64,
    pub coefficient_norm: f64,
}

pub fn kappa_higham(
    b0: &BezierCurve,
    b1: &BezierCurve,
    alpha: f64,
    beta: f64,
    j_inv: &Mat2,
) -> Result<HighamKappa> {
    let fc = coefficient_jacobian(b0, b1, alpha, beta)?;
    let frobenius_explicit = fc.left_mul(j_inv).frobenius_norm();
    let weight_sum = squared_weight_sum(b0.degree(), b1.degree(), alpha, beta)?;
    let frobenius_closed = frobenius_closed_form(j_inv.col(0), j_inv.col(1), weight_sum);
    let coefficient_norm = CoefficientVector::from_curves(b0, b1).norm();
    let norm = alpha.hypot(beta);
    let relative = if norm == 0.0 {
        f64::INFINITY
    } else {
        frobenius_explicit * coefficient_norm / norm
    };
    Ok(HighamKappa {
        relative,
        frobenius_explicit,
        frobenius_closed_form: frobenius_closed,
        coefficient_norm,
    })
}

/// Scalar case `κ = p̃(α) / |α p'(α)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarKappa {
    pub value: f64,
    /// `NonTransversal` stands for a multiple root here.
    pub flags: Vec<Flag>,
}

pub fn kappa_1d(p: &BernsteinPoly, alpha: f64) -> Result<ScalarKappa> {
    check_unit("alpha", alpha)?;
    let mut flags = Vec::new();
    let slope = p.derivative().eval(alpha)?;
    if slope == 0.0 {
        flags.push(Flag::NonTransversal);
    }
    if alpha == 0.0 {
        flags.push(Flag::ZeroRootNorm);
    }
    let value = if flags.is_empty() {
        p.p_tilde(alpha)? / (alpha * slope).abs()
    } else {
        f64::INFINITY
    };
    Ok(ScalarKappa { value, flags })
}

/// Full report for a record found on `b0`, `b1`.
pub fn condition_report(
    b0: &BezierCurve,
    b1: &BezierCurve,
    record: &IntersectionRecord,
) -> Result<ConditionReport> {
    let (alpha, beta) = (record.alpha, record.beta);
    if b0.degree() == 0 || b1.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    let (mu1, mu2) = mu_values(b0, b1, alpha, beta)?;
    let weight_sum = squared_weight_sum(b0.degree(), b1.degree(), alpha, beta)?;
    let inv = record.jacobian.inverse();
    let columns = inv.map(|m| (m.col(0), m.col(1)));

    let mut flags = Vec::new();
    if !record.transversal || inv.is_none() {
        flags.push(Flag::NonTransversal);
    }
    if alpha.hypot(beta) == 0.0 {
        flags.push(Flag::ZeroRootNorm);
    }

    let (kappa_rel, kappa_abs, kappa_h) = match (inv, columns) {
        (Some(inv), Some((v, w))) if record.transversal => {
            let k = kappa(alpha, beta, v, w, mu1, mu2);
            let h = kappa_higham(b0, b1, alpha, beta, &inv)?;
            (k.relative, k.absolute, h.relative)
        }
        _ => (f64::INFINITY, f64::INFINITY, f64::INFINITY),
    };

    Ok(ConditionReport {
        alpha,
        beta,
        mu1,
        mu2,
        v: columns.map(|c| c.0),
        w: columns.map(|c| c.1),
        weight_sum,
        kappa: kappa_rel,
        kappa_abs,
        kappa_higham: kappa_h,
        flags,
    })
}
