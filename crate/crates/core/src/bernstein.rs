//! Scalar polynomials in Bernstein form on the unit interval.
//!
//! Evaluation always goes through the de Casteljau recurrence. Parameters
//! outside `[0, 1]` are rejected rather than extrapolated: the evaluation
//! condition polynomial `p̃` is only meaningful on the unit interval, where
//! every basis weight is nonnegative.

use crate::error::{check_unit, Error, Result};

/// Largest degree accepted anywhere in the crate.
pub const MAX_DEGREE: usize = 30;

/// `p(s) = Σ p_j B_{j,n}(s)` with `n = coefficients.len() - 1`.
///
/// The degree is representational: trailing zero coefficients are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinPoly {
    coeffs: Vec<f64>,
}

impl BernsteinPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        if coeffs.len() - 1 > MAX_DEGREE {
            return Err(Error::DegreeTooHigh {
                degree: coeffs.len() - 1,
                max: MAX_DEGREE,
            });
        }
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(BernsteinPoly { coeffs })
    }

    /// The zero polynomial of degree 0.
    pub fn zero() -> Self {
        BernsteinPoly { coeffs: vec![0.0] }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Value at `s` by de Casteljau. At `s = 0` and `s = 1` this returns the
    /// first and last coefficient exactly.
    pub fn eval(&self, s: f64) -> Result<f64> {
        check_unit("s", s)?;
        Ok(de_casteljau(&self.coeffs, s))
    }

    /// Evaluation condition polynomial `p̃(s) = Σ |p_j| B_{j,n}(s)`.
    pub fn p_tilde(&self, s: f64) -> Result<f64> {
        check_unit("s", s)?;
        let abs: Vec<f64> = self.coeffs.iter().map(|c| c.abs()).collect();
        Ok(de_casteljau(&abs, s))
    }

    /// Derivative as a degree `n - 1` polynomial with coefficients
    /// `n (p_{j+1} - p_j)`. A degree-0 input yields the zero polynomial.
    pub fn derivative(&self) -> BernsteinPoly {
        let n = self.degree();
        if n == 0 {
            return BernsteinPoly::zero();
        }
        let scale = n as f64;
        let coeffs = self
            .coeffs
            .windows(2)
            .map(|w| scale * (w[1] - w[0]))
            .collect();
        BernsteinPoly { coeffs }
    }

    /// Coefficient-wise map, keeping the degree.
    pub(crate) fn map(&self, f: impl Fn(usize, f64) -> f64) -> Result<BernsteinPoly> {
        BernsteinPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| f(j, c))
                .collect(),
        )
    }

    /// Splits at `s = 1/2` into the polynomials reparameterized on
    /// `[0, 1/2]` and `[1/2, 1]`.
    pub(crate) fn split_half(&self) -> (BernsteinPoly, BernsteinPoly) {
        let n = self.coeffs.len();
        let mut work = self.coeffs.clone();
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        left.push(work[0]);
        right.push(work[n - 1]);
        for level in 1..n {
            for j in 0..n - level {
                work[j] = 0.5 * (work[j] + work[j + 1]);
            }
            left.push(work[0]);
            right.push(work[n - 1 - level]);
        }
        right.reverse();
        (
            BernsteinPoly { coeffs: left },
            BernsteinPoly { coeffs: right },
        )
    }
}

// Repeated convex combination; `coeffs` is non-empty.
fn de_casteljau(coeffs: &[f64], s: f64) -> f64 {
    let mut work = coeffs.to_vec();
    let r = 1.0 - s;
    for level in 1..work.len() {
        for j in 0..work.len() - level {
            work[j] = r * work[j] + s * work[j + 1];
        }
    }
    work[0]
}

/// `[C(n, j)]_{j=0..=n}` by the multiplicative recurrence. Exact for every
/// supported degree.
pub fn binomials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = 1.0_f64;
    out.push(c);
    for j in 0..n {
        c = c * (n - j) as f64 / (j + 1) as f64;
        out.push(c);
    }
    out
}

/// `[B_{0,n}(s), …, B_{n,n}(s)]`.
pub fn basis_weights(n: usize, s: f64) -> Result<Vec<f64>> {
    check_unit("s", s)?;
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooHigh {
            degree: n,
            max: MAX_DEGREE,
        });
    }
    let r = 1.0 - s;
    Ok(binomials(n)
        .into_iter()
        .enumerate()
        .map(|(j, c)| c * r.powi((n - j) as i32) * s.powi(j as i32))
        .collect())
}

/// `W = Σ B_{i,m}(α)² + Σ B_{j,n}(β)²`.
pub fn squared_weight_sum(m: usize, n: usize, alpha: f64, beta: f64) -> Result<f64> {
    check_unit("alpha", alpha)?;
    check_unit("beta", beta)?;
    let sq =
        |d: usize, x: f64| -> Result<f64> { Ok(basis_weights(d, x)?.iter().map(|b| b * b).sum()) };
    Ok(sq(m, alpha)? + sq(n, beta)?)
}
