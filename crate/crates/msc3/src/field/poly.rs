//! Univariate polynomials over [`Scalar`], used to evaluate matrix formulas on a
//! symbolic group parameter `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{FieldCtx, Ring, Scalar};

#[derive(Clone, PartialEq)]
pub struct Poly {
    ctx: Arc<FieldCtx>,
    /// Coefficients, lowest degree first, no trailing zeros.
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn constant(c: &Scalar) -> Poly {
        Poly::from_coeffs(c.ctx(), vec![c.clone()])
    }

    /// The polynomial `t`.
    pub fn var(ctx: &Arc<FieldCtx>) -> Poly {
        Poly::from_coeffs(ctx, vec![ctx.zero(), ctx.one()])
    }

    /// `c0 + c1 t`.
    pub fn affine(c0: &Scalar, c1: &Scalar) -> Poly {
        Poly::from_coeffs(c0.ctx(), vec![c0.clone(), c1.clone()])
    }

    pub fn from_coeffs(ctx: &Arc<FieldCtx>, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let ctx = coeffs.iter().fold(ctx.clone(), |acc, c| {
            if c.ctx().depth() > acc.depth() {
                c.ctx().clone()
            } else {
                acc
            }
        });
        Poly { ctx, coeffs }
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = self.ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.encode(),
                1 => format!("{}*t", c.encode()),
                _ => format!("{}*t^{i}", c.encode()),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::from_coeffs(&self.ctx, Vec::new());
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(&self.ctx, out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }
}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::from_coeffs(&self.ctx, Vec::new())
    }
    fn one_like(&self) -> Self {
        Poly::from_coeffs(&self.ctx, vec![self.ctx.one()])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn int_like(&self, n: i64) -> Self {
        Poly::from_coeffs(&self.ctx, vec![self.ctx.int(n)])
    }
}
