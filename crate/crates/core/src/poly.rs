//! Dense real polynomials in ascending-power form with Horner evaluation.

use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    /// `coeffs[i]` multiplies `x^i`.
    pub fn new(coeffs: Vec<f64>) -> Self {
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.coeffs, x)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::new(alloc::vec![0.0]);
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    /// `d^order/dx^order` at `x`, without building intermediate polynomials.
    pub fn derivative_at(&self, order: usize, x: f64) -> f64 {
        let mut acc = 0.0;
        for i in (order..self.coeffs.len()).rev() {
            acc = acc * x + self.coeffs[i] * falling(i, order);
        }
        acc
    }

    /// Antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Poly {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(0.0);
        out.extend(self.coeffs.iter().enumerate().map(|(i, &c)| c / (i + 1) as f64));
        Poly::new(out)
    }

    /// Exact integral over `[lo, hi]`.
    pub fn integral(&self, lo: f64, hi: f64) -> f64 {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }
}

/// Horner evaluation of ascending-power coefficients.
#[inline]
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// `i (i-1) ... (i-order+1)`
fn falling(i: usize, order: usize) -> f64 {
    (0..order).map(|j| (i - j) as f64).product()
}
