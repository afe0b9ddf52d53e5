//! Integrands: scalar functions with derivatives up to a fixed order.

use crate::error::{finite, Error, Result};
use crate::poly::Poly;

/// Highest derivative order any part of the crate asks for.
pub const MAX_ORDER: usize = 6;

/// A real function of one variable that can supply its derivatives.
///
/// `derivative(0, x)` must agree with `eval(x)`. Orders above
/// [`Integrand::max_order`] return [`Error::Capability`].
pub trait Integrand {
    fn eval(&self, x: f64) -> Result<f64>;

    /// Highest derivative order available.
    fn max_order(&self) -> usize;

    fn derivative(&self, order: usize, x: f64) -> Result<f64>;
}

impl<T: Integrand + ?Sized> Integrand for &T {
    fn eval(&self, x: f64) -> Result<f64> {
        (**self).eval(x)
    }
    fn max_order(&self) -> usize {
        (**self).max_order()
    }
    fn derivative(&self, order: usize, x: f64) -> Result<f64> {
        (**self).derivative(order, x)
    }
}

impl<T: Integrand + ?Sized> Integrand for alloc::boxed::Box<T> {
    fn eval(&self, x: f64) -> Result<f64> {
        (**self).eval(x)
    }
    fn max_order(&self) -> usize {
        (**self).max_order()
    }
    fn derivative(&self, order: usize, x: f64) -> Result<f64> {
        (**self).derivative(order, x)
    }
}

pub(crate) fn require_order<F: Integrand + ?Sized>(f: &F, order: usize) -> Result<()> {
    if f.max_order() < order {
        Err(Error::Capability { requested: order, available: f.max_order() })
    } else {
        Ok(())
    }
}

/// Value-only integrand backed by a closure.
pub struct ValueFn<F>(pub F);

impl<F: Fn(f64) -> f64> Integrand for ValueFn<F> {
    fn eval(&self, x: f64) -> Result<f64> {
        finite(x, (self.0)(x))
    }
    fn max_order(&self) -> usize {
        0
    }
    fn derivative(&self, order: usize, x: f64) -> Result<f64> {
        if order == 0 {
            self.eval(x)
        } else {
            Err(Error::Capability { requested: order, available: 0 })
        }
    }
}

/// Integrand backed by a closure `(order, x) -> f^(order)(x)`.
pub struct DerivFn<F> {
    max_order: usize,
    f: F,
}

impl<F: Fn(usize, f64) -> f64> DerivFn<F> {
    pub fn new(max_order: usize, f: F) -> Self {
        DerivFn { max_order, f }
    }
}

impl<F: Fn(usize, f64) -> f64> Integrand for DerivFn<F> {
    fn eval(&self, x: f64) -> Result<f64> {
        finite(x, (self.f)(0, x))
    }
    fn max_order(&self) -> usize {
        self.max_order
    }
    fn derivative(&self, order: usize, x: f64) -> Result<f64> {
        if order > self.max_order {
            return Err(Error::Capability { requested: order, available: self.max_order });
        }
        finite(x, (self.f)(order, x))
    }
}

impl Integrand for Poly {
    fn eval(&self, x: f64) -> Result<f64> {
        finite(x, Poly::eval(self, x))
    }
    fn max_order(&self) -> usize {
        MAX_ORDER
    }
    fn derivative(&self, order: usize, x: f64) -> Result<f64> {
        if order > MAX_ORDER {
            return Err(Error::Capability { requested: order, available: MAX_ORDER });
        }
        finite(x, self.derivative_at(order, x))
    }
}
