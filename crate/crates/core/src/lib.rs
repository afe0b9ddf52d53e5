//! Endpoint-corrected Simpson quadrature.
//!
//! The modified Simpson rule adds the endpoint derivative correction
//! `-(b-a)^2/60 [f'(b) - f'(a)]` to a reweighted three-point rule
//! (weights 7/30, 16/30, 7/30), raising the degree of exactness from 3 to 5
//! and the composite convergence order from `h^4` to `h^6` at the cost of two
//! derivative evaluations. Alongside the rules this crate provides
//!
//! * the Peano kernels of the rule and their sharp constants ([`kernels`]),
//! * range- and secant-based error bounds built on them ([`bounds`]),
//! * an expression language with Taylor-mode derivatives ([`expr`], [`jet`]),
//! * an adaptive Gauss–Kronrod oracle and convergence studies ([`reference`]).
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod error;
pub mod expr;
pub mod integrand;
pub mod interval;
pub mod jet;
pub mod kernels;
pub mod poly;
pub mod reference;
pub mod rules;
pub mod sum;

pub use bounds::{BoundReport, DerivativeRange, Provenance, RangeEstimator, SecantSlope};
pub use error::{Error, EvalFailure, Result};
pub use expr::{parse, Expr, ExprIntegrand, ParseError};
pub use integrand::{DerivFn, Integrand, ValueFn, MAX_ORDER};
pub use interval::{Interval, UniformGrid};
pub use jet::TaylorJet;
pub use kernels::{KernelConstants, KernelId, PeanoKernel};
pub use poly::Poly;
pub use reference::{ConvergenceTable, ReferenceResult, RuleComparison};
pub use rules::{QuadResult, RuleId};
