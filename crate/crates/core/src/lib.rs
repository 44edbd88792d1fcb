//! Bessel functions, Lommel polynomials, and the generalized interlacing of
//! Bessel zeros.
//!
//! The crate is organised as
//!
//! * [`special`]: J_ν, Y_ν, cylinder functions, J'_ν, 𝕁_ν and K_0;
//! * [`lommel`]: Lommel polynomials R_{m,ν}, R*_{m,ν} and their roots;
//! * [`zeros`]: zeros of the Bessel family and dj/dν;
//! * [`interlace`]: merged zero sequences, common zeros, interlacing checks
//!   and Wronskian series;
//! * [`continuation`]: orders ν* at which J_ν and J_{ν+m} share a zero.
//!
//! ```
//! use bessel_interlace::special::bessel_j;
//!
//! let v = bessel_j(0.0, 2.404825557695773).unwrap();
//! assert!(v.value.abs() < 1e-10);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
mod gamma;
mod poly;
pub mod quadrature;
mod solve;

pub mod continuation;
pub mod interlace;
pub mod lommel;
pub mod special;
pub mod zeros;

pub use error::{Error, Result};
pub use gamma::pochhammer;
pub use special::{EvalResult, FunctionId, Method};
pub use zeros::ZeroList;
