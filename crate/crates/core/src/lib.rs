//! Exact algebra for tight-closure computations in prime characteristic.
//!
//! The crate is `no_std` (it needs `alloc`). Rings are graded quotients of
//! polynomial rings over F_p; ideals carry lazily computed Gröbner bases.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod closure;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hk;
pub mod ideal;
pub mod lc;
pub mod linalg;
pub mod models;
pub mod monomial;
pub mod newton;
pub mod poly;
pub mod ring;
pub mod theorems;

pub use error::{Error, Result};
pub use field::{FpScalar, PrimeChar};
pub use groebner::{buchberger, GroebnerBasis};
pub use ideal::AmbientIdeal;
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::{PolyRing, Polynomial};
pub use ring::{ParameterSystem, QuotientElement, RingIdeal, RingPresentation};
