//! Exact kernels for iterated gcd sequences.
//!
//! * [`zgcd`]: `gcd(a^k - 1, b^k - 1)` over the integers, a multiplicative-order
//!   oracle and coprimality surveys.
//! * [`polygcd`]: the polynomial analogue `gcd(f^k - 1, g^k - 1)` and its
//!   decomposition into torsion levels.
//! * [`matgcd`]: contents of `A^k - I` for integer and polynomial matrices.
//! * [`cyclo`]: arithmetic in `Z[ζ_p]` and multiplication matrices of units.
//!
//! All arithmetic is exact; floating point only appears in reported
//! log-ratios and fitted slopes.

pub mod algebra;
pub mod cyclo;
pub mod error;
pub mod matgcd;
pub mod polyarith;
pub mod polygcd;
pub mod refine;
pub mod zgcd;

mod numeric;

pub use algebra::{GcdDomain, Ring};
pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use polyarith::{RatPoly, Rational};
pub use refine::{CoprimeBasis, Factorization};
