//! Minimal ring abstractions shared by the integer and polynomial engines.
//!
//! Matrices, contents and coprime bases are written once against these
//! traits and instantiated for `BigInt` and [`RatPoly`](crate::RatPoly).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A commutative ring with identity.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// An integral domain with a canonical gcd.
pub trait GcdDomain: Ring {
    /// Quotient `self / divisor` when the division is exact.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;

    /// Normalized gcd (non-negative integer, monic polynomial); `gcd(0, 0) = 0`.
    fn gcd(&self, other: &Self) -> Self;

    /// Canonical associate: `|n|` for integers, the monic multiple for polynomials.
    fn normalized(&self) -> Self;

    fn is_unit(&self) -> bool;

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }

    fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        self.exact_div(&g)
            .expect("gcd divides its argument")
            .mul(other)
            .normalized()
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl GcdDomain for BigInt {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        Zero::is_zero(&r).then_some(q)
    }

    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }

    fn normalized(&self) -> Self {
        self.abs()
    }

    fn is_unit(&self) -> bool {
        One::is_one(&self.abs())
    }
}
