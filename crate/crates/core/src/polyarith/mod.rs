//! Exact univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending order of degree and the zero
//! polynomial is the empty coefficient vector. Every gcd returned from this
//! module is monic.

mod modular;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra;
use crate::error::{Error, Result};
use crate::refine::{self, CoprimeBasis};

pub use text::{format_rational, parse_poly, parse_rational};

pub type Rational = BigRational;

/// Polynomial in `t` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, exp: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        RatPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Monic associate; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Exact power by square-and-multiply.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division; `None` when the divisor is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let Some(nd) = self.degree() else {
            return Some((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Some((Self::zero(), self.clone()));
        }
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }

    /// Splits off the rational content: `self = content * primitive` with a
    /// primitive integer polynomial whose leading coefficient is positive.
    pub fn primitive_part(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut num = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(Signed::is_negative) {
            num = -num;
        }
        for c in &mut ints {
            *c /= &num;
        }
        (Rational::new(num, den), ints)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Err(Error::UndefinedGcd),
            (true, false) => Ok(other.monic()),
            (false, true) => Ok(self.monic()),
            _ if self.is_constant() || other.is_constant() => Ok(Self::one()),
            _ => {
                let (_, a) = self.primitive_part();
                let (_, b) = other.primitive_part();
                Ok(modular::gcd_primitive(&a, &b))
            }
        }
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::precondition(
                "f",
                "squarefree part of the zero polynomial is undefined",
            ));
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self
            .exact_div(&g)
            .expect("gcd(f, f') divides f")
            .monic())
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Multiply over Z with a common denominator per side; reduces once per
        // output coefficient instead of once per term.
        let (da, a) = common_denominator(&self.coeffs);
        let (db, b) = common_denominator(&other.coeffs);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let den = da * db;
        if den.is_one() {
            return Self::from_bigints(out);
        }
        Self::new(
            out.into_iter()
                .map(|c| Rational::new(c, den.clone()))
                .collect(),
        )
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b, negate) {
                (Some(a), Some(b), false) => a + b,
                (Some(a), Some(b), true) => a - b,
                (Some(a), None, _) => a.clone(),
                (None, Some(b), false) => b.clone(),
                (None, Some(b), true) => -b,
                (None, None, _) => unreachable!(),
            });
        }
        Self::new(out)
    }
}

fn common_denominator(coeffs: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
    let ints = coeffs
        .iter()
        .map(|c| {
            if den.is_one() {
                c.numer().clone()
            } else {
                c.numer() * (&den / c.denom())
            }
        })
        .collect();
    (den, ints)
}

impl Ord for RatPoly {
    /// Canonical order: by degree, then coefficients from the constant term up.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for RatPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&RatPoly> for &RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: &RatPoly) -> RatPoly {
                $body(self, rhs)
            }
        }
        impl $trait<RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: RatPoly) -> RatPoly {
                $body(&self, &rhs)
            }
        }
        impl $trait<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: &RatPoly) -> RatPoly {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RatPoly, b: &RatPoly| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &RatPoly, b: &RatPoly| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &RatPoly, b: &RatPoly| a.mul_impl(b));

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_poly(self))
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl std::str::FromStr for RatPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

impl algebra::Ring for RatPoly {
    fn zero() -> Self {
        RatPoly::zero()
    }
    fn one() -> Self {
        RatPoly::one()
    }
    fn is_zero(&self) -> bool {
        RatPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatPoly::is_one(self)
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
        RatPoly::from_ints(&[n])
    }
}

impl algebra::GcdDomain for RatPoly {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        RatPoly::exact_div(self, divisor)
    }

    fn gcd(&self, other: &Self) -> Self {
        RatPoly::gcd(self, other).unwrap_or_else(|_| RatPoly::zero())
    }

    fn normalized(&self) -> Self {
        self.monic()
    }

    fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }
}

/// Monic gcd of `f` and `g`; the monic normalization of the other argument
/// when one of them is zero.
pub fn poly_gcd(f: &RatPoly, g: &RatPoly) -> Result<RatPoly> {
    f.gcd(g)
}

pub fn poly_pow(f: &RatPoly, k: u64) -> RatPoly {
    f.pow(k)
}

pub fn poly_eval(f: &RatPoly, x: &Rational) -> Rational {
    f.eval(x)
}

pub fn squarefree_part(f: &RatPoly) -> Result<RatPoly> {
    f.squarefree_part()
}

/// Refines the inputs into pairwise coprime monic factors.
///
/// Each input is reconstructed as `constant * prod(basis[i]^exponents[i])`.
pub fn coprime_basis(inputs: &[RatPoly]) -> Result<CoprimeBasis<RatPoly>> {
    if let Some(pos) = inputs.iter().position(RatPoly::is_constant) {
        return Err(Error::precondition(
            "inputs",
            format!("input #{pos} is constant; coprime basis needs non-constant polynomials"),
        ));
    }
    Ok(refine::coprime_basis(inputs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatPoly {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p("t^2-1"), &p("t^2+2*t")).unwrap(), RatPoly::one());
        assert_eq!(
            poly_gcd(&p("t^6-1"), &(p("t+1").pow(6) - RatPoly::one())).unwrap(),
            p("t^2+t+1")
        );
        assert_eq!(poly_gcd(&p("3*t^2+3"), &RatPoly::zero()).unwrap(), p("t^2+1"));
        assert_eq!(poly_gcd(&RatPoly::zero(), &p("-2*t")).unwrap(), p("t"));
        assert_eq!(
            poly_gcd(&RatPoly::zero(), &RatPoly::zero()),
            Err(Error::UndefinedGcd)
        );
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        // (t - 1/2)(t + 3) and (t - 1/2)(2t - 7/3)
        let common = p("t-1/2");
        let f = &common * &p("t+3");
        let g = &common * &p("2*t-7/3");
        assert_eq!(poly_gcd(&f, &g).unwrap(), common);
    }

    #[test]
    fn pow_examples() {
        assert_eq!(poly_pow(&p("t+1"), 2), p("t^2+2*t+1"));
        assert_eq!(poly_pow(&p("t^3-7"), 0), RatPoly::one());
        assert_eq!(poly_pow(&p("t"), 6), p("t^6"));
        assert_eq!(poly_pow(&p("2*t+1/3"), 5).degree(), Some(5));
    }

    #[test]
    fn eval_examples() {
        let f = p("t^2+t+1");
        assert_eq!(poly_eval(&f, &q(1, 1)), q(3, 1));
        assert_eq!(poly_eval(&f, &q(-1, 1)), q(1, 1));
        assert_eq!(poly_eval(&p("t^6-1"), &q(1, 1)), q(0, 1));
        assert_eq!(poly_eval(&RatPoly::zero(), &q(5, 7)), q(0, 1));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&p("t^2+2*t+1")).unwrap(), p("t+1"));
        assert_eq!(squarefree_part(&p("t^2+t+1")).unwrap(), p("t^2+t+1"));
        assert_eq!(squarefree_part(&p("12*t^3")).unwrap(), p("t"));
        assert!(squarefree_part(&RatPoly::zero()).is_err());
    }

    #[test]
    fn coprime_basis_examples() {
        let b = coprime_basis(&[p("t^2"), p("t^3")]).unwrap();
        assert_eq!(b.basis, vec![p("t")]);
        assert_eq!(b.factorizations[0].exponents, vec![2]);
        assert_eq!(b.factorizations[1].exponents, vec![3]);

        let b = coprime_basis(&[p("t^2+t"), p("t^2+2*t+1")]).unwrap();
        assert_eq!(b.basis, vec![p("t"), p("t+1")]);
        assert_eq!(b.factorizations[0].exponents, vec![1, 1]);
        assert_eq!(b.factorizations[1].exponents, vec![0, 2]);

        let b = coprime_basis(&[p("t^2+t"), p("t^2-1")]).unwrap();
        assert_eq!(b.basis, vec![p("t"), p("t+1"), p("t-1")]);
        assert_eq!(b.factorizations[0].exponents, vec![1, 1, 0]);
        assert_eq!(b.factorizations[1].exponents, vec![0, 1, 1]);
    }

    #[test]
    fn coprime_basis_rejects_constants() {
        assert!(matches!(
            coprime_basis(&[p("t"), p("5")]),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn coprime_basis_keeps_constants_in_unit() {
        let b = coprime_basis(&[p("2*t^2"), p("-3/4*t^3")]).unwrap();
        assert_eq!(b.factorizations[0].unit, p("2"));
        assert_eq!(b.factorizations[1].unit, p("-3/4"));
        for (input, fac) in [p("2*t^2"), p("-3/4*t^3")].iter().zip(&b.factorizations) {
            assert_eq!(&b.reconstruct(fac), input);
        }
    }

    #[test]
    fn primitive_part_splits_content() {
        let f = p("-2/3*t^2+4/9");
        let (c, ints) = f.primitive_part();
        assert_eq!(c, q(-2, 9));
        assert_eq!(ints, vec![BigInt::from(-2), BigInt::from(0), BigInt::from(3)]);
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = p("3*t^5-t^2+1/2");
        let d = p("2*t^2+t-1");
        let (quot, rem) = f.div_rem(&d).unwrap();
        assert_eq!(&(&quot * &d) + &rem, f);
        assert!(rem.degree().unwrap_or(0) < 2);
        assert!(f.div_rem(&RatPoly::zero()).is_none());
    }
}
