//! Arithmetic in `Z[ζ_p]` on the basis `1, ζ, …, ζ^{p-2}` and the
//! multiplication matrices of its units.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matgcd::IntMat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElt {
    p: u32,
    coeffs: Vec<BigInt>,
}

/// Coefficients of a real element on `ζ, …, ζ^{p-1}`, with `alpha[0] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymCoeffs {
    pub alpha: Vec<BigInt>,
}

fn check_prime(p: u32) -> Result<()> {
    let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if !prime || p <= 3 {
        return Err(Error::precondition("p", format!("{p} is not a prime greater than 3")));
    }
    Ok(())
}

impl CycloElt {
    pub fn new(p: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        check_prime(p)?;
        if coeffs.len() != p as usize - 1 {
            return Err(Error::precondition(
                "coeffs",
                format!("expected {} coefficients, found {}", p - 1, coeffs.len()),
            ));
        }
        Ok(CycloElt { p, coeffs })
    }

    pub fn from_ints(p: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(p, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Reduces `sum full[j] ζ^j` over `j = 0..p` to the basis.
    fn from_full(p: u32, full: &[BigInt]) -> Self {
        let top = &full[p as usize - 1];
        CycloElt {
            p,
            coeffs: full[..p as usize - 1].iter().map(|c| c - top).collect(),
        }
    }

    pub fn constant(p: u32, c: impl Into<BigInt>) -> Result<Self> {
        check_prime(p)?;
        let mut coeffs = vec![BigInt::zero(); p as usize - 1];
        coeffs[0] = c.into();
        Ok(CycloElt { p, coeffs })
    }

    pub fn one(p: u32) -> Result<Self> {
        Self::constant(p, 1)
    }

    /// `ζ^e` for any integer exponent.
    pub fn zeta_pow(p: u32, e: i64) -> Result<Self> {
        check_prime(p)?;
        let mut full = vec![BigInt::zero(); p as usize];
        full[e.rem_euclid(i64::from(p)) as usize] = BigInt::one();
        Ok(Self::from_full(p, &full))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn same_p(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_p(other)?;
        Ok(CycloElt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_p(other)?;
        Ok(CycloElt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        CycloElt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_p(other)?;
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % p] += a * b;
                }
            }
        }
        Ok(Self::from_full(self.p, &full))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p).expect("valid p");
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same p");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same p");
            }
        }
        acc
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (j, c) in self.coeffs.iter().enumerate() {
            full[(p - j) % p] = c.clone();
        }
        Self::from_full(self.p, &full)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// `self = sum_{j=1}^{p-1} alpha_j ζ^j` for a real element.
    pub fn sym_coeffs(&self) -> Result<SymCoeffs> {
        if !self.is_real() {
            return Err(Error::precondition("u", "element is not real"));
        }
        let c0 = &self.coeffs[0];
        let mut alpha = Vec::with_capacity(self.p as usize);
        alpha.push(BigInt::zero());
        alpha.extend(self.coeffs[1..].iter().map(|c| c - c0));
        alpha.push(-c0);
        Ok(SymCoeffs { alpha })
    }

    /// Matrix whose column `i` holds the basis coefficients of `self * ζ^i`.
    pub fn mult_matrix(&self) -> IntMat {
        let n = self.p as usize - 1;
        let mut col = self.clone();
        let zeta = Self::zeta_pow(self.p, 1).expect("valid p");
        let mut cols = Vec::with_capacity(n);
        for _ in 0..n {
            cols.push(col.coeffs.clone());
            col = col.mul(&zeta).expect("same p");
        }
        IntMat::from_columns(n, |i| cols[i].clone())
    }

    /// Field norm, as the determinant of the multiplication matrix.
    pub fn norm_det(&self) -> BigInt {
        self.mult_matrix().det()
    }

    pub fn is_unit(&self) -> bool {
        self.norm_det().abs().is_one()
    }

    /// The `x` in `0..p` with `ζ^{-x} * self` real.
    pub fn zeta_decompose(&self) -> Result<Option<u32>> {
        if !self.is_unit() {
            return Err(Error::precondition("u", "element is not a unit"));
        }
        Ok((0..self.p).find(|&x| {
            let z = Self::zeta_pow(self.p, -i64::from(x)).expect("valid p");
            z.mul(self).expect("same p").is_real()
        }))
    }

    /// Parses `p - 1` comma-separated integers.
    pub fn parse(p: u32, input: &str) -> Result<Self> {
        check_prime(p)?;
        let mut coeffs = Vec::new();
        let mut pos = 0;
        for cell in input.split(',') {
            let lead = cell.len() - cell.trim_start().len();
            let value = cell.trim().parse::<BigInt>().map_err(|_| Error::Parse {
                input: input.to_string(),
                pos: pos + lead,
                reason: format!("expected an integer, found {:?}", cell.trim()),
            })?;
            coeffs.push(value);
            pos += cell.len() + 1;
        }
        if coeffs.len() != p as usize - 1 {
            return Err(Error::Parse {
                input: input.to_string(),
                pos: input.len(),
                reason: format!("expected {} coefficients, found {}", p - 1, coeffs.len()),
            });
        }
        Ok(CycloElt { p, coeffs })
    }
}

impl fmt::Display for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn cyclo_mul(u: &CycloElt, v: &CycloElt) -> Result<CycloElt> {
    u.mul(v)
}

/// `1 + ζ + … + ζ^{a-1} = (1 - ζ^a) / (1 - ζ)`.
pub fn cyclotomic_unit(p: u32, a: u32) -> Result<CycloElt> {
    check_prime(p)?;
    if !(2..p).contains(&a) {
        return Err(Error::precondition("a", format!("must lie in 2..={}", p - 1)));
    }
    let mut full = vec![BigInt::zero(); p as usize];
    for c in &mut full[..a as usize] {
        *c = BigInt::one();
    }
    Ok(CycloElt::from_full(p, &full))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloRow {
    pub k: u64,
    /// `content(A(u)^k - I)`, or 0 when `u^k = 1`.
    pub content: BigInt,
    pub is_primitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloReport {
    pub p: u32,
    pub unit: CycloElt,
    pub norm: BigInt,
    /// `u = ζ^x u^+` with `u^+` real.
    pub x: u32,
    pub rows: Vec<CycloRow>,
    /// `k ≡ 0 mod p` rows with content other than 1.
    pub exceptional: Vec<u64>,
    pub formula_checked_up_to: u64,
}

impl CycloReport {
    pub fn primitive_count(&self) -> usize {
        self.rows.iter().filter(|r| r.is_primitive).count()
    }
}

/// Checks that `A(u)^k` is primitive for every `k` not divisible by `p`.
pub fn verify_cyc_theorem(p: u32, u: &CycloElt, k_max: u64) -> Result<CycloReport> {
    check_prime(p)?;
    if u.p() != p {
        return Err(Error::ModulusMismatch {
            left: p,
            right: u.p(),
        });
    }
    if k_max < u64::from(p) {
        return Err(Error::precondition("k_max", format!("must be at least p = {p}")));
    }
    if u.is_real() {
        return Err(Error::precondition("u", "unit must not be real"));
    }
    let norm = u.norm_det();
    if !norm.abs().is_one() {
        return Err(Error::precondition("u", format!("norm {norm} is not a unit")));
    }
    let x = u.zeta_decompose()?.ok_or_else(|| Error::TheoremViolation {
        k: 1,
        detail: format!("no power of ζ makes {u} real"),
    })?;

    let a = u.mult_matrix();
    let rows = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let uk = u.pow(k);
            let m = uk.mult_matrix();
            if m != a.pow(k) {
                return Err(Error::StructuralFailure {
                    k,
                    detail: "A(u^k) differs from A(u)^k".into(),
                });
            }
            check_formula(&uk, x, k)?;
            let content = m.minus_identity().content().unwrap_or_else(BigInt::zero);
            if k % u64::from(p) != 0 && !content.is_one() {
                return Err(Error::TheoremViolation {
                    k,
                    detail: format!("content(A(u)^{k} - I) = {content}"),
                });
            }
            Ok(CycloRow {
                k,
                is_primitive: content.is_one(),
                content,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CycloReport {
        p,
        unit: u.clone(),
        norm,
        x,
        exceptional: rows.iter().filter(|r| !r.is_primitive).map(|r| r.k).collect(),
        formula_checked_up_to: k_max,
        rows,
    })
}

/// Basis coefficient `i` of `u^k` equals `alpha_{i-xk} - alpha_{p-1-xk}`,
/// with `alpha` the symmetric coefficients of `ζ^{-xk} u^k`.
fn check_formula(uk: &CycloElt, x: u32, k: u64) -> Result<()> {
    let p = u64::from(uk.p());
    let xk = (u64::from(x) * (k % p)) % p;
    let real = CycloElt::zeta_pow(uk.p(), -(xk as i64))?.mul(uk)?;
    let alpha = real
        .sym_coeffs()
        .map_err(|_| Error::TheoremViolation {
            k,
            detail: "ζ^{-xk} u^k is not real".into(),
        })?
        .alpha;
    let idx = |i: u64| ((i + p - xk) % p) as usize;
    let tail = &alpha[idx(p - 1)];
    for (i, c) in uk.coeffs().iter().enumerate() {
        let expected = &alpha[idx(i as u64)] - tail;
        if *c != expected {
            return Err(Error::TheoremViolation {
                k,
                detail: format!("coefficient {i} of u^{k} is {c}, formula gives {expected}"),
            });
        }
    }
    Ok(())
}
