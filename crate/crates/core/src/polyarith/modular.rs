//! Multi-modular gcd for primitive integer polynomials.
//!
//! Images of the gcd are computed modulo word-sized primes, combined by CRT
//! and lifted back to Q by rational reconstruction. A candidate is accepted
//! only after it divides both inputs exactly over Z; its degree equals the
//! smallest modular degree seen, which bounds the true degree from above, so
//! an accepted candidate is the gcd.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{RatPoly, Rational};

const PRIME_COUNT: usize = 512;

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime_u32(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

/// Deterministic Miller-Rabin, valid below 3.2e9.
fn is_prime_u32(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over F_p.
fn gcd_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        rem_in_place(&mut x, &y, p);
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(&lc) = x.last() {
        let inv = inv_mod(lc, p);
        for c in &mut x {
            *c = *c * inv % p;
        }
    }
    x
}

fn rem_in_place(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * inv % p;
        if c != 0 {
            let shift = top - db;
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - c * bj % p) % p;
            }
        }
        a.pop();
        trim(a);
    }
}

/// Rational `n/d` with `|n|, d <= sqrt(m/2)` and `n ≡ c d (mod m)`.
fn rational_reconstruct(c: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), c.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !s1.gcd(m).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

/// Checks `g | a` over Z by schoolbook division with exactness at every step.
fn divides_over_z(g: &[BigInt], a: &[BigInt]) -> bool {
    let dg = g.len() - 1;
    if a.len() < g.len() {
        return a.iter().all(Zero::is_zero);
    }
    let lc = &g[dg];
    let mut rem = a.to_vec();
    for i in (0..=a.len() - 1 - dg).rev() {
        let top = &rem[i + dg];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lc);
        if !r.is_zero() {
            return false;
        }
        for (j, gj) in g.iter().enumerate() {
            rem[i + j] -= &q * gj;
        }
    }
    rem.iter().all(Zero::is_zero)
}

/// Monic gcd of two nonzero, non-constant primitive integer polynomials.
pub(super) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> RatPoly {
    let lc_prod = a.last().unwrap() * b.last().unwrap();
    let max_degree = a.len().min(b.len()) - 1;

    let mut best_degree = usize::MAX;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_candidate: Option<RatPoly> = None;

    for &p in primes() {
        if (&lc_prod % p).is_zero() {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let g = gcd_mod_p(&ap, &bp, p);
        let deg = g.len() - 1;
        if deg == 0 {
            return RatPoly::one();
        }
        if deg > best_degree || deg > max_degree {
            continue;
        }
        if deg < best_degree {
            best_degree = deg;
            residues = g.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
            last_candidate = None;
        } else {
            crt_combine(&mut residues, &modulus, &g, p);
            modulus *= p;
        }

        let Some(candidate) = reconstruct(&residues, &modulus) else {
            continue;
        };
        // Verify only once the lift has stopped moving; trial division is the
        // expensive step for high-degree inputs.
        if last_candidate.as_ref() == Some(&candidate) {
            let (_, g) = candidate.primitive_part();
            if divides_over_z(&g, a) && divides_over_z(&g, b) {
                return candidate;
            }
        }
        last_candidate = Some(candidate);
    }
    euclid_fallback(a, b)
}

fn crt_combine(residues: &mut [BigInt], modulus: &BigInt, image: &[u64], p: u64) {
    let m_inv = BigInt::from(inv_mod(reduce(modulus, p), p));
    let pb = BigInt::from(p);
    for (r, &c) in residues.iter_mut().zip(image) {
        let diff = (BigInt::from(c) - &*r).mod_floor(&pb);
        let t = (diff * &m_inv).mod_floor(&pb);
        *r += t * modulus;
    }
}

fn reconstruct(residues: &[BigInt], modulus: &BigInt) -> Option<RatPoly> {
    let coeffs = residues
        .iter()
        .map(|c| rational_reconstruct(c, modulus))
        .collect::<Option<Vec<_>>>()?;
    let poly = RatPoly::new(coeffs);
    poly.leading_coeff()?.is_one().then_some(poly)
}

/// Plain Euclid over Q; only reached if the prime table is exhausted.
fn euclid_fallback(a: &[BigInt], b: &[BigInt]) -> RatPoly {
    let mut x = RatPoly::from_bigints(a.to_vec());
    let mut y = RatPoly::from_bigints(b.to_vec());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y).expect("nonzero divisor");
        x = y;
        y = r.monic();
    }
    x.monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn prime_table_is_prime_and_descending() {
        let ps = primes();
        assert_eq!(ps.len(), PRIME_COUNT);
        assert_eq!(ps[0], 2147483647);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        for &p in ps.iter().take(5) {
            assert!((2..=46341u64).all(|d| p % d != 0));
        }
    }

    #[test]
    fn reconstructs_small_fractions() {
        let m = BigInt::from(2147483647u64) * BigInt::from(2147483629u64);
        let target = Rational::new(BigInt::from(-7), BigInt::from(12));
        let p1 = 2147483647u64;
        let p2 = 2147483629u64;
        let r1 = (p1 - 7 % p1) * inv_mod(12, p1) % p1;
        let r2 = (p2 - 7 % p2) * inv_mod(12, p2) % p2;
        let mut res = vec![BigInt::from(r1)];
        crt_combine(&mut res, &BigInt::from(p1), &[r2], p2);
        assert_eq!(rational_reconstruct(&res[0], &m), Some(target));
    }

    #[test]
    fn divisibility_over_z() {
        // (2t+1)(t-3) = 2t^2 - 5t - 3
        assert!(divides_over_z(&ints(&[1, 2]), &ints(&[-3, -5, 2])));
        assert!(!divides_over_z(&ints(&[1, 3]), &ints(&[-3, -5, 2])));
    }

    #[test]
    fn high_degree_gcd() {
        // gcd(t^120 - 1, (t+1)^120 - 1) = t^2 + t + 1
        let mut a = vec![BigInt::zero(); 121];
        a[0] = BigInt::from(-1);
        a[120] = BigInt::one();
        let b = RatPoly::from_ints(&[1, 1]).pow(120) - RatPoly::one();
        let (_, b) = b.primitive_part();
        assert_eq!(gcd_primitive(&a, &b), RatPoly::from_ints(&[1, 1, 1]));
    }
}
