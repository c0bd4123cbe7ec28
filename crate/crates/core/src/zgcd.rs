//! The integer sequence `G(k) = gcd(a^k - 1, b^k - 1)`.
//!
//! Besides the direct big-integer route this module carries an independent
//! oracle built from multiplicative orders: for a prime `q` not dividing
//! `ab`, `q | G(k)` exactly when `lcm(ord_q(a), ord_q(b)) | k`, and the
//! exact power of `q` follows from the lifting-the-exponent lemma.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::ln_abs;
use crate::refine::{self, proportional_exponents, Independence};

/// Two integers outside `{-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPair {
    a: BigInt,
    b: BigInt,
}

impl IntPair {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        for (name, v) in [("a", &a), ("b", &b)] {
            if v.abs() <= BigInt::one() {
                return Err(Error::precondition(name, format!("{v} is in {{-1, 0, 1}}")));
            }
        }
        Ok(IntPair { a, b })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// `gcd(a - 1, b - 1)`, which divides every `G(k)`.
    pub fn base_gcd(&self) -> BigInt {
        let one = BigInt::one();
        (&self.a - &one).gcd(&(&self.b - &one))
    }
}

/// `gcd(|a^k - 1|, |b^k - 1|)`.
pub fn int_gcd_k(pair: &IntPair, k: u64) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::precondition("k", "k = 0 makes both a^k - 1 and b^k - 1 vanish"));
    }
    let exp = u32::try_from(k).map_err(|_| Error::precondition("k", "k exceeds 2^32"))?;
    let x = pair.a.pow(exp) - BigInt::one();
    let y = pair.b.pow(exp) - BigInt::one();
    Ok(x.gcd(&y))
}

/// `a^r = b^s` test via a coprime basis of `|a|, |b|` and a sign check.
pub fn mult_indep_int(pair: &IntPair) -> Independence {
    let basis = refine::coprime_basis(&[pair.a.clone(), pair.b.clone()]);
    let [fa, fb] = &basis.factorizations[..] else {
        unreachable!("one factorization per input");
    };
    let Some((r, s)) = proportional_exponents(&fa.exponents, &fb.exponents) else {
        return Independence::Independent;
    };
    // |a|^r = |b|^s; signs agree for (r, s) or, with both doubled, always.
    let sign = |unit: &BigInt, e: u64| unit.is_negative() && e % 2 == 1;
    if sign(&fa.unit, r) == sign(&fb.unit, s) {
        Independence::Dependent { r, s }
    } else {
        Independence::Dependent { r: 2 * r, s: 2 * s }
    }
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let m128 = u128::from(m);
    let mut b = u128::from(base % m);
    let mut acc = 1u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

fn residue(n: &BigInt, q: u64) -> u64 {
    n.mod_floor(&BigInt::from(q)).to_u64().expect("residue below q")
}

/// Largest `e` with `q^e | n`, for `n != 0`.
fn valuation(n: &BigInt, q: u64) -> u32 {
    let q = BigInt::from(q);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (quot, rem) = n.div_rem(&q);
        if !rem.is_zero() {
            return e;
        }
        n = quot;
        e += 1;
    }
}

fn valuation_u64(mut n: u64, q: u64) -> u32 {
    let mut e = 0;
    while n % q == 0 {
        n /= q;
        e += 1;
    }
    e
}

/// `v_q(x^d - 1)` for odd `q` with `x^d ≡ 1 (mod q)`, computed modulo a
/// growing power of `q` rather than from the full power `x^d`.
fn valuation_at_order(x: &BigInt, d: u64, q: u64) -> u32 {
    let mut precision = 8u32;
    loop {
        let modulus = BigInt::from(q).pow(precision);
        let r = (x.modpow(&BigInt::from(d), &modulus) - BigInt::one()).mod_floor(&modulus);
        if !r.is_zero() {
            return valuation(&r, q);
        }
        precision *= 2;
    }
}

#[derive(Clone, Debug)]
struct PrimeOrders {
    q: u64,
    ord_a: u64,
    ord_b: u64,
    period: u64,
}

/// Precomputed multiplicative orders of `a` and `b` modulo every prime up to
/// a bound; evaluates the smooth part of `G(k)` for many `k` cheaply.
#[derive(Clone, Debug)]
pub struct OrderOracle {
    pair: IntPair,
    prime_bound: u64,
    primes: Vec<PrimeOrders>,
}

impl OrderOracle {
    pub fn new(pair: &IntPair, prime_bound: u64) -> Result<Self> {
        if prime_bound < 2 {
            return Err(Error::precondition("prime_bound", "must be at least 2"));
        }
        let bound = usize::try_from(prime_bound)
            .ok()
            .filter(|&b| b <= 1 << 28)
            .ok_or_else(|| Error::precondition("prime_bound", "exceeds 2^28"))?;
        let spf = smallest_prime_factors(bound);
        let ab = &pair.a * &pair.b;
        let primes = (2..=bound)
            .filter(|&n| spf[n] as usize == n)
            .map(|q| q as u64)
            .filter(|&q| !residue(&ab, q).is_zero())
            .map(|q| {
                let ord_a = multiplicative_order(residue(&pair.a, q), q, &spf);
                let ord_b = multiplicative_order(residue(&pair.b, q), q, &spf);
                PrimeOrders {
                    q,
                    ord_a,
                    ord_b,
                    period: ord_a.lcm(&ord_b),
                }
            })
            .collect();
        Ok(OrderOracle {
            pair: pair.clone(),
            prime_bound,
            primes,
        })
    }

    pub fn prime_bound(&self) -> u64 {
        self.prime_bound
    }

    fn valuation_of(&self, x: &BigInt, ord: u64, q: u64, k: u64) -> u32 {
        if q == 2 {
            // x odd: v(x^k - 1) = v(x - 1) for odd k, else
            // v(x - 1) + v(x + 1) + v(k) - 1.
            let base = valuation(&(x - BigInt::one()), 2);
            return if k % 2 == 1 {
                base
            } else {
                base + valuation(&(x + BigInt::one()), 2) + valuation_u64(k, 2) - 1
            };
        }
        valuation_at_order(x, ord, q) + valuation_u64(k / ord, q)
    }

    /// Product over primes `q <= prime_bound`, `q ∤ ab`, of
    /// `q^min(v_q(a^k - 1), v_q(b^k - 1))`.
    pub fn smooth_part(&self, k: u64) -> Result<BigInt> {
        if k == 0 {
            return Err(Error::precondition("k", "k must be positive"));
        }
        let mut acc = BigInt::one();
        for p in self.primes.iter().filter(|p| k % p.period == 0) {
            let va = self.valuation_of(&self.pair.a, p.ord_a, p.q, k);
            let vb = self.valuation_of(&self.pair.b, p.ord_b, p.q, k);
            acc *= BigInt::from(p.q).pow(va.min(vb));
        }
        Ok(acc)
    }
}

fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf: Vec<u32> = (0..=n as u32).collect();
    let mut i = 2;
    while i * i <= n {
        if spf[i] as usize == i {
            for j in (i * i..=n).step_by(i) {
                if spf[j] as usize == j {
                    spf[j] = i as u32;
                }
            }
        }
        i += 1;
    }
    spf
}

/// Order of `x` in `(Z/qZ)^*`, reducing `q - 1` by its prime factors.
fn multiplicative_order(x: u64, q: u64, spf: &[u32]) -> u64 {
    let mut ord = q - 1;
    let mut rest = (q - 1) as usize;
    while rest > 1 {
        let r = spf[rest] as u64;
        while rest as u64 % r == 0 {
            rest /= r as usize;
        }
        while ord % r == 0 && pow_mod(x, ord / r, q) == 1 {
            ord /= r;
        }
    }
    ord
}

/// Smooth part of `G(k)` from multiplicative orders alone.
pub fn order_oracle(pair: &IntPair, k: u64, prime_bound: u64) -> Result<BigInt> {
    OrderOracle::new(pair, prime_bound)?.smooth_part(k)
}

/// Results of scanning `G(k)` for `k = 1..=k_max`.
#[derive(Clone, Debug)]
pub struct GcdSurvey {
    pub pair: IntPair,
    pub k_max: u64,
    /// `(k, G(k))` in increasing `k`.
    pub values: Vec<(u64, BigInt)>,
    pub coprime_ks: Vec<u64>,
    /// Fraction of scanned `k` with `G(k) = 1`.
    pub density: BigRational,
    /// `(k, ln G(k) / k)` at the maximizing `k`, smallest such `k` on ties.
    pub max_log_ratio: (u64, f64),
    /// Recommended preconditions that do not hold.
    pub warnings: Vec<String>,
}

impl GcdSurvey {
    pub fn log_ratio(k: u64, g: &BigInt) -> f64 {
        ln_abs(g) / k as f64
    }
}

/// Scans `G(k)` for `k = 1..=k_max`; parallel over `k`, ordered output.
pub fn coprime_survey(pair: &IntPair, k_max: u64) -> Result<GcdSurvey> {
    if k_max == 0 {
        return Err(Error::precondition("k_max", "must be at least 1"));
    }
    let mut warnings = Vec::new();
    if let Independence::Dependent { r, s } = mult_indep_int(pair) {
        warnings.push(format!(
            "a and b are multiplicatively dependent: a^{r} = b^{s}"
        ));
    }
    let base = pair.base_gcd();
    if !base.is_one() {
        warnings.push(format!("gcd(a-1, b-1) = {base} divides every G(k)"));
    }

    let values = (1..=k_max)
        .into_par_iter()
        .map(|k| int_gcd_k(pair, k).map(|g| (k, g)))
        .collect::<Result<Vec<_>>>()?;

    let coprime_ks: Vec<u64> = values
        .iter()
        .filter(|(_, g)| g.is_one())
        .map(|(k, _)| *k)
        .collect();
    let density = BigRational::new(BigInt::from(coprime_ks.len()), BigInt::from(k_max));
    let max_log_ratio = values
        .iter()
        .map(|(k, g)| (*k, GcdSurvey::log_ratio(*k, g)))
        .fold((1, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });

    Ok(GcdSurvey {
        pair: pair.clone(),
        k_max,
        values,
        coprime_ks,
        density,
        max_log_ratio,
        warnings,
    })
}
