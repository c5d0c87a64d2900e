//! Bernoulli numbers and polynomials, the power-sum polynomials
//! `S_n(x) = (B_{n+1}(x) - B_{n+1}) / (n+1)`, the power-sum denominators
//! `d_n` and the quotients `f_n` with `d_n S_n(x) = (x - 1) f_n(x)`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{binomial, small, IntPolynomial, RatPolynomial};
use crate::error::{ensure_arg, Result};

/// Memo table of `B_0, B_1, …`, filled on demand from the recurrence
/// `Σ_{i≤n} C(n+1, i) B_i = 0`. Readers never observe a partial entry.
#[derive(Debug, Default)]
pub struct BernoulliCache {
    table: RwLock<Vec<BigRational>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide table.
    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::new)
    }

    pub fn get(&self, n: usize) -> BigRational {
        if let Some(b) = self.table.read().expect("bernoulli table poisoned").get(n) {
            return b.clone();
        }
        let mut table = self.table.write().expect("bernoulli table poisoned");
        while table.len() <= n {
            let m = table.len();
            let next = if m == 0 {
                BigRational::one()
            } else if m >= 3 && m % 2 == 1 {
                BigRational::zero()
            } else {
                let sum = table
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| !b.is_zero())
                    .fold(BigRational::zero(), |acc, (i, b)| {
                        acc + b * BigRational::from_integer(binomial(m as u64 + 1, i as u64))
                    });
                -sum / BigRational::from_integer(BigInt::from(m + 1))
            };
            table.push(next);
        }
        table[n].clone()
    }

    /// `B_0, …, B_n`
    pub fn upto(&self, n: usize) -> Vec<BigRational> {
        self.get(n);
        self.table.read().expect("bernoulli table poisoned")[..=n].to_vec()
    }
}

/// `B_n`, with the convention `B_1 = -1/2`.
pub fn bernoulli_number(n: usize) -> BigRational {
    BernoulliCache::global().get(n)
}

/// `lcm` of the denominators of `B_0, …, B_n`.
pub fn bernoulli_denominator_lcm(n: usize) -> BigInt {
    BernoulliCache::global()
        .upto(n)
        .iter()
        .fold(BigInt::one(), |acc, b| acc.lcm(b.denom()))
}

/// `B_n(x) = Σ_i C(n, i) B_i x^{n-i}`.
pub fn bernoulli_polynomial(n: usize) -> RatPolynomial {
    let b = BernoulliCache::global().upto(n);
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (i, bi) in b.iter().enumerate() {
        coeffs[n - i] = bi * BigRational::from_integer(binomial(n as u64, i as u64));
    }
    RatPolynomial::new(coeffs)
}

/// `S_n(x)`, which satisfies `S_n(m) = Σ_{a=0}^{m-1} a^n` for `m ≥ 1`.
pub fn s_polynomial(n: usize) -> RatPolynomial {
    let b = bernoulli_polynomial(n + 1);
    let shifted = &b - &RatPolynomial::constant(bernoulli_number(n + 1));
    shifted.scale(&BigRational::new(BigInt::one(), BigInt::from(n + 1)))
}

/// `d_n`, the least positive integer with `d_n S_n(x) ∈ Z[x]`; `d_0 = 1`.
pub fn powersum_denominator(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    s_polynomial(n).denominator_lcm()
}

/// `f_n(x) = d_n S_n(x) / (x - 1)`, checked to divide exactly.
pub fn f_polynomial(n: usize) -> Result<IntPolynomial> {
    ensure_arg!(n >= 1, "f_n is defined for n >= 1");
    Ok(PowerSumData::new(n)?.f)
}

/// `Π_{q prime, (q-1) | n} q` for even `n ≥ 2`.
pub fn vsc_denominator(n: u64) -> Result<BigInt> {
    ensure_arg!(n >= 2 && n.is_multiple_of(2), "n = {n} must be even and at least 2");
    Ok(small::divisors(n)
        .into_iter()
        .map(|d| d + 1)
        .filter(|&q| small::is_prime(q))
        .fold(BigInt::one(), |acc, q| acc * q))
}

/// `Σ_{a=0}^{m-1} a^n` by direct summation.
pub fn brute_power_sum(m: u64, n: u32) -> BigInt {
    (0..m).map(|a| BigInt::from(a).pow(n)).sum()
}

/// Everything attached to one power-sum index `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumData {
    pub n: usize,
    pub s: RatPolynomial,
    pub d: BigInt,
    pub f: IntPolynomial,
    /// `(n+2)/2` for even `n`, `(n+2)/3` for odd `n`.
    pub m_bound: BigRational,
}

impl PowerSumData {
    pub fn new(n: usize) -> Result<Self> {
        ensure_arg!(n >= 1, "power-sum data needs n >= 1");
        let s = s_polynomial(n);
        let d = s.denominator_lcm();
        let scaled = s
            .scale(&BigRational::from_integer(d.clone()))
            .to_integer()
            .expect("d_n clears every denominator of S_n");
        let x_minus_one = IntPolynomial::new(vec![-BigInt::one(), BigInt::one()]);
        let f = scaled.div_exact_monic(&x_minus_one)?;
        let m_bound = BigRational::new(
            BigInt::from(n + 2),
            BigInt::from(if n.is_multiple_of(2) { 2 } else { 3 }),
        );
        Ok(PowerSumData { n, s, d, f, m_bound })
    }
}
