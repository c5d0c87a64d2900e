//! Exact scalar, polynomial and cyclotomic arithmetic.

pub mod cyclotomic;
pub mod factor;
pub mod poly;
pub mod small;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{
    cyclotomic_polynomial, cyclotomic_polynomial_of_order, norm_in_order, CyclotomicElement,
    CyclotomicLevel, CyclotomicRational,
};
pub use factor::{factorize, factorize_seeded, Factorization};
pub use poly::{IntPolynomial, Polynomial, RatPolynomial};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;
/// Reduced fraction of [`Integer`]s with positive denominator.
pub type Rational = BigRational;

/// `v_p(n)` for nonzero `n`; zero is given valuation 0 here, callers that
/// care must test for zero first.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return 0;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(q)` of a nonzero rational, `None` for zero.
pub fn rational_valuation(q: &BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(valuation(q.numer(), p) as i64 - valuation(q.denom(), p) as i64)
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
