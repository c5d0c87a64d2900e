//! Integer factorization: trial division, then Brent's variant of Pollard
//! rho, with Miller-Rabin primality certification (deterministic below
//! 2^64, probabilistic with extra random bases above).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::small;

const TRIAL_LIMIT: u64 = 1 << 16;
const EXTRA_ROUNDS: usize = 16;
pub const DEFAULT_SEED: u64 = 0x6b5f_2b74;

/// Prime factorization as an ordered map prime → exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization(BTreeMap<BigInt, u32>);

impl Factorization {
    pub fn iter(&self) -> impl Iterator<Item = (&BigInt, u32)> {
        self.0.iter().map(|(p, &e)| (p, e))
    }

    pub fn exponent(&self, p: &BigInt) -> u32 {
        self.0.get(p).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Product of the prime powers.
    pub fn product(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, (p, &e)| acc * p.pow(e))
    }

    fn insert(&mut self, p: BigInt, e: u32) {
        *self.0.entry(p).or_insert(0) += e;
    }
}

impl fmt::Display for Factorization {
    /// Ascending primes with caret exponents, e.g. `2^9·3^2·487`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, &e) in &self.0 {
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorizes `n ≥ 1` with the default seed.
pub fn factorize(n: &BigInt) -> Factorization {
    factorize_seeded(n, DEFAULT_SEED)
}

/// Factorizes `n ≥ 1`; `seed` drives the randomized parts.
pub fn factorize_seeded(n: &BigInt, seed: u64) -> Factorization {
    assert!(n.is_positive(), "factorize expects a positive integer");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Factorization::default();
    let mut rest = n.clone();
    let mut d = 2u64;
    while d < TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            out.insert(bd, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return out;
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m, &mut rng) {
            out.insert(m, 1);
            continue;
        }
        if let Some((r, k)) = perfect_power(&m) {
            for _ in 0..k {
                stack.push(r.clone());
            }
            continue;
        }
        let d = rho_brent(&m, &mut rng);
        stack.push(&m / &d);
        stack.push(d);
    }
    out
}

/// Miller-Rabin. Below 2^64 the fixed base set is a proof; above it the
/// fixed bases are followed by random ones.
pub fn is_probable_prime<R: Rng>(n: &BigInt, rng: &mut R) -> bool {
    if let Some(v) = n.to_u64() {
        return small::is_prime(v);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let witness = |a: BigInt| -> bool {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == nm1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                return true;
            }
        }
        false
    };
    let fixed = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].map(BigInt::from);
    if !fixed.into_iter().all(witness) {
        return false;
    }
    (0..EXTRA_ROUNDS).all(|_| {
        let a = BigInt::from(rng.gen_range(2..u64::MAX)) % (n - 3u32) + 2u32;
        witness(a)
    })
}

fn perfect_power(n: &BigInt) -> Option<(BigInt, u32)> {
    let bits = n.bits() as u32;
    (2..=bits).find_map(|k| {
        let r = n.nth_root(k);
        (r.pow(k) == *n && r > BigInt::one()).then_some((r, k))
    })
}

/// A nontrivial divisor of an odd composite `n`.
fn rho_brent<R: Rng>(n: &BigInt, rng: &mut R) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let batch = 128u64;
    loop {
        let c = BigInt::from(rng.gen_range(1..u64::MAX)) % n;
        let mut y = BigInt::from(rng.gen_range(0..u64::MAX)) % n;
        let f = |v: &BigInt| (v * v + &c) % n;
        let mut g = BigInt::one();
        let mut q = BigInt::one();
        let mut r = 1u64;
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..batch.min(r - k) {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
        }
        if g == *n {
            // the batch overshot; step one at a time from the saved point
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(n: &str, expect: &[(&str, u32)]) {
        let n: BigInt = n.parse().unwrap();
        let f = factorize(&n);
        let got: Vec<(String, u32)> = f.iter().map(|(p, e)| (p.to_string(), e)).collect();
        let want: Vec<(String, u32)> = expect.iter().map(|(p, e)| (p.to_string(), *e)).collect();
        assert_eq!(got, want);
        assert_eq!(f.product(), n);
    }

    #[test]
    fn small_values() {
        check("1", &[]);
        check("2244096", &[("2", 9), ("3", 2), ("487", 1)]);
        check("8", &[("2", 3)]);
        check("65537", &[("65537", 1)]);
    }

    #[test]
    fn large_values() {
        check(
            "2101941875088322867",
            &[("691", 1), ("10903", 1), ("278995143079", 1)],
        );
        check(
            "6952891386341432645005057",
            &[("11", 1), ("1607", 1), ("120263419", 1), ("3270569157439", 1)],
        );
        // repeated prime above the trial-division range
        check(
            "998244366975420990913973297",
            &[("998244353", 1), ("1000000007", 2)],
        );
    }

    #[test]
    fn display_style() {
        let f = factorize(&BigInt::from(2244096));
        assert_eq!(f.to_string(), "2^9·3^2·487");
        assert_eq!(factorize(&BigInt::one()).to_string(), "1");
    }

    #[test]
    fn mersenne_primality() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m127 = (BigInt::one() << 127u32) - 1;
        assert!(is_probable_prime(&m127, &mut rng));
        let m67 = (BigInt::one() << 67u32) - 1;
        assert!(!is_probable_prime(&m67, &mut rng));
    }
}
