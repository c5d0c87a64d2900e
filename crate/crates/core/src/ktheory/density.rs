use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::small;
use crate::error::{ensure_arg, Result};

/// Prime counts `π_p(x)` and `π_{p^2}(x)` in the progressions `1 mod p`
/// and `1 mod p^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrowkinDensity {
    pub p: u64,
    pub x: u64,
    pub n_p: u64,
    pub n_p2: u64,
}

impl BrowkinDensity {
    /// `π_{p^2}(x) / π_p(x)`, zero when there are no primes `1 mod p` yet.
    pub fn ratio(&self) -> BigRational {
        if self.n_p == 0 {
            return BigRational::zero();
        }
        BigRational::new(BigInt::from(self.n_p2), BigInt::from(self.n_p))
    }
}

/// Counts primes `ℓ ≤ x` with `ℓ ≡ 1 (mod p)` and `ℓ ≡ 1 (mod p^2)`.
pub fn browkin_density(p: u64, x: u64) -> Result<BrowkinDensity> {
    ensure_arg!(p % 2 == 1 && small::is_prime(p), "p = {p} is not an odd prime");
    ensure_arg!(x <= 1 << 32, "x = {x} is too large to sieve");
    let p2 = p * p;
    let (mut n_p, mut n_p2) = (0, 0);
    for ell in primes_up_to(x) {
        if ell % p == 1 {
            n_p += 1;
            if ell % p2 == 1 {
                n_p2 += 1;
            }
        }
    }
    Ok(BrowkinDensity { p, x, n_p, n_p2 })
}

fn primes_up_to(x: u64) -> impl Iterator<Item = u64> {
    let n = x as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            for j in (i * i..=n).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    (2..=n).filter(move |&i| !composite[i]).map(|i| i as u64)
}
