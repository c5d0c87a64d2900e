//! Machine-word number theory used for moduli, residues and exponents.

use num_integer::Integer as _;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factorization by trial division; `n` is expected to be a modulus or a
/// group order, so its size is bounded.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn totient(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0 && p > 1);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub fn is_squarefree(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e == 1)
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Multiplicative order of `a` modulo `m`, given the factorization of a
/// multiple `group_order` of it.
pub fn multiplicative_order(a: u64, m: u64, group_order: u64) -> u64 {
    let mut ord = group_order;
    for (q, _) in factor(group_order) {
        while ord.is_multiple_of(q) && pow_mod(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    ord
}

/// Smallest primitive root modulo an odd prime power `q^e`.
pub fn smallest_primitive_root(q: u64, e: u32) -> u64 {
    let modulus = q.pow(e);
    let order = (q - 1) * q.pow(e - 1);
    let factors = prime_divisors(order);
    (2..modulus)
        .find(|&g| {
            g % q != 0 && factors.iter().all(|&r| pow_mod(g, order / r, modulus) != 1)
        })
        .expect("odd prime powers have primitive roots")
}

/// Exponent `x` with `g^x = a` in the cyclic group of order `order`
/// generated by `g` modulo `m`, by Pohlig-Hellman over the factorization
/// of `order`.
pub fn discrete_log(a: u64, g: u64, order: u64, m: u64) -> Option<u64> {
    let a = a % m;
    if pow_mod(a, order, m) != 1 {
        return None;
    }
    let mut residues = Vec::new();
    for (q, e) in factor(order) {
        let qe = q.pow(e);
        let cofactor = order / qe;
        let gq = pow_mod(g, cofactor, m);
        let aq = pow_mod(a, cofactor, m);
        // digits of the log in base q, one at a time
        let gamma = pow_mod(gq, qe / q, m);
        let mut x = 0u64;
        let mut qk = 1u64;
        let gq_inv = inv_mod(gq, m)?;
        for _ in 0..e {
            let h = mul_mod(aq, pow_mod(gq_inv, x, m), m);
            let h = pow_mod(h, qe / (qk * q), m);
            let digit = (0..q).find(|&d| pow_mod(gamma, d, m) == h)?;
            x += digit * qk;
            qk *= q;
        }
        residues.push((x, qe));
    }
    let x = residues.iter().fold((0u64, 1u64), |(acc, modu), &(r, qe)| {
        let l = modu * qe;
        // solve t = acc (mod modu), t = r (mod qe)
        let inv = inv_mod(modu % qe, qe).unwrap_or(0);
        let diff = (r + qe - acc % qe) % qe;
        let t = acc + modu * mul_mod(diff, inv, qe);
        (t % l, l)
    });
    (pow_mod(g, x.0, m) == a).then_some(x.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(smallest_primitive_root(7, 1), 3);
        assert_eq!(smallest_primitive_root(3, 2), 2);
        // 14 is a primitive root mod 29 but 2 is smaller
        assert_eq!(smallest_primitive_root(29, 1), 2);
    }

    #[test]
    fn dlog_roundtrip() {
        for m in [7u64, 9, 25, 27, 49, 121, 343, 1009] {
            let (q, e) = factor(m)[0];
            let g = smallest_primitive_root(q, e);
            let order = totient(m);
            for x in 0..order {
                let a = pow_mod(g, x, m);
                assert_eq!(discrete_log(a, g, order, m), Some(x));
            }
        }
        // powers of 5 modulo 32
        for x in 0..8 {
            assert_eq!(discrete_log(pow_mod(5, x, 32), 5, 8, 32), Some(x));
        }
        assert_eq!(discrete_log(3, 5, 8, 32), None);
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(63), vec![1, 3, 7, 9, 21, 63]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(totient(63), 36);
        assert_eq!(valuation(18, 3), 2);
    }
}
