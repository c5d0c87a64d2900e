use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::small;
use crate::error::{ensure_arg, Result};

/// Which ring of integers a statement is about: `Z[ζ_m + ζ_m^{-1}]` or
/// `Z[ζ_m]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Plus,
    Full,
}

/// Prime divisors `ℓ` of `m` sorted by `v_p(ℓ - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SProfile {
    pub p: u64,
    pub m: u64,
    /// `j ↦ s_j`, only nonzero entries
    pub s: BTreeMap<u32, u32>,
}

impl SProfile {
    pub fn s(&self, j: u32) -> u32 {
        self.s.get(&j).copied().unwrap_or(0)
    }

    /// `θ = max{j : s_j ≠ 0}`, zero when no prime divisor is `1 mod p`.
    pub fn theta(&self) -> u32 {
        self.s.keys().next_back().copied().unwrap_or(0)
    }

    /// `Σ_j s_j`
    pub fn total(&self) -> u32 {
        self.s.values().sum()
    }

    /// `N = Σ_j j s_j`, so that the p-part of the relevant Galois group has
    /// order `p^N`.
    pub fn log_order(&self) -> u32 {
        self.s.iter().map(|(j, s)| j * s).sum()
    }

    /// Number of characters of exact order `p^j` in
    /// `⊕_j (Z/p^j)^{s_j}`; for `j = 1` this excludes nothing but the
    /// trivial character.
    pub fn ghat_count(&self, j: u32) -> BigInt {
        let p = BigInt::from(self.p);
        if j == 1 {
            return p.pow(self.total()) - 1;
        }
        let (mut upper, mut lower) = (0u32, 0u32);
        for (&i, &s) in &self.s {
            upper += i.min(j) * s;
            lower += i.min(j - 1) * s;
        }
        p.pow(upper) - p.pow(lower)
    }
}

/// `s_j = #{ℓ | m prime : v_p(ℓ - 1) = j}`
pub fn s_profile(m: u64, p: u64) -> Result<SProfile> {
    ensure_arg!(m > 1, "m must exceed 1");
    ensure_arg!(p % 2 == 1 && small::is_prime(p), "p = {p} is not an odd prime");
    let mut s = BTreeMap::new();
    for ell in small::prime_divisors(m) {
        let j = small::valuation(ell - 1, p);
        if j > 0 {
            *s.entry(j).or_insert(0) += 1;
        }
    }
    Ok(SProfile { p, m, s })
}

/// `δ = 1` on the boundary `p = k + 2`, else `0`.
pub fn delta(p: u64, k: u64) -> u32 {
    u32::from(p == k + 2)
}

/// Guaranteed exponent of `p` in `#K_{2k}(Z[ζ_m + ζ_m^{-1}])` for
/// `p ≥ k + 2`:
///
/// `⌈(#Ĝ_1 - p^{δ s_1} + δ)/(p-1) + Σ_{j≥2} #Ĝ_j / (p^{j-1}(p-1))⌉`
///
/// Zero when no prime divisor of `m` is `1 mod p`.
pub fn lower_bound_exponent(p: u64, k: u64, m: u64) -> Result<BigInt> {
    ensure_arg!(k % 2 == 1, "k = {k} must be odd and positive");
    ensure_arg!(p >= k + 2, "need p >= k + 2, got p = {p}, k = {k}");
    let profile = s_profile(m, p)?;
    Ok(lower_bound_for_profile(&profile, delta(p, k)))
}

pub fn lower_bound_for_profile(profile: &SProfile, delta: u32) -> BigInt {
    let theta = profile.theta();
    if theta == 0 {
        return BigInt::zero();
    }
    let p = BigInt::from(profile.p);
    let pm1 = BigInt::from(profile.p - 1);
    let d = BigInt::from(delta);
    let first = profile.ghat_count(1) - p.pow(delta * profile.s(1)) + &d;
    let mut total = BigRational::new(first, pm1.clone());
    for j in 2..=theta {
        total += BigRational::new(profile.ghat_count(j), p.pow(j - 1) * &pm1);
    }
    total.ceil().to_integer()
}

/// `[Q(ζ_p, ζ_m)^+ : Q(ζ_m)^+]` (plus) or `[Q(ζ_p, ζ_m) : Q(ζ_m)]` (full).
pub fn degree_adjoin_zeta(variant: Variant, m: u64, p: u64) -> Result<u64> {
    ensure_arg!(m > 1, "m must exceed 1");
    ensure_arg!(p % 2 == 1 && small::is_prime(p), "p = {p} is not an odd prime");
    Ok(match (m.is_multiple_of(p), variant) {
        (false, _) => p - 1,
        (true, Variant::Plus) => 2,
        (true, Variant::Full) => 1,
    })
}
