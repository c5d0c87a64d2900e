use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::bound::{degree_adjoin_zeta, lower_bound_for_profile, s_profile, delta, Variant};
use crate::arith::small;
use crate::error::{ensure_arg, Result};

/// The results a verdict can rest on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Exponent bound from the s-profile, for `k ≤ p - 2`.
    LowerBound,
    /// Divisibility of `K_{2k + 2dr}` for `r ≥ 1` from a base index `k ≤ p - 2`.
    ShiftedFamily,
    /// `p | #K_{2k}` depends only on `k` modulo `[F(ζ_p) : F]`.
    Periodicity,
    /// For the degree-`p` subfield of `Q(ζ_ℓ)`: `p | #K_{2(p-2)}` iff
    /// `v_p(ℓ - 1) ≥ 2`.
    PrimeConductor,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::LowerBound => "lower-bound",
            Rule::ShiftedFamily => "shifted-family",
            Rule::Periodicity => "periodicity",
            Rule::PrimeConductor => "prime-conductor",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    GuaranteedDivisible { exponent_lower_bound: BigInt, rules: Vec<Rule> },
    GuaranteedNotDivisible { rules: Vec<Rule> },
    Unknown,
}

impl Verdict {
    pub fn rules(&self) -> &[Rule] {
        match self {
            Verdict::GuaranteedDivisible { rules, .. } | Verdict::GuaranteedNotDivisible { rules } => rules,
            Verdict::Unknown => &[],
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::GuaranteedDivisible { .. } => "divisible",
            Verdict::GuaranteedNotDivisible { .. } => "not-divisible",
            Verdict::Unknown => "unknown",
        }
    }
}

/// `p | #K_{2(p-2)}(O_F)` for the degree-`p` subfield `F` of `Q(ζ_ℓ)`.
pub fn browkin_divisible(p: u64, ell: u64) -> Result<bool> {
    ensure_arg!(p % 2 == 1 && small::is_prime(p), "p = {p} is not an odd prime");
    ensure_arg!(small::is_prime(ell), "ell = {ell} is not prime");
    ensure_arg!(ell % p == 1, "ell = {ell} is not 1 mod {p}");
    Ok(small::valuation(ell - 1, p) >= 2)
}

/// What the known theorems say about `p | #K_{2k}` of `Z[ζ_m + ζ_m^{-1}]`
/// (plus) or `Z[ζ_m]` (full). Never computes an order.
pub fn divisibility_verdict(p: u64, m: u64, k: u64, variant: Variant) -> Result<Verdict> {
    ensure_arg!(k % 2 == 1, "k = {k} must be odd and positive");
    let profile = s_profile(m, p)?;
    let d = degree_adjoin_zeta(variant, m, p)?;

    if k + 2 <= p {
        let bound = lower_bound_for_profile(&profile, delta(p, k));
        if bound.is_positive() {
            return Ok(Verdict::GuaranteedDivisible {
                exponent_lower_bound: bound,
                rules: vec![Rule::LowerBound],
            });
        }
    }

    let has_one_mod_p = profile.theta() >= 1;
    let has_one_mod_p2 = profile.theta() >= 2;
    let base = (1..k.min(p - 2) + 1)
        .step_by(2)
        .filter(|&k0| k0 < k && (k - k0).is_multiple_of(d))
        .find(|&k0| if k0 < p - 2 { has_one_mod_p } else { has_one_mod_p2 });
    if base.is_some() {
        return Ok(Verdict::GuaranteedDivisible {
            exponent_lower_bound: BigInt::one(),
            rules: vec![Rule::ShiftedFamily, Rule::Periodicity],
        });
    }

    // Q(ζ_m)^+ is itself the degree-p subfield of Q(ζ_ℓ) exactly when
    // m ∈ {ℓ, 2ℓ} with ℓ = 2p + 1 prime
    let ell = if m.is_multiple_of(2) { m / 2 } else { m };
    let is_prime_cyclic = variant == Variant::Plus
        && ell % 2 == 1
        && small::is_prime(ell)
        && ell == 2 * p + 1;
    if is_prime_cyclic && (k + 2) % d == p % d {
        let rules = if k == p - 2 {
            vec![Rule::PrimeConductor]
        } else {
            vec![Rule::PrimeConductor, Rule::Periodicity]
        };
        return Ok(if small::valuation(ell - 1, p) >= 2 {
            Verdict::GuaranteedDivisible { exponent_lower_bound: BigInt::one(), rules }
        } else {
            Verdict::GuaranteedNotDivisible { rules }
        });
    }
    Ok(Verdict::Unknown)
}
