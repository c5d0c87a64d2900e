//! Generalized Bernoulli numbers `B_{n,χ}`, the values `L(χ, -k)`, Dedekind
//! zeta values `ζ_F(-k)` of abelian fields, and π-adic valuations of the
//! character products that control p-divisibility of `K_{2k}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{
    binomial, norm_in_order, small, CyclotomicElement, CyclotomicLevel, CyclotomicRational,
    IntPolynomial,
};
use crate::characters::{characters_of_field, CharacterGroup, DirichletCharacter, FieldSpec};
use crate::error::{ensure_arg, invalid, Error, Result};
use crate::powersum::{bernoulli_denominator_lcm, bernoulli_number};

/// `B_{n,χ}` for a primitive character, kept as integer sums over the
/// values of `χ`:
///
/// `B_{n,χ} = (Σ_t S_t ζ_{ord χ}^t) / (f D)`
///
/// with `f` the conductor and `D` the lcm of the denominators of
/// `B_0, …, B_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedBernoulli {
    character: DirichletCharacter,
    n: usize,
    sums: Vec<BigInt>,
    denominator: BigInt,
}

impl GeneralizedBernoulli {
    pub fn new(chi: &DirichletCharacter, n: usize) -> Result<Self> {
        ensure_arg!(n >= 2, "B_(n,chi) needs n >= 2, got {n}");
        ensure_arg!(chi.is_primitive(), "{chi} is not primitive");
        let f = chi.conductor();
        let d = bernoulli_denominator_lcm(n);
        // V(a) = D f^n B_n(a/f) = Σ_i C(n,i) (D B_i) f^i a^{n-i}
        let fb = BigInt::from(f);
        let mut coeffs = vec![BigInt::zero(); n + 1];
        let mut f_pow = BigInt::one();
        for i in 0..=n {
            let b = bernoulli_number(i);
            if !b.is_zero() {
                let scaled = &d / b.denom() * b.numer();
                coeffs[n - i] = binomial(n as u64, i as u64) * scaled * &f_pow;
            }
            f_pow *= &fb;
        }
        let v = IntPolynomial::new(coeffs);
        let order = chi.order() as usize;
        let mut sums = vec![BigInt::zero(); order];
        for (a, value) in chi.value_table().into_iter().enumerate() {
            if let Some(t) = value {
                // residue 0 only occurs for the trivial character, standing for a = f = 1
                let a = if f == 1 { 1 } else { a as u64 };
                sums[t as usize] += v.eval(&BigInt::from(a));
            }
        }
        Ok(GeneralizedBernoulli { character: chi.clone(), n, sums, denominator: fb * d })
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.character
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `S_t`, indexed by the exponent `t` of `ζ_{ord χ}`.
    pub fn sums(&self) -> &[BigInt] {
        &self.sums
    }

    /// `f D`
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// `Σ_t S_t x^t`
    pub fn numerator_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.sums.clone())
    }

    /// The value in `Q(ζ_{p^N})`; needs `ord χ | p^N`.
    pub fn at_level(&self, level: CyclotomicLevel) -> Result<CyclotomicRational> {
        let order = self.character.order();
        let q = level.order();
        ensure_arg!(
            q.is_multiple_of(order),
            "character of order {order} does not take values in {level}"
        );
        let stride = (q / order) as usize;
        let mut spread = vec![BigInt::zero(); q as usize];
        for (t, s) in self.sums.iter().enumerate() {
            spread[t * stride] = s.clone();
        }
        CyclotomicRational::new(
            CyclotomicElement::from_exponent_sums(level, &spread),
            self.denominator.clone(),
        )
    }

    /// `Π_{a ∈ (Z/ord χ)^*} B_{n,χ^a}`, the norm of `B_{n,χ}` from
    /// `Q(ζ_{ord χ})` to `Q`.
    pub fn orbit_norm(&self) -> BigRational {
        let order = self.character.order();
        if order == 1 {
            return BigRational::new(self.sums[0].clone(), self.denominator.clone());
        }
        let phi = small::totient(order) as u32;
        let norm = norm_in_order(order, &self.numerator_polynomial());
        BigRational::new(norm, self.denominator.pow(phi))
    }
}

/// `B_{n,χ} = f^{n-1} Σ_{a=1}^{f} χ(a) B_n(a/f)` in `Q(ζ_{p^N})`.
pub fn generalized_bernoulli(
    chi: &DirichletCharacter,
    n: usize,
    level: CyclotomicLevel,
) -> Result<CyclotomicRational> {
    GeneralizedBernoulli::new(chi, n)?.at_level(level)
}

/// `L(χ, -k) = -B_{k+1,χ} / (k+1)` for odd `k ≥ 1`.
pub fn l_value_negative(
    chi: &DirichletCharacter,
    k: usize,
    level: CyclotomicLevel,
) -> Result<CyclotomicRational> {
    check_odd(k)?;
    generalized_bernoulli(chi, k + 1, level)?
        .scale(&BigRational::new(-BigInt::one(), BigInt::from(k + 1)))
}

/// `ζ_F(-k) = Π_{χ ∈ X_F} L(χ, -k)` for a totally real abelian field.
pub fn zeta_value_negative(spec: &FieldSpec, k: usize) -> Result<BigRational> {
    zeta_value_of_group(&characters_of_field(spec)?, k)
}

/// As [`zeta_value_negative`], for an already built character group. Each
/// Galois orbit contributes one norm; orbits are evaluated in parallel and
/// combined in a fixed order.
pub fn zeta_value_of_group(group: &CharacterGroup, k: usize) -> Result<BigRational> {
    check_odd(k)?;
    ensure_arg!(group.is_totally_real(), "field is not totally real");
    let chars = group.characters();
    let norms = group
        .galois_orbits()
        .par_iter()
        .map(|orbit| GeneralizedBernoulli::new(&chars[orbit[0]], k + 1).map(|b| b.orbit_norm()))
        .collect::<Result<Vec<_>>>()?;
    let product = norms.into_iter().fold(BigRational::one(), |acc, x| acc * x);
    let factor = BigRational::new(-BigInt::one(), BigInt::from(k + 1));
    Ok(product * pow_rational(&factor, chars.len()))
}

/// `v_π(B_{k+1,χ})` at `π = 1 - ζ_{p^N}`.
pub fn char_bernoulli_pi_valuation(
    chi: &DirichletCharacter,
    k: usize,
    level: CyclotomicLevel,
) -> Result<i64> {
    check_odd(k)?;
    let b = generalized_bernoulli(chi, k + 1, level)?;
    b.pi_valuation()
        .ok_or_else(|| invalid!("B_({},chi) vanishes for {chi}", k + 1))
}

/// `Σ_{χ ≠ 1} v_π(B_{k+1,χ}) / φ(p^N)` over the character group of a
/// p-extension, at the smallest level holding all values. The result does
/// not depend on the level; its ceiling bounds `v_p(Π_{χ≠1} B_{k+1,χ})`
/// from below.
pub fn product_valuation(spec: &FieldSpec, p: u64, k: usize) -> Result<BigRational> {
    let group = characters_of_field(spec)?;
    ensure_arg!(group.is_p_group(p), "{spec} is not a {p}-extension");
    let n = small::valuation(group.exponent(), p).max(1);
    product_valuation_at(&group, CyclotomicLevel::new(p, n)?, k)
}

/// [`product_valuation`] at an explicit level `p^N`.
pub fn product_valuation_at(
    group: &CharacterGroup,
    level: CyclotomicLevel,
    k: usize,
) -> Result<BigRational> {
    check_odd(k)?;
    let p = level.prime();
    ensure_arg!(p >= k as u64 + 2, "need p >= k + 2, got p = {p}, k = {k}");
    ensure_arg!(group.is_p_group(p), "character group is not a {p}-group");
    let chars = group.characters();
    // valuations are constant on Galois orbits: π is the only prime above p
    let parts = group
        .galois_orbits()
        .par_iter()
        .filter(|orbit| !chars[orbit[0]].is_trivial())
        .map(|orbit| {
            char_bernoulli_pi_valuation(&chars[orbit[0]], k, level).map(|v| v * orbit.len() as i64)
        })
        .collect::<Result<Vec<_>>>()?;
    let total: i64 = parts.into_iter().sum();
    Ok(BigRational::new(BigInt::from(total), BigInt::from(level.degree())))
}

/// `⌈q⌉`
pub fn ceil_rational(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

fn pow_rational(q: &BigRational, e: usize) -> BigRational {
    let numer = q.numer().pow(e as u32);
    let denom = q.denom().pow(e as u32);
    BigRational::new(numer, denom)
}

fn check_odd(k: usize) -> Result<()> {
    if k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("k = {k} must be odd and positive")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::characters::Parity;
    use crate::powersum::s_polynomial;

    fn level(p: u64, n: u32) -> CyclotomicLevel {
        CyclotomicLevel::new(p, n).unwrap()
    }

    fn primitive_of_order(m: u64, order: u64) -> Vec<DirichletCharacter> {
        DirichletCharacter::all(m)
            .into_iter()
            .filter(|c| c.order() == order && c.is_primitive())
            .collect()
    }

    /// `Σ_i C(n,i) B_i f^{i-1} Σ_a χ(a) a^{n-i}`, evaluating `χ` through
    /// discrete logarithms.
    fn expansion(chi: &DirichletCharacter, n: usize, lvl: CyclotomicLevel) -> CyclotomicRational {
        let f = chi.conductor();
        let q = lvl.order();
        let stride = q / chi.order();
        let mut total = CyclotomicRational::from_rational(lvl, &rat(0, 1));
        for i in 0..=n {
            let mut sums = vec![BigInt::zero(); q as usize];
            for a in 1..=f {
                if let Some(t) = chi.evaluate(a as i64) {
                    sums[(t * stride) as usize] += BigInt::from(a).pow((n - i) as u32);
                }
            }
            let inner = CyclotomicRational::from_integral(CyclotomicElement::from_exponent_sums(lvl, &sums));
            let coeff = bernoulli_number(i)
                * BigRational::from_integer(binomial(n as u64, i as u64))
                * BigRational::new(BigInt::from(f).pow(i as u32), BigInt::from(f));
            total = total.add(&inner.scale(&coeff).unwrap()).unwrap();
        }
        total
    }

    #[test]
    fn trivial_character_gives_bernoulli_numbers() {
        let one = DirichletCharacter::trivial(1);
        for n in 2..=14 {
            let b = generalized_bernoulli(&one, n, level(3, 1)).unwrap();
            assert_eq!(b.rational_part().unwrap(), bernoulli_number(n), "n = {n}");
        }
        let l1 = l_value_negative(&one, 1, level(5, 1)).unwrap();
        assert_eq!(l1.rational_part().unwrap(), rat(-1, 12));
        let l3 = l_value_negative(&one, 3, level(5, 1)).unwrap();
        assert_eq!(l3.rational_part().unwrap(), rat(1, 120));
        assert_eq!(zeta_value_negative(&FieldSpec::rationals(), 1).unwrap(), rat(-1, 12));
    }

    #[test]
    fn rejects_bad_input() {
        let chi = primitive_of_order(7, 3).remove(0);
        assert!(generalized_bernoulli(&chi, 1, level(3, 1)).is_err());
        assert!(generalized_bernoulli(&chi.lift(21).unwrap(), 2, level(3, 1)).is_err());
        assert!(generalized_bernoulli(&chi, 2, level(5, 1)).is_err());
        assert!(l_value_negative(&chi, 2, level(3, 1)).is_err());
        let odd = primitive_of_order(7, 6).remove(0);
        assert!(char_bernoulli_pi_valuation(&odd, 1, level(3, 1)).is_err());
    }

    #[test]
    fn matches_expansion() {
        for (m, p) in [(7u64, 3u64), (9, 3), (11, 5), (13, 3), (19, 3), (25, 5), (27, 3), (31, 5)] {
            for chi in DirichletCharacter::all(m) {
                let o = chi.order();
                if !chi.is_primitive() || !(small::valuation(o, p) > 0 && o == p.pow(small::valuation(o, p))) {
                    continue;
                }
                let lvl = level(p, small::valuation(o, p));
                for n in [2usize, 3, 4, 6] {
                    let b = generalized_bernoulli(&chi, n, lvl).unwrap();
                    assert_eq!(b, expansion(&chi, n, lvl), "{chi}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn galois_equivariance() {
        for (m, p) in [(7u64, 3u64), (11, 5), (19, 3), (27, 3), (29, 7)] {
            let g = characters_of_field(&FieldSpec::MaxPSubextension { m, p }).unwrap();
            let lvl = level(p, small::valuation(g.exponent(), p));
            for chi in g.nontrivial() {
                let base = generalized_bernoulli(chi, 2, lvl).unwrap();
                for a in 1..(2 * lvl.order() as i64) {
                    if a % p as i64 == 0 {
                        continue;
                    }
                    let lhs = generalized_bernoulli(&chi.pow(a), 2, lvl).unwrap();
                    assert_eq!(lhs, base.galois_apply(a).unwrap(), "{chi}, a = {a}");
                }
            }
        }
    }

    #[test]
    fn odd_characters_vanish_for_even_n() {
        for m in 3..=50u64 {
            for chi in DirichletCharacter::all(m) {
                if chi.parity() != Parity::Odd || !chi.is_primitive() {
                    continue;
                }
                let b = GeneralizedBernoulli::new(&chi, 2).unwrap();
                let b4 = GeneralizedBernoulli::new(&chi, 4).unwrap();
                assert!(b.orbit_norm().is_zero(), "{chi}");
                assert!(b4.orbit_norm().is_zero(), "{chi}");
            }
        }
    }

    #[test]
    fn orbit_products_are_rational() {
        for (m, p) in [(7u64, 3u64), (11, 5), (19, 3), (31, 5), (37, 3)] {
            let g = characters_of_field(&FieldSpec::MaxPSubextension { m, p }).unwrap();
            let lvl = level(p, small::valuation(g.exponent(), p).max(1));
            let chars = g.characters();
            for orbit in g.galois_orbits() {
                let mut prod = CyclotomicRational::from_rational(lvl, &rat(1, 1));
                for &i in &orbit {
                    prod = prod.mul(&generalized_bernoulli(&chars[i], 4, lvl).unwrap()).unwrap();
                }
                let direct = GeneralizedBernoulli::new(&chars[orbit[0]], 4).unwrap().orbit_norm();
                assert_eq!(prod.rational_part().unwrap(), direct);
            }
        }
    }

    #[test]
    fn valuation_scales_with_level() {
        for (m, p) in [(19u64, 3u64), (37, 3), (11, 5)] {
            let chi = primitive_of_order(m, p).remove(0);
            let v1 = char_bernoulli_pi_valuation(&chi, 1, level(p, 1)).unwrap();
            let v2 = char_bernoulli_pi_valuation(&chi, 1, level(p, 2)).unwrap();
            assert_eq!(v2, v1 * p as i64);
            let g = characters_of_field(&FieldSpec::MaxPSubextension { m, p }).unwrap();
            let n = small::valuation(g.exponent(), p);
            let a = product_valuation_at(&g, level(p, n), 1).unwrap();
            let b = product_valuation_at(&g, level(p, n + 1), 1).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn known_valuations() {
        let chi7 = primitive_of_order(7, 3).remove(0);
        assert_eq!(char_bernoulli_pi_valuation(&chi7, 1, level(3, 1)).unwrap(), 0);
        for chi in primitive_of_order(11, 5) {
            assert!(char_bernoulli_pi_valuation(&chi, 1, level(5, 1)).unwrap() >= 1);
        }
        for chi in primitive_of_order(19, 3) {
            assert!(char_bernoulli_pi_valuation(&chi, 1, level(3, 1)).unwrap() >= 1);
            assert!(char_bernoulli_pi_valuation(&chi, 1, level(3, 2)).unwrap() >= 3);
        }
        let pv = |spec, p| product_valuation(&spec, p, 1).unwrap();
        assert_eq!(ceil_rational(&pv(FieldSpec::MaxPSubextension { m: 19, p: 3 }, 3)), BigInt::from(2));
        assert!(pv(FieldSpec::PrimeCyclicSubfield { ell: 7, p: 3 }, 3).is_zero());
        assert_eq!(ceil_rational(&pv(FieldSpec::MaxPSubextension { m: 11, p: 5 }, 5)), BigInt::from(1));
    }

    #[test]
    fn real_cyclotomic_zeta_values() {
        // w_2 of Q(ζ_7)^+ is 168 and #K_2 = 8
        let z = zeta_value_negative(&FieldSpec::RealCyclotomic { m: 7 }, 1).unwrap();
        assert_eq!(z * BigRational::from_integer(BigInt::from(-168)), rat(8, 1));
        assert!(zeta_value_negative(&FieldSpec::RealCyclotomic { m: 7 }, 2).is_err());
    }

    /// `Σ_{a<m, gcd(a,m)=1} a^e` by inclusion–exclusion over the prime
    /// divisors of a squarefree `m`, using only ordinary power sums.
    fn coprime_power_sum(m: u64, e: usize) -> BigInt {
        let primes = small::prime_divisors(m);
        let s = s_polynomial(e);
        let mut total = BigRational::zero();
        for mask in 0u32..(1 << primes.len()) {
            let d: u64 = primes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, q)| q).product();
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            let inner = s.eval(&rat((m / d) as i64, 1));
            total += BigRational::from_integer(BigInt::from(sign) * BigInt::from(d).pow(e as u32)) * inner;
        }
        assert!(total.is_integer());
        total.to_integer()
    }

    #[test]
    fn congruence_through_power_sums() {
        // B_{k+1,χ} ≡ Σ_{i<k} C(k+1,i) B_i m^{i-1} Σ' a^{k+1-i} mod π for χ of
        // order p and conductor m whose prime factors are 1 mod p
        for (m, p, k) in [(11u64, 5u64, 1usize), (31, 5, 3), (7 * 13, 3, 1), (11 * 31, 5, 1), (29, 7, 3)] {
            let g = characters_of_field(&FieldSpec::MaxPSubextension { m, p }).unwrap();
            let lvl = level(p, 1);
            for chi in g.nontrivial().filter(|c| c.order() == p && c.conductor() == m) {
                for e in 1..=k + 1 {
                    let brute: BigInt = (1..m).filter(|&a| small::gcd(a, m) == 1).map(|a| BigInt::from(a).pow(e as u32)).sum();
                    assert_eq!(coprime_power_sum(m, e), brute);
                }
                let mut r = BigRational::zero();
                for i in 0..k {
                    let sum = coprime_power_sum(m, k + 1 - i);
                    r += bernoulli_number(i)
                        * BigRational::from_integer(binomial(k as u64 + 1, i as u64) * sum)
                        * BigRational::new(BigInt::from(m).pow(i as u32), BigInt::from(m));
                }
                let b = generalized_bernoulli(chi, k + 1, lvl).unwrap();
                let diff = b.add(&CyclotomicRational::from_rational(lvl, &-r)).unwrap();
                assert!(diff.is_zero() || diff.pi_valuation().unwrap() >= 1, "{chi}");
            }
        }
    }
}
