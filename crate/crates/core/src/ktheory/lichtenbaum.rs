use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith::{factorize_seeded, small, Factorization};
use crate::characters::{characters_of_field, CharacterGroup, FieldSpec};
use crate::error::{ensure_arg, Error, Result};
use crate::lfun::zeta_value_of_group;

/// `w_j(F)`, the largest `w` such that `Gal(Q̄/F)` acts on `μ_w^{⊗j}`
/// trivially.
pub fn w_invariant(spec: &FieldSpec, j: u64) -> Result<BigInt> {
    w_invariant_of_group(&characters_of_field(spec)?, j)
}

pub fn w_invariant_of_group(group: &CharacterGroup, j: u64) -> Result<BigInt> {
    ensure_arg!(j >= 1, "j must be positive");
    ensure_arg!(group.is_totally_real(), "field is not totally real");
    // a q-part can only appear if the image of Gal(Q̄/F) in (Z/q)^*, of
    // order at least (q-1)/[F:Q], has exponent dividing j
    let bound = j.saturating_mul(group.degree() as u64).saturating_add(1);
    let mut w = BigInt::one();
    for q in (2..=bound).filter(|&q| small::is_prime(q)) {
        let nu = local_exponent(group, q, j);
        w *= BigInt::from(q).pow(nu);
    }
    Ok(w)
}

/// Largest `ν` with `a^j ≡ 1 (mod q^ν)` on the image of `Gal(Q̄/F)` in
/// `(Z/q^ν)^*`, which is the common kernel of the characters of `F` whose
/// conductor divides `q^ν`.
fn local_exponent(group: &CharacterGroup, q: u64, j: u64) -> u32 {
    let mut nu = 0;
    loop {
        let Some(modulus) = q.checked_pow(nu + 1) else { return nu };
        let local: Vec<_> = group.with_conductor_dividing(modulus).collect();
        let holds = (1..modulus)
            .filter(|&a| a % q != 0)
            .filter(|&a| local.iter().all(|chi| chi.evaluate(a as i64) == Some(0)))
            .all(|a| small::pow_mod(a, j, modulus) == 1);
        if !holds {
            return nu;
        }
        nu += 1;
    }
}

/// `#K_{2k}(O_F)` for a totally real abelian field, with the ingredients of
/// the order formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KOrderReport {
    pub field: FieldSpec,
    pub k: usize,
    pub degree: usize,
    pub order: BigInt,
    pub w_invariant: BigInt,
    pub zeta_value: BigRational,
    pub factorization: Option<Factorization>,
}

impl KOrderReport {
    /// Attaches the prime factorization of the order.
    pub fn with_factorization(mut self, seed: u64) -> Result<Self> {
        let f = factorize_seeded(&self.order, seed);
        if f.product() != self.order {
            return Err(Error::Invariant(format!("factorization of {} does not multiply back", self.order)));
        }
        self.factorization = Some(f);
        Ok(self)
    }
}

/// `#K_{2k}(O_F) = (-1)^r w_{k+1}(F) ζ_F(-k)` for `k ≡ 1 (mod 4)` and
/// `w_{k+1}(F) ζ_F(-k) / 2^r` for `k ≡ 3 (mod 4)`, `r = [F:Q]`. The result
/// must be a positive integer; anything else is reported as an invariant
/// failure.
pub fn k_order(spec: &FieldSpec, k: usize) -> Result<KOrderReport> {
    ensure_arg!(k % 2 == 1, "k = {k} must be odd and positive");
    let group = characters_of_field(spec)?;
    ensure_arg!(group.is_totally_real(), "{spec} is not totally real");
    let r = group.degree();
    let w = w_invariant_of_group(&group, k as u64 + 1)?;
    let zeta = zeta_value_of_group(&group, k)?;
    let scaled = BigRational::from_integer(w.clone()) * &zeta;
    let value = if k % 4 == 1 {
        if r % 2 == 1 {
            -scaled
        } else {
            scaled
        }
    } else {
        scaled / BigRational::from_integer(BigInt::from(2).pow(r as u32))
    };
    if !value.is_integer() || !value.is_positive() {
        return Err(Error::Invariant(format!(
            "order formula for K_{} of {spec} gave {value}, not a positive integer",
            2 * k
        )));
    }
    Ok(KOrderReport {
        field: spec.clone(),
        k,
        degree: r,
        order: value.to_integer(),
        w_invariant: w,
        zeta_value: zeta,
        factorization: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::valuation;

    #[test]
    fn w_values() {
        let q = FieldSpec::rationals();
        assert_eq!(w_invariant(&q, 2).unwrap(), BigInt::from(24));
        assert_eq!(w_invariant(&q, 4).unwrap(), BigInt::from(240));
        assert_eq!(w_invariant(&q, 1).unwrap(), BigInt::from(2));
        assert_eq!(w_invariant(&FieldSpec::RealCyclotomic { m: 7 }, 2).unwrap(), BigInt::from(168));
        // Q(√5) = Q(ζ_5)^+: w_2 = 120
        assert_eq!(w_invariant(&FieldSpec::RealCyclotomic { m: 5 }, 2).unwrap(), BigInt::from(120));
    }

    /// `w_j(Q) = 2 Π_{(q-1) | j} q^{1 + v_q(j)}` for even `j`: the
    /// denominator of `B_j / j` times 2.
    #[test]
    fn w_of_rationals_matches_closed_form() {
        for j in (2..=30u64).step_by(2) {
            let mut expected = BigInt::from(2).pow(2 + small::valuation(j, 2));
            for q in small::divisors(j).into_iter().map(|d| d + 1).filter(|&q| q > 2 && small::is_prime(q)) {
                expected *= BigInt::from(q).pow(1 + small::valuation(j, q));
            }
            assert_eq!(w_invariant(&FieldSpec::rationals(), j).unwrap(), expected, "j = {j}");
        }
    }

    #[test]
    fn small_orders() {
        assert_eq!(k_order(&FieldSpec::rationals(), 1).unwrap().order, BigInt::from(2));
        let r = k_order(&FieldSpec::RealCyclotomic { m: 7 }, 1).unwrap();
        assert_eq!(r.order, BigInt::from(8));
        assert_eq!(r.degree, 3);
        let r = k_order(&FieldSpec::RealCyclotomic { m: 11 }, 3).unwrap().with_factorization(1).unwrap();
        assert_eq!(r.order, BigInt::from(847811));
        assert_eq!(r.factorization.unwrap().to_string(), "71·11941");
        assert!(k_order(&FieldSpec::RealCyclotomic { m: 7 }, 2).is_err());
    }

    #[test]
    fn orders_are_positive_integers() {
        for m in [5u64, 7, 8, 9, 11, 12, 13, 15, 16, 19, 20, 23] {
            for k in [1usize, 3, 5] {
                let r = k_order(&FieldSpec::RealCyclotomic { m }, k)
                    .unwrap_or_else(|e| panic!("m = {m}, k = {k}: {e}"));
                assert!(r.order.is_positive());
            }
        }
    }

    #[test]
    fn p_part_of_w() {
        for (m, p) in [(7u64, 3u64), (19, 3), (11, 5), (31, 5), (29, 7)] {
            for k in [1usize, 3, 5] {
                if p < k as u64 + 2 {
                    continue;
                }
                let w = w_invariant(&FieldSpec::MaxPSubextension { m, p }, k as u64 + 1).unwrap();
                let expected = u32::from(p == k as u64 + 2);
                assert_eq!(valuation(&w, p), expected, "m = {m}, p = {p}, k = {k}");
            }
        }
    }

    #[test]
    fn periodicity_in_prime_cyclic_fields() {
        for (ell, p) in [(7u64, 3u64), (13, 3), (19, 3), (11, 5), (31, 5)] {
            let spec = FieldSpec::PrimeCyclicSubfield { ell, p };
            for k in (1..=7usize).step_by(2) {
                let a = k_order(&spec, k).unwrap().order;
                let b = k_order(&spec, k + p as usize - 1).unwrap().order;
                let div = |n: &BigInt| valuation(n, p) > 0;
                assert_eq!(div(&a), div(&b), "ell = {ell}, p = {p}, k = {k}");
            }
        }
    }
}
