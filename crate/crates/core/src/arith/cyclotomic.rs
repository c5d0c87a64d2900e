//! Arithmetic in the rings `Z[ζ]` for prime-power roots of unity, plus
//! norms in arbitrary cyclotomic orders.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ-1}` and are always
//! reduced modulo the cyclotomic polynomial, so equality is coordinate
//! equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{resultant, IntPolynomial};
use super::small;
use super::valuation;
use crate::error::{ensure_arg, Error, Result};

/// The ring `Z[ζ_{p^N}]` for an odd prime `p` and `N ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicLevel {
    p: u64,
    n: u32,
}

impl CyclotomicLevel {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        ensure_arg!(p % 2 == 1 && small::is_prime(p), "p = {p} is not an odd prime");
        ensure_arg!(n >= 1, "level exponent must be positive");
        ensure_arg!(
            p.checked_pow(n).is_some_and(|q| q <= 1 << 24),
            "level {p}^{n} is too large"
        );
        Ok(CyclotomicLevel { p, n })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    /// `p^N`, the order of the root of unity.
    pub fn order(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// `φ(p^N)`, the rank of the ring over `Z`.
    pub fn degree(&self) -> usize {
        ((self.p - 1) * self.p.pow(self.n - 1)) as usize
    }

    pub fn polynomial(&self) -> IntPolynomial {
        let step = self.p.pow(self.n - 1) as usize;
        let mut coeffs = vec![BigInt::zero(); step * (self.p as usize - 1) + 1];
        for j in 0..self.p as usize {
            coeffs[j * step] = BigInt::one();
        }
        IntPolynomial::new(coeffs)
    }
}

impl fmt::Display for CyclotomicLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[zeta_{}^{}]", self.p, self.n)
    }
}

/// `Φ_{p^N}(x) = Σ_{j<p} x^{j p^{N-1}}`.
pub fn cyclotomic_polynomial(p: u64, n: u32) -> Result<IntPolynomial> {
    Ok(CyclotomicLevel::new(p, n)?.polynomial())
}

/// `Φ_n(x)` for any `n ≥ 1`, by dividing `x^n - 1` by `Φ_d` for the proper
/// divisors `d` of `n`.
pub fn cyclotomic_polynomial_of_order(n: u64) -> IntPolynomial {
    assert!(n >= 1);
    let mut num = IntPolynomial::monomial(BigInt::one(), n as usize);
    num = &num - &IntPolynomial::constant(BigInt::one());
    for d in small::divisors(n) {
        if d < n {
            let phi_d = cyclotomic_polynomial_of_order(d);
            num = num.div_rem_monic(&phi_d).0;
        }
    }
    num
}

/// Absolute norm from `Q(ζ_n)` to `Q` of `g(ζ_n)`, where `g` is any integer
/// polynomial (not necessarily reduced). Computed as `Res(Φ_n, g)`.
pub fn norm_in_order(n: u64, g: &IntPolynomial) -> BigInt {
    let phi = cyclotomic_polynomial_of_order(n);
    let reduced = g.rem_monic(&phi);
    if reduced.is_zero() {
        return BigInt::zero();
    }
    resultant(&phi, &reduced)
}

/// Element of `Z[ζ_{p^N}]` in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    level: CyclotomicLevel,
    coeffs: Vec<BigInt>,
}

impl CyclotomicElement {
    /// Builds the element `Σ c_i ζ^i`; `coeffs` may have any length and is
    /// reduced modulo `Φ_{p^N}`.
    pub fn from_coeffs(level: CyclotomicLevel, coeffs: Vec<BigInt>) -> Self {
        let poly = IntPolynomial::new(coeffs);
        Self::from_poly(level, &poly)
    }

    /// `Σ c_t ζ^t` with exponents taken modulo `p^N`.
    pub fn from_exponent_sums(level: CyclotomicLevel, sums: &[BigInt]) -> Self {
        let order = level.order() as usize;
        let mut wrapped = vec![BigInt::zero(); order];
        for (t, c) in sums.iter().enumerate() {
            wrapped[t % order] += c;
        }
        Self::from_coeffs(level, wrapped)
    }

    fn from_poly(level: CyclotomicLevel, poly: &IntPolynomial) -> Self {
        let reduced = poly.rem_monic(&level.polynomial());
        let mut coeffs = reduced.into_coeffs();
        coeffs.resize(level.degree(), BigInt::zero());
        CyclotomicElement { level, coeffs }
    }

    pub fn zero(level: CyclotomicLevel) -> Self {
        CyclotomicElement { level, coeffs: vec![BigInt::zero(); level.degree()] }
    }

    pub fn constant(level: CyclotomicLevel, c: impl Into<BigInt>) -> Self {
        let mut e = Self::zero(level);
        e.coeffs[0] = c.into();
        e
    }

    /// `ζ^t`
    pub fn root_power(level: CyclotomicLevel, t: u64) -> Self {
        let order = level.order();
        let mut sums = vec![BigInt::zero(); order as usize];
        sums[(t % order) as usize] = BigInt::one();
        Self::from_exponent_sums(level, &sums)
    }

    pub fn level(&self) -> CyclotomicLevel {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn as_poly(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.clone())
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level.to_string(),
                right: other.level.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicElement { level: self.level, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CyclotomicElement { level: self.level, coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(Self::from_poly(self.level, &(&self.as_poly() * &other.as_poly())))
    }

    pub fn neg(&self) -> Self {
        CyclotomicElement { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CyclotomicElement { level: self.level, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Gcd of the coordinates (zero for the zero element).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn div_exact_scalar(&self, c: &BigInt) -> Self {
        CyclotomicElement { level: self.level, coeffs: self.coeffs.iter().map(|a| a / c).collect() }
    }

    /// Image under `ζ_{p^b} ↦ ζ_{p^N}^{p^{N-b}}`.
    pub fn embed(&self, n: u32) -> Result<Self> {
        ensure_arg!(
            n >= self.level.n,
            "cannot embed level {} into lower exponent {n}",
            self.level
        );
        let target = CyclotomicLevel::new(self.level.p, n)?;
        let stride = self.level.p.pow(n - self.level.n) as usize;
        let mut coeffs = vec![BigInt::zero(); target.degree()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * stride] = c.clone();
        }
        Ok(CyclotomicElement { level: target, coeffs })
    }

    /// Image under the automorphism `ζ ↦ ζ^a`.
    pub fn galois_apply(&self, a: i64) -> Result<Self> {
        let p = self.level.p;
        let order = self.level.order() as i64;
        ensure_arg!(a.rem_euclid(p as i64) != 0, "{a} is not coprime to {p}");
        let a = a.rem_euclid(order) as usize;
        let mut sums = vec![BigInt::zero(); order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            sums[(i * a) % order as usize] += c;
        }
        Ok(Self::from_exponent_sums(self.level, &sums))
    }

    /// Absolute norm to `Q`, as `Res(Φ_{p^N}, α)`.
    pub fn norm(&self) -> BigInt {
        let g = self.as_poly();
        if g.is_zero() {
            return BigInt::zero();
        }
        resultant(&self.level.polynomial(), &g)
    }

    /// Valuation at `π = 1 - ζ_{p^N}`, `None` for zero. The prime above `p`
    /// is totally ramified with residue degree one, so `v_π(α) = v_p(N(α))`.
    pub fn pi_valuation(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let content = self.content();
        let vc = valuation(&content, self.level.p) as i64;
        let unit_part = if vc > 0 {
            self.div_exact_scalar(&BigInt::from(self.level.p).pow(vc as u32))
        } else {
            self.clone()
        };
        let vn = valuation(&unit_part.norm(), self.level.p) as i64;
        Some(vc * self.level.degree() as i64 + vn)
    }

    /// The rational integer this element equals, if it lies in `Z`.
    pub fn rational_part(&self) -> Result<BigInt> {
        if let Some(index) = self.coeffs.iter().skip(1).position(|c| !c.is_zero()) {
            return Err(Error::NotRational { index: index + 1 });
        }
        Ok(self.coeffs[0].clone())
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{a}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An element of `Q(ζ_{p^N})` written as `numerator / denominator` with a
/// positive integer denominator coprime to the content of the numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicRational {
    numerator: CyclotomicElement,
    denominator: BigInt,
}

impl CyclotomicRational {
    pub fn new(numerator: CyclotomicElement, denominator: BigInt) -> Result<Self> {
        ensure_arg!(!denominator.is_zero(), "zero denominator");
        let (mut numerator, mut denominator) = (numerator, denominator);
        if denominator.is_negative() {
            numerator = numerator.neg();
            denominator = -denominator;
        }
        let g = numerator.content().gcd(&denominator);
        if !g.is_one() && !g.is_zero() {
            numerator = numerator.div_exact_scalar(&g);
            denominator /= &g;
        }
        if numerator.is_zero() {
            denominator = BigInt::one();
        }
        Ok(CyclotomicRational { numerator, denominator })
    }

    pub fn from_integral(numerator: CyclotomicElement) -> Self {
        CyclotomicRational { numerator, denominator: BigInt::one() }
    }

    pub fn from_rational(level: CyclotomicLevel, q: &BigRational) -> Self {
        CyclotomicRational {
            numerator: CyclotomicElement::constant(level, q.numer().clone()),
            denominator: q.denom().clone(),
        }
    }

    pub fn numerator(&self) -> &CyclotomicElement {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn level(&self) -> CyclotomicLevel {
        self.numerator.level
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let a = self.numerator.scale(&other.denominator);
        let b = other.numerator.scale(&self.denominator);
        Self::new(a.add(&b)?, &self.denominator * &other.denominator)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.numerator.mul(&other.numerator)?,
            &self.denominator * &other.denominator,
        )
    }

    pub fn scale(&self, q: &BigRational) -> Result<Self> {
        Self::new(self.numerator.scale(q.numer()), &self.denominator * q.denom())
    }

    pub fn embed(&self, n: u32) -> Result<Self> {
        Ok(CyclotomicRational {
            numerator: self.numerator.embed(n)?,
            denominator: self.denominator.clone(),
        })
    }

    pub fn galois_apply(&self, a: i64) -> Result<Self> {
        Ok(CyclotomicRational {
            numerator: self.numerator.galois_apply(a)?,
            denominator: self.denominator.clone(),
        })
    }

    /// `N(numerator) / denominator^φ`
    pub fn norm(&self) -> BigRational {
        let d = self.denominator.pow(self.level().degree() as u32);
        BigRational::new(self.numerator.norm(), d)
    }

    /// `v_π(numerator) - φ(p^N) v_p(denominator)`, `None` for zero.
    pub fn pi_valuation(&self) -> Option<i64> {
        let level = self.level();
        let vn = self.numerator.pi_valuation()?;
        let vd = valuation(&self.denominator, level.p) as i64;
        Some(vn - level.degree() as i64 * vd)
    }

    /// The rational number this element equals; an error if any coordinate
    /// beyond the constant term is nonzero.
    pub fn rational_part(&self) -> Result<BigRational> {
        let c = self.numerator.rational_part()?;
        Ok(BigRational::new(c, self.denominator.clone()))
    }
}

impl fmt::Display for CyclotomicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / {}", self.numerator, self.denominator)
        }
    }
}
