use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use super::character::DirichletCharacter;
use crate::arith::small;
use crate::error::{ensure_arg, invalid, Error, Result};

/// An abelian number field, described through its group of primitive
/// Dirichlet characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    /// `Q(ζ_m + ζ_m^{-1})`; `m = 1` gives `Q`.
    RealCyclotomic { m: u64 },
    /// The maximal p-extension of `Q` inside `Q(ζ_m)^+`.
    MaxPSubextension { m: u64, p: u64 },
    /// The cyclic degree-`p` subfield of `Q(ζ_ℓ)` for a prime `ℓ ≡ 1 (mod p)`.
    PrimeCyclicSubfield { ell: u64, p: u64 },
    /// Any group of primitive characters given explicitly.
    Explicit(Vec<DirichletCharacter>),
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::RealCyclotomic { m: 1 }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::RealCyclotomic { m } => write!(f, "Q(zeta_{m})^+"),
            FieldSpec::MaxPSubextension { m, p } => write!(f, "max {p}-subextension of Q(zeta_{m})^+"),
            FieldSpec::PrimeCyclicSubfield { ell, p } => write!(f, "degree-{p} subfield of Q(zeta_{ell})"),
            FieldSpec::Explicit(chars) => write!(f, "field with {} explicit characters", chars.len()),
        }
    }
}

/// The character group `X_F` of a field: primitive characters, sorted with
/// the trivial character first (see [`DirichletCharacter`]'s ordering).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterGroup {
    characters: Vec<DirichletCharacter>,
}

impl CharacterGroup {
    /// Validates that `chars` (after primitivization) is a finite group and
    /// builds it.
    pub fn from_characters(chars: impl IntoIterator<Item = DirichletCharacter>) -> Result<Self> {
        let set: BTreeSet<DirichletCharacter> = chars.into_iter().map(|c| c.primitive()).collect();
        let group = CharacterGroup { characters: set.into_iter().collect() };
        group.check_closure()?;
        Ok(group)
    }

    pub fn characters(&self) -> &[DirichletCharacter] {
        &self.characters
    }

    pub fn iter(&self) -> impl Iterator<Item = &DirichletCharacter> {
        self.characters.iter()
    }

    /// Degree of the field, `#X_F`.
    pub fn degree(&self) -> usize {
        self.characters.len()
    }

    /// Conductor of the field: lcm of the character conductors.
    pub fn conductor(&self) -> u64 {
        self.characters.iter().fold(1, |acc, c| small::lcm(acc, c.conductor()))
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.characters.iter().fold(1, |acc, c| small::lcm(acc, c.order()))
    }

    pub fn is_totally_real(&self) -> bool {
        self.characters.iter().all(DirichletCharacter::is_even)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.degree() as u64;
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &DirichletCharacter> {
        self.characters.iter().filter(|c| !c.is_trivial())
    }

    /// `{χ : ord χ = p^j}`; only defined for p-groups.
    pub fn stratum(&self, p: u64, j: u32) -> Result<Vec<DirichletCharacter>> {
        ensure_arg!(self.is_p_group(p), "character group of order {} is not a {p}-group", self.degree());
        let target = p.checked_pow(j);
        Ok(self
            .characters
            .iter()
            .filter(|c| Some(c.order()) == target)
            .cloned()
            .collect())
    }

    /// Partition into Galois orbits `{χ^a : gcd(a, ord χ) = 1}`; each orbit
    /// is listed by index, starting with its least member.
    pub fn galois_orbits(&self) -> Vec<Vec<usize>> {
        let index: HashMap<&DirichletCharacter, usize> =
            self.characters.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut seen = vec![false; self.characters.len()];
        let mut orbits = Vec::new();
        for (i, chi) in self.characters.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let ord = chi.order();
            let mut orbit: Vec<usize> = (1..=ord.max(1))
                .filter(|&a| small::gcd(a, ord) == 1)
                .map(|a| index[&chi.pow(a as i64)])
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &j in &orbit {
                seen[j] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Characters whose conductor divides `n`.
    pub fn with_conductor_dividing(&self, n: u64) -> impl Iterator<Item = &DirichletCharacter> {
        self.characters.iter().filter(move |c| n.is_multiple_of(c.conductor()))
    }

    fn check_closure(&self) -> Result<()> {
        let modulus = self.conductor();
        let lifted: Vec<Vec<u64>> = self
            .characters
            .iter()
            .map(|c| c.lift(modulus).map(|l| l.exponents().to_vec()))
            .collect::<Result<_>>()?;
        let orders: Vec<u64> = super::UnitGroup::shared(modulus)
            .generators()
            .iter()
            .map(|g| g.order)
            .collect();
        let set: HashSet<&Vec<u64>> = lifted.iter().collect();
        let not_group = || Error::InvalidArgument("characters do not form a group".into());
        if !set.contains(&vec![0; orders.len()]) {
            return Err(not_group());
        }
        for a in &lifted {
            let inv: Vec<u64> = a.iter().zip(&orders).map(|(x, o)| (o - x) % o).collect();
            if !set.contains(&inv) {
                return Err(not_group());
            }
            for b in &lifted {
                let s: Vec<u64> = a.iter().zip(b).zip(&orders).map(|((x, y), o)| (x + y) % o).collect();
                if !set.contains(&s) {
                    return Err(not_group());
                }
            }
        }
        Ok(())
    }
}

/// The character group of the field described by `spec`.
pub fn characters_of_field(spec: &FieldSpec) -> Result<CharacterGroup> {
    match spec {
        FieldSpec::RealCyclotomic { m } => {
            ensure_arg!(*m >= 1, "modulus must be positive");
            CharacterGroup::from_characters(
                DirichletCharacter::all(*m).into_iter().filter(DirichletCharacter::is_even),
            )
        }
        FieldSpec::MaxPSubextension { m, p } => {
            ensure_arg!(*m >= 1, "modulus must be positive");
            ensure_arg!(*p % 2 == 1 && small::is_prime(*p), "p = {p} is not an odd prime");
            CharacterGroup::from_characters(
                DirichletCharacter::all(*m)
                    .into_iter()
                    .filter(|c| c.is_even() && is_power_of(c.order(), *p)),
            )
        }
        FieldSpec::PrimeCyclicSubfield { ell, p } => {
            ensure_arg!(*p % 2 == 1 && small::is_prime(*p), "p = {p} is not an odd prime");
            ensure_arg!(small::is_prime(*ell), "ell = {ell} is not prime");
            if *ell % *p != 1 {
                return Err(invalid!("ell = {ell} is not 1 mod {p}"));
            }
            CharacterGroup::from_characters(
                DirichletCharacter::all(*ell)
                    .into_iter()
                    .filter(|c| *p % c.order() == 0),
            )
        }
        FieldSpec::Explicit(chars) => CharacterGroup::from_characters(chars.iter().cloned()),
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}
