use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::unit_group::UnitGroup;
use crate::arith::small;
use crate::error::{ensure_arg, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// A Dirichlet character modulo `m`, stored as exponents on the generators
/// of [`UnitGroup`]: `χ(g_i) = exp(2πi e_i / ord(g_i))`.
///
/// Values are reported abstractly as exponents `t` with
/// `χ(a) = ζ_{ord χ}^t`, so the caller picks the cyclotomic ring.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
    order: u64,
    conductor: u64,
    parity: Parity,
}

impl DirichletCharacter {
    pub fn new(group: Arc<UnitGroup>, exponents: Vec<u64>) -> Result<Self> {
        ensure_arg!(
            exponents.len() == group.generators().len(),
            "modulus {} needs {} exponents, got {}",
            group.modulus(),
            group.generators().len(),
            exponents.len()
        );
        let exponents: Vec<u64> = exponents
            .iter()
            .zip(group.generators())
            .map(|(e, g)| e % g.order)
            .collect();
        let order = exponents
            .iter()
            .zip(group.generators())
            .fold(1, |acc, (&e, g)| small::lcm(acc, g.order / small::gcd(e, g.order)));
        let conductor = conductor_of(&group, &exponents);
        let mut chi = DirichletCharacter { group, exponents, order, conductor, parity: Parity::Even };
        let m = chi.modulus() as i64;
        chi.parity = match chi.evaluate(m - 1) {
            Some(0) | None => Parity::Even,
            Some(_) => Parity::Odd,
        };
        Ok(chi)
    }

    pub fn trivial(m: u64) -> Self {
        let group = UnitGroup::shared(m);
        let n = group.generators().len();
        Self::new(group, vec![0; n]).expect("exponent count matches")
    }

    /// Every character modulo `m`, in lexicographic order of exponents.
    pub fn all(m: u64) -> Vec<DirichletCharacter> {
        let group = UnitGroup::shared(m);
        let mut vectors: Vec<Vec<u64>> = vec![Vec::new()];
        for g in group.generators() {
            vectors = vectors
                .into_iter()
                .flat_map(|v| {
                    (0..g.order).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        vectors
            .into_iter()
            .map(|v| Self::new(Arc::clone(&group), v).expect("exponent count matches"))
            .collect()
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    /// Weight of generator `i` in the exponent of `ζ_{ord χ}`.
    fn weight(&self, i: usize) -> u64 {
        let o = self.group.generators()[i].order;
        ((self.exponents[i] as u128 * self.order as u128 / o as u128) % self.order as u128) as u64
    }

    fn value_from_coords(&self, coords: &[u64]) -> u64 {
        coords.iter().enumerate().fold(0u64, |acc, (i, &x)| {
            (acc + small::mul_mod(self.weight(i), x, self.order)) % self.order
        })
    }

    /// `t` with `χ(a) = ζ_{ord χ}^t`, or `None` when `χ(a) = 0`.
    pub fn evaluate(&self, a: i64) -> Option<u64> {
        let coords = self.group.discrete_log(a)?;
        Some(self.value_from_coords(&coords))
    }

    /// Values on `0..m`, indexed by residue.
    pub fn value_table(&self) -> Vec<Option<u64>> {
        let m = self.modulus() as usize;
        let mut table = vec![None; m.max(1)];
        for (r, coords) in self.group.elements() {
            table[r as usize] = Some(self.value_from_coords(&coords));
        }
        table
    }

    /// `χ^a`, for any integer `a`.
    pub fn pow(&self, a: i64) -> Self {
        let exps = self
            .exponents
            .iter()
            .zip(self.group.generators())
            .map(|(&e, g)| {
                let a = a.rem_euclid(g.order as i64) as u64;
                small::mul_mod(e, a, g.order)
            })
            .collect();
        Self::new(Arc::clone(&self.group), exps).expect("exponent count matches")
    }

    /// The character modulo a multiple `n` of the modulus that agrees with
    /// `χ` on residues coprime to `n`.
    pub fn lift(&self, n: u64) -> Result<Self> {
        ensure_arg!(
            n.is_multiple_of(self.modulus()),
            "{n} is not a multiple of the modulus {}",
            self.modulus()
        );
        let target = UnitGroup::shared(n);
        let exps = target
            .generators()
            .iter()
            .map(|g| {
                let t = self.evaluate(g.residue as i64).expect("generator is a unit");
                (t as u128 * g.order as u128 / self.order as u128) as u64
            })
            .collect();
        Self::new(target, exps)
    }

    /// The primitive character modulo the conductor inducing `χ`.
    pub fn primitive(&self) -> Self {
        if self.is_primitive() {
            return self.clone();
        }
        let f = self.conductor;
        let m = self.modulus();
        let target = UnitGroup::shared(f);
        let exps = target
            .generators()
            .iter()
            .map(|g| {
                let mut x = g.residue;
                while small::gcd(x, m) != 1 {
                    x += f;
                }
                let t = self.evaluate(x as i64).expect("lift is a unit");
                (t as u128 * g.order as u128 / self.order as u128) as u64
            })
            .collect();
        Self::new(target, exps).expect("exponent count matches")
    }

    /// Product of two characters, taken modulo the lcm of the moduli and
    /// reduced to its primitive form.
    pub fn mul(&self, other: &Self) -> Self {
        let n = small::lcm(self.modulus(), other.modulus());
        let a = self.lift(n).expect("lcm is a multiple");
        let b = other.lift(n).expect("lcm is a multiple");
        let exps = a
            .exponents
            .iter()
            .zip(&b.exponents)
            .zip(a.group.generators())
            .map(|((x, y), g)| (x + y) % g.order)
            .collect();
        Self::new(a.group, exps).expect("exponent count matches").primitive()
    }

    fn sort_key(&self) -> (u64, u64, u64, &[u64]) {
        (self.order, self.conductor, self.modulus(), &self.exponents)
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl Hash for DirichletCharacter {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus().hash(state);
        self.exponents.hash(state);
    }
}

impl PartialOrd for DirichletCharacter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by `(order, conductor, modulus, exponents)`, so the trivial
/// character comes first and labels are reproducible.
impl Ord for DirichletCharacter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[mod {}; e=(", self.modulus())?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "); order {}, conductor {}]", self.order, self.conductor)
    }
}

/// Conductor from the local components: an odd prime power component of
/// order `c > 1` has conductor `q^{1 + v_q(c)}`; at 2, the sign part
/// contributes 4 and a component of order `2^j` on `5` contributes `2^{j+2}`.
fn conductor_of(group: &UnitGroup, exps: &[u64]) -> u64 {
    let gens = group.generators();
    let local_order = |i: usize| gens[i].order / small::gcd(exps[i], gens[i].order);
    group.local_factors().fold(1u64, |acc, (q, _, idx)| {
        let part = if q == 2 {
            let sign = local_order(idx.start) > 1;
            if idx.len() == 2 {
                let c5 = local_order(idx.start + 1);
                if c5 > 1 {
                    1 << (2 + small::valuation(c5, 2))
                } else if sign {
                    4
                } else {
                    1
                }
            } else if sign {
                4
            } else {
                1
            }
        } else {
            let c = local_order(idx.start);
            if c == 1 {
                1
            } else {
                q.pow(1 + small::valuation(c, q))
            }
        };
        acc * part
    })
}
