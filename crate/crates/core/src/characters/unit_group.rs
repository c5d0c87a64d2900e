use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::small;

/// A generator of one cyclic factor of `(Z/mZ)^*`, given by its residue
/// modulo `m` and its exact multiplicative order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub residue: u64,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum LocalKind {
    /// `(Z/q^e)^*` cyclic, generated by the smallest primitive root.
    Cyclic { root: u64 },
    /// `(Z/4)^* = <-1>`
    Four,
    /// `(Z/2^e)^* = <-1> x <5>`, `e ≥ 3`
    TwoPower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct LocalFactor {
    prime: u64,
    exp: u32,
    prime_power: u64,
    kind: LocalKind,
    /// index of the first generator belonging to this factor
    first: usize,
}

/// `(Z/mZ)^*` as a product of cyclic groups, split along the prime powers of
/// `m` in ascending order. Odd prime powers use their smallest primitive
/// root; `2^e` with `e ≥ 3` uses `-1` then `5`. Each generator residue is
/// the CRT lift that is `1` modulo the other prime powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroup {
    modulus: u64,
    factors: Vec<LocalFactor>,
    generators: Vec<Generator>,
}

impl UnitGroup {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        let mut factors = Vec::new();
        let mut generators = Vec::new();
        for (q, e) in small::factor(m) {
            let qe = q.pow(e);
            let rest = m / qe;
            let lift = |r: u64| crt_pair(r, qe, 1, rest);
            let first = generators.len();
            let kind = if q == 2 {
                match e {
                    1 => None,
                    2 => {
                        generators.push(Generator { residue: lift(3), order: 2 });
                        Some(LocalKind::Four)
                    }
                    _ => {
                        generators.push(Generator { residue: lift(qe - 1), order: 2 });
                        generators.push(Generator { residue: lift(5), order: qe / 4 });
                        Some(LocalKind::TwoPower)
                    }
                }
            } else {
                let root = small::smallest_primitive_root(q, e);
                generators.push(Generator { residue: lift(root), order: qe / q * (q - 1) });
                Some(LocalKind::Cyclic { root })
            };
            if let Some(kind) = kind {
                factors.push(LocalFactor { prime: q, exp: e, prime_power: qe, kind, first });
            }
        }
        UnitGroup { modulus: m, factors, generators }
    }

    /// Shared, memoized instance for modulus `m`.
    pub fn shared(m: u64) -> Arc<UnitGroup> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<UnitGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(g) = cache.lock().expect("unit group cache poisoned").get(&m) {
            return Arc::clone(g);
        }
        let g = Arc::new(UnitGroup::new(m));
        cache
            .lock()
            .expect("unit group cache poisoned")
            .entry(m)
            .or_insert(g)
            .clone()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// `φ(m)`
    pub fn order(&self) -> u64 {
        self.generators.iter().map(|g| g.order).product()
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.generators.iter().fold(1, |acc, g| small::lcm(acc, g.order))
    }

    /// Coordinates of `a` on the generators, `None` when `gcd(a, m) > 1`.
    pub fn discrete_log(&self, a: i64) -> Option<Vec<u64>> {
        let a = a.rem_euclid(self.modulus as i64) as u64;
        if small::gcd(a, self.modulus) != 1 {
            return None;
        }
        let mut out = vec![0u64; self.generators.len()];
        for f in &self.factors {
            let r = a % f.prime_power;
            match f.kind {
                LocalKind::Cyclic { root } => {
                    let order = self.generators[f.first].order;
                    out[f.first] = small::discrete_log(r, root, order, f.prime_power)?;
                }
                LocalKind::Four => out[f.first] = u64::from(r % 4 == 3),
                LocalKind::TwoPower => {
                    let sign = r % 4 == 3;
                    let b = if sign { f.prime_power - r } else { r };
                    out[f.first] = u64::from(sign);
                    out[f.first + 1] = small::discrete_log(b, 5, f.prime_power / 4, f.prime_power)?;
                }
            }
        }
        Some(out)
    }

    /// Every unit with its coordinates, generated by walking the
    /// generators (no discrete logarithms needed).
    pub fn elements(&self) -> Vec<(u64, Vec<u64>)> {
        let m = self.modulus;
        let mut out: Vec<(u64, Vec<u64>)> = vec![(1 % m.max(2), Vec::new())];
        if m == 1 {
            out[0].0 = 0;
        }
        for g in &self.generators {
            let mut next = Vec::with_capacity(out.len() * g.order as usize);
            for (r, coords) in &out {
                let mut x = *r;
                for k in 0..g.order {
                    let mut c = coords.clone();
                    c.push(k);
                    next.push((x, c));
                    x = small::mul_mod(x, g.residue, m);
                }
            }
            out = next;
        }
        out
    }

    /// For each local factor: `(prime, exponent, generator indices)`.
    pub(crate) fn local_factors(&self) -> impl Iterator<Item = (u64, u32, std::ops::Range<usize>)> + '_ {
        self.factors.iter().map(|f| {
            let n = match f.kind {
                LocalKind::TwoPower => 2,
                _ => 1,
            };
            (f.prime, f.exp, f.first..f.first + n)
        })
    }
}

/// The residue modulo `m1 m2` that is `r1 (mod m1)` and `r2 (mod m2)`, for
/// coprime moduli.
pub(crate) fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    if m2 == 1 {
        return r1 % m1;
    }
    if m1 == 1 {
        return r2 % m2;
    }
    let inv = small::inv_mod(m1 % m2, m2).expect("coprime moduli");
    let diff = (r2 % m2 + m2 - r1 % m2) % m2;
    let t = small::mul_mod(diff, inv, m2);
    r1 % m1 + m1 * t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_examples() {
        let g7 = UnitGroup::new(7);
        assert_eq!(g7.generators(), &[Generator { residue: 3, order: 6 }]);
        assert!(UnitGroup::new(1).generators().is_empty());
        assert!(UnitGroup::new(2).generators().is_empty());
        assert_eq!(
            UnitGroup::new(8).generators(),
            &[Generator { residue: 7, order: 2 }, Generator { residue: 5, order: 2 }]
        );
    }

    #[test]
    fn orders_and_logs() {
        for m in 1..=300u64 {
            let g = UnitGroup::new(m);
            assert_eq!(g.order(), small::totient(m), "m = {m}");
            for gen in g.generators() {
                assert_eq!(small::multiplicative_order(gen.residue, m, g.order()), gen.order);
            }
            let elements = g.elements();
            assert_eq!(elements.len() as u64, g.order());
            for (r, coords) in elements {
                assert_eq!(g.discrete_log(r as i64), Some(coords), "m = {m}, a = {r}");
            }
        }
        assert_eq!(UnitGroup::new(12).discrete_log(6), None);
    }
}
