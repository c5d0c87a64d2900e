use std::fmt::Write as _;

use evenk::arith::{factorize, rat, small, valuation, CyclotomicLevel};
use evenk::characters::{DirichletCharacter, FieldSpec};
use evenk::ktheory::{browkin_density, browkin_divisible, divisibility_verdict, k_order, lower_bound_exponent, Variant, Verdict};
use evenk::lfun::{ceil_rational, char_bernoulli_pi_valuation, product_valuation};
use evenk::powersum::{bernoulli_number, brute_power_sum, powersum_denominator, vsc_denominator, PowerSumData};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::Value;

use crate::output::Record;
use crate::Level;

/// `(m, k, order, factorization)` for `K_{2k}(Z[ζ_m + ζ_m^{-1}])`.
type Row = (u64, usize, &'static str, &'static str);

const QUICK_ORDERS: &[Row] = &[
    (7, 1, "8", "2^3"),
    (7, 3, "79", "79"),
    (7, 5, "59144", "2^3·7393"),
    (7, 7, "142490119", "142490119"),
    (7, 9, "9131618598968", "2^3·1141452324871"),
    (7, 11, "2101941875088322867", "691·10903·278995143079"),
    (11, 1, "160", "2^5·5"),
    (11, 3, "847811", "71·11941"),
    (11, 5, "407495402731360", "2^5·5·521·4888380551"),
    (11, 7, "3543010400763352360091", "13721·2520121·102462575851"),
    (13, 1, "1216", "2^6·19"),
    (13, 3, "316792259", "7·29·103·109·139"),
    (13, 5, "99222088525421989696", "2^6·73·109·307·2341·2953·91807"),
];

const FULL_ORDERS: &[Row] = &[
    (19, 1, "2244096", "2^9·3^2·487"),
    (19, 3, "540700931767472649", "3^2·61·67·883·16647509341"),
    (23, 1, "837613568", "2^11·11·37181"),
    (23, 3, "6952891386341432645005057", "11·1607·120263419·3270569157439"),
    (31, 1, "580922038681600", "2^17·5^2·7·11·2302381"),
];

pub struct Item {
    name: String,
    passed: bool,
    detail: String,
}

pub struct Report {
    level: Level,
    items: Vec<Item>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.items.iter().filter(|i| !i.passed).count()
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            let tag = if item.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag} {}: {}", item.name, item.detail);
        }
        let _ = writeln!(out, "{} passed, {} failed", self.items.len() - self.failed(), self.failed());
        out
    }

    pub fn record(&self) -> Record {
        let items: Vec<Value> = self
            .items
            .iter()
            .map(|i| serde_json::json!({ "name": i.name, "passed": i.passed, "detail": i.detail }))
            .collect();
        let level = match self.level {
            Level::Quick => "quick",
            Level::Full => "full",
        };
        Record::new("selftest")
            .input("level", level)
            .result("items", items)
            .result("passed", self.items.len() - self.failed())
            .result("failed", self.failed())
    }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn run(level: Level, seed: u64) -> Report {
    let mut items = Vec::new();
    let mut push = |name: &str, outcome: Check| {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        items.push(Item { name: name.to_owned(), passed, detail });
    };
    push("K_2 of the integers", anchor());
    push("orders for m = 7, 11, 13", orders(QUICK_ORDERS, seed));
    push("verdicts", verdicts());
    push("exponent bounds", bounds());
    let ell_limit = if level == Level::Full { 500 } else { 200 };
    push("prime-conductor criterion", prime_conductor(ell_limit));
    if level == Level::Full {
        push("orders for m = 19, 23, 31", orders(FULL_ORDERS, seed));
        push("congruences of B_{2,chi}", congruences());
        push("power-sum suites", power_sums());
        push("density of primes 1 mod p^2", density());
    }
    Report { level, items }
}

fn anchor() -> Check {
    let r = k_order(&FieldSpec::rationals(), 1).map_err(|e| e.to_string())?;
    ensure(r.order == BigInt::from(2), || format!("got {}", r.order))?;
    Ok("#K_2(Z) = 2".into())
}

fn orders(rows: &[Row], seed: u64) -> Check {
    let mut bad = Vec::new();
    for &(m, k, order, factors) in rows {
        let r = k_order(&FieldSpec::RealCyclotomic { m }, k)
            .and_then(|r| r.with_factorization(seed))
            .map_err(|e| format!("m = {m}, k = {k}: {e}"))?;
        let shown = r.factorization.as_ref().map(ToString::to_string).unwrap_or_default();
        if r.order.to_string() != order || shown != factors {
            bad.push(format!("m = {m}, k = {k}: got {} = {shown}", r.order));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} orders", rows.len()))
}

fn verdicts() -> Check {
    let cases: [(u64, u64, u64, &str, Option<u64>); 5] = [
        (7, 29 * 43 * 71, 1, "divisible", Some(57)),
        (3, 7, 5, "not-divisible", None),
        (3, 19, 1, "divisible", Some(2)),
        (3, 8, 1, "unknown", None),
        (5, 11, 5, "divisible", Some(1)),
    ];
    for (p, m, k, label, bound) in cases {
        let v = divisibility_verdict(p, m, k, Variant::Plus).map_err(|e| e.to_string())?;
        ensure(v.label() == label, || format!("p = {p}, m = {m}, k = {k}: {}", v.label()))?;
        if let (Some(b), Verdict::GuaranteedDivisible { exponent_lower_bound, .. }) = (bound, &v) {
            ensure(*exponent_lower_bound == BigInt::from(b), || {
                format!("p = {p}, m = {m}, k = {k}: bound {exponent_lower_bound}")
            })?;
        }
    }
    Ok(format!("{} cases", cases.len()))
}

fn bounds() -> Check {
    // (p, m, k, expected bound, field whose order or valuations must reach it)
    let cases = [
        (3u64, 19u64, 1u64, 2u64, FieldSpec::RealCyclotomic { m: 19 }),
        (5, 11, 1, 1, FieldSpec::RealCyclotomic { m: 11 }),
        (5, 11, 3, 0, FieldSpec::RealCyclotomic { m: 11 }),
        (7, 29, 3, 1, FieldSpec::MaxPSubextension { m: 29, p: 7 }),
        (3, 133, 1, 6, FieldSpec::MaxPSubextension { m: 133, p: 3 }),
    ];
    let n = cases.len();
    for (p, m, k, expected, spec) in cases {
        let b = lower_bound_exponent(p, k, m).map_err(|e| e.to_string())?;
        ensure(b == BigInt::from(expected), || format!("p = {p}, m = {m}, k = {k}: bound {b}"))?;
        let attained = match spec {
            FieldSpec::RealCyclotomic { .. } => {
                let order = k_order(&spec, k as usize).map_err(|e| e.to_string())?.order;
                BigInt::from(valuation(&order, p))
            }
            _ => ceil_rational(&product_valuation(&spec, p, k as usize).map_err(|e| e.to_string())?),
        };
        ensure(attained >= b, || format!("p = {p}, m = {m}, k = {k}: only {attained}"))?;
    }
    Ok(format!("{n} bounds reached"))
}

fn prime_conductor(limit: u64) -> Check {
    let mut n = 0;
    for p in [3u64, 5, 7] {
        let k = (p - 2) as usize;
        let level = CyclotomicLevel::new(p, 1).map_err(|e| e.to_string())?;
        for ell in (p + 1..=limit).filter(|&l| l % p == 1 && small::is_prime(l)) {
            let expected = (ell - 1) % (p * p) == 0;
            let criterion = browkin_divisible(p, ell).map_err(|e| e.to_string())?;
            let order = k_order(&FieldSpec::PrimeCyclicSubfield { ell, p }, k).map_err(|e| e.to_string())?.order;
            let chi = DirichletCharacter::all(ell)
                .into_iter()
                .find(|c| c.order() == p)
                .ok_or_else(|| format!("no order-{p} character mod {ell}"))?;
            let v = char_bernoulli_pi_valuation(&chi, k, level).map_err(|e| e.to_string())?;
            let agree = criterion == expected && (valuation(&order, p) >= 1) == expected && (v >= 1) == expected;
            ensure(agree, || format!("p = {p}, ell = {ell}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} primes up to {limit}"))
}

fn congruences() -> Check {
    let mut n = 0;
    for (p, conductors, levels) in [(5u64, &[11u64, 31, 41][..], &[(1u32, 1i64)][..]), (3, &[19, 37], &[(1, 1), (2, 3)])] {
        for &f in conductors {
            for chi in DirichletCharacter::all(f).into_iter().filter(|c| c.order() == p) {
                for &(e, min) in levels {
                    let level = CyclotomicLevel::new(p, e).map_err(|e| e.to_string())?;
                    let v = char_bernoulli_pi_valuation(&chi, 1, level).map_err(|e| e.to_string())?;
                    ensure(v >= min, || format!("{chi} at level {level}: {v}"))?;
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} characters"))
}

fn power_sums() -> Check {
    for n in 1..=100usize {
        let data = PowerSumData::new(n).map_err(|e| e.to_string())?;
        for m in 1..=50u64 {
            let value = data.s.eval(&BigRational::from_integer(BigInt::from(m)));
            ensure(value == BigRational::from_integer(brute_power_sum(m, n as u32)), || {
                format!("S_{n}({m})")
            })?;
        }
        if n % 2 == 0 {
            let denom = bernoulli_number(n).denom().clone();
            let vsc = vsc_denominator(n as u64).map_err(|e| e.to_string())?;
            ensure(denom == vsc, || format!("denominator of B_{n}"))?;
        }
        let d = powersum_denominator(n);
        let np1 = BigInt::from(n + 1);
        ensure(d == data.d && (&d % &np1).is_zero(), || format!("d_{n}"))?;
        let rest = &d / &np1;
        for (q, e) in factorize(&rest).iter() {
            ensure(e == 1 && BigRational::from_integer(q.clone()) <= data.m_bound, || {
                format!("prime {q} of d_{n}/(n+1)")
            })?;
        }
        let f1 = data.f.eval(&BigInt::from(1));
        // with B_1 = -1/2 the identity f_n(1) = d_n B_n starts at n = 2
        if n >= 2 {
            let dn_bn = BigRational::from_integer(d.clone()) * bernoulli_number(n);
            ensure(BigRational::from_integer(f1.clone()) == dn_bn, || format!("f_{n}(1)"))?;
        }
        if n >= 3 && n % 2 == 1 {
            ensure(f1.is_zero(), || format!("x - 1 does not divide f_{n}"))?;
        }
        if n % 2 == 0 && small::is_prime(n as u64 + 1) {
            ensure(!(&f1 % &np1).is_zero(), || format!("{np1} divides f_{n}(1)"))?;
            ensure(!(&d % (&np1 * &np1)).is_zero(), || format!("{np1}^2 divides d_{n}"))?;
        }
    }
    Ok("n <= 100, m <= 50".into())
}

fn density() -> Check {
    let mut parts = Vec::new();
    for p in [3u64, 5] {
        let d = browkin_density(p, 200_000).map_err(|e| e.to_string())?;
        let gap = d.ratio() - rat(1, p as i64);
        ensure(gap.abs() < rat(1, 20), || format!("p = {p}: ratio {}", d.ratio()))?;
        parts.push(format!("p = {p}: {}/{}", d.n_p2, d.n_p));
    }
    Ok(parts.join(", "))
}
