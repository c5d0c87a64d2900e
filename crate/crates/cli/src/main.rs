//! `evenk`: orders of even K-groups of real cyclotomic rings and related
//! number-theoretic quantities, from the command line.

mod output;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use evenk::arith::factor::DEFAULT_SEED;
use evenk::arith::{factorize_seeded, CyclotomicLevel};
use evenk::characters::{DirichletCharacter, FieldSpec};
use evenk::ktheory::{
    browkin_density, browkin_divisible, divisibility_verdict, k_order, lower_bound_exponent,
    s_profile, Variant, Verdict,
};
use evenk::lfun::{generalized_bernoulli, GeneralizedBernoulli};
use evenk::powersum::{bernoulli_number, PowerSumData};
use evenk::Error;
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::Value;

use output::{factor_pairs, int, rational, Record};

#[derive(Parser, Debug)]
#[command(name = "evenk", version, about = "Exact orders of even K-groups of real cyclotomic rings")]
struct Cli {
    /// Print one canonical JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the JSON record to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Seed for randomized factoring and primality tests.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order of K_{2k} of Z[ζ_m + ζ_m^{-1}] or one of its subfields.
    Korder {
        #[arg(long)]
        m: u64,
        /// Odd k ≥ 1.
        #[arg(long)]
        k: usize,
        /// `max-p:P` for the largest P-power subextension, `prime-cyclic:P`
        /// for the degree-P subfield of Q(ζ_m) (m prime).
        #[arg(long, value_parser = parse_subfield)]
        subfield: Option<Subfield>,
    },
    /// What is known about p | #K_{2k} without computing the order.
    Verdict {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = Field::Plus)]
        field: Field,
    },
    /// Reproduce reference orders and run the consistency suites.
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
    /// Bernoulli number B_n (B_1 = -1/2).
    Bernoulli {
        #[arg(long)]
        n: usize,
    },
    /// Denominator d_n of the power-sum polynomial S_n and the cofactor f_n.
    Dn {
        #[arg(long)]
        n: usize,
    },
    /// Generalized Bernoulli number B_{n,χ}.
    Genbernoulli {
        /// Modulus of the character.
        #[arg(long)]
        modulus: u64,
        /// Position among the characters mod `modulus`, in lexicographic
        /// order of their exponent vectors.
        #[arg(long)]
        index: usize,
        #[arg(long)]
        n: usize,
        /// Also express the value in Q(ζ_{p^N}); the character order must
        /// divide p^N.
        #[arg(long, value_names = ["P", "N"], num_args = 2)]
        level: Option<Vec<u64>>,
    },
    /// Guaranteed exponent of p in #K_{2k}(Z[ζ_m + ζ_m^{-1}]), p ≥ k + 2.
    Bound {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
    },
    /// p | #K_{2(p-2)} of the degree-p subfield of Q(ζ_ℓ)?
    Browkin {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
    },
    /// Share of primes 1 mod p up to x that are also 1 mod p^2.
    Density {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        x: u64,
    },
    /// Prime factorization of a positive integer.
    Factor {
        n: BigInt,
    },
}

#[derive(Clone, Copy, Debug)]
enum Subfield {
    MaxP(u64),
    PrimeCyclic(u64),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Field {
    Plus,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

fn parse_subfield(s: &str) -> Result<Subfield, String> {
    let (kind, p) = s.split_once(':').ok_or("expected max-p:P or prime-cyclic:P")?;
    let p: u64 = p.parse().map_err(|e| format!("bad prime {p:?}: {e}"))?;
    match kind {
        "max-p" => Ok(Subfield::MaxP(p)),
        "prime-cyclic" => Ok(Subfield::PrimeCyclic(p)),
        _ => Err(format!("unknown subfield kind {kind:?}")),
    }
}

/// A finished command: its record, whether it counts as success, and text
/// output when the record's own rendering does not fit.
struct Outcome {
    record: Record,
    ok: bool,
    text: Option<String>,
}

impl From<Record> for Outcome {
    fn from(record: Record) -> Self {
        Outcome { record, ok: true, text: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_usage() { 2 } else { 1 });
        }
    };
    let json = outcome.record.to_json();
    if cli.json {
        println!("{json}");
    } else {
        print!("{}", outcome.text.unwrap_or_else(|| outcome.record.to_text()));
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    Ok(match &cli.command {
        Command::Korder { m, k, subfield } => korder(*m, *k, *subfield, cli.seed)?.into(),
        Command::Verdict { p, m, k, field } => verdict(*p, *m, *k, *field)?.into(),
        Command::Selftest { level } => {
            let report = selftest::run(*level, cli.seed);
            Outcome { ok: report.failed() == 0, record: report.record(), text: Some(report.text()) }
        }
        Command::Bernoulli { n } => Record::new("bernoulli")
            .input("n", *n)
            .result("value", rational(&bernoulli_number(*n)))
            .into(),
        Command::Dn { n } => dn(*n)?.into(),
        Command::Genbernoulli { modulus, index, n, level } => {
            genbernoulli(*modulus, *index, *n, level.as_deref())?.into()
        }
        Command::Bound { p, k, m } => {
            let profile = s_profile(*m, *p)?;
            let bound = lower_bound_exponent(*p, *k, *m)?;
            Record::new("bound")
                .input("p", *p)
                .input("k", *k)
                .input("m", *m)
                .result("exponent_lower_bound", int(&bound))
                .result("theta", profile.theta())
                .result("s", profile_map(&profile.s))
                .provenance(["lower-bound"])
                .into()
        }
        Command::Browkin { p, ell } => Record::new("browkin")
            .input("p", *p)
            .input("ell", *ell)
            .result("divisible", browkin_divisible(*p, *ell)?)
            .provenance(["prime-conductor"])
            .into(),
        Command::Density { p, x } => {
            let d = browkin_density(*p, *x)?;
            Record::new("density")
                .input("p", *p)
                .input("x", *x)
                .result("primes_1_mod_p", d.n_p)
                .result("primes_1_mod_p2", d.n_p2)
                .result("ratio", rational(&d.ratio()))
                .into()
        }
        Command::Factor { n } => {
            if !n.is_positive() {
                return Err(Error::InvalidArgument(format!("{n} is not positive")));
            }
            let f = factorize_seeded(n, cli.seed);
            Record::new("factor")
                .input("n", int(n))
                .result("factorization", f.to_string())
                .result("factors", factor_pairs(&f))
                .into()
        }
    })
}

fn field_spec(m: u64, subfield: Option<Subfield>) -> FieldSpec {
    match subfield {
        None => FieldSpec::RealCyclotomic { m },
        Some(Subfield::MaxP(p)) => FieldSpec::MaxPSubextension { m, p },
        Some(Subfield::PrimeCyclic(p)) => FieldSpec::PrimeCyclicSubfield { ell: m, p },
    }
}

fn korder(m: u64, k: usize, subfield: Option<Subfield>, seed: u64) -> Result<Record, Error> {
    let spec = field_spec(m, subfield);
    let report = k_order(&spec, k)?.with_factorization(seed)?;
    let f = report.factorization.as_ref().expect("just attached");
    let subfield = match subfield {
        None => Value::Null,
        Some(Subfield::MaxP(p)) => format!("max-p:{p}").into(),
        Some(Subfield::PrimeCyclic(p)) => format!("prime-cyclic:{p}").into(),
    };
    Ok(Record::new("korder")
        .input("m", m)
        .input("k", k)
        .input("subfield", subfield)
        .result("field", spec.to_string())
        .result("degree", report.degree)
        .result("order", int(&report.order))
        .result("factorization", f.to_string())
        .result("factors", factor_pairs(f))
        .result("w", int(&report.w_invariant))
        .result("zeta", rational(&report.zeta_value)))
}

fn verdict(p: u64, m: u64, k: u64, field: Field) -> Result<Record, Error> {
    let variant = match field {
        Field::Plus => Variant::Plus,
        Field::Full => Variant::Full,
    };
    let v = divisibility_verdict(p, m, k, variant)?;
    let bound = match &v {
        Verdict::GuaranteedDivisible { exponent_lower_bound, .. } => int(exponent_lower_bound),
        Verdict::GuaranteedNotDivisible { .. } => Value::from("0"),
        Verdict::Unknown => Value::Null,
    };
    Ok(Record::new("verdict")
        .input("p", p)
        .input("m", m)
        .input("k", k)
        .input("field", format!("{field:?}").to_lowercase())
        .result("verdict", v.label())
        .result("exponent_lower_bound", bound)
        .provenance(v.rules().iter().map(|r| r.tag())))
}

fn dn(n: usize) -> Result<Record, Error> {
    let data = PowerSumData::new(n)?;
    let f1 = data.f.eval(&BigInt::from(1));
    Ok(Record::new("dn")
        .input("n", n)
        .result("d", int(&data.d))
        .result("m_bound", rational(&data.m_bound))
        .result("f_at_1", int(&f1))
        .result("f", data.f.coeffs().iter().map(int).collect::<Vec<_>>()))
}

fn genbernoulli(modulus: u64, index: usize, n: usize, level: Option<&[u64]>) -> Result<Record, Error> {
    if modulus == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let chars = DirichletCharacter::all(modulus);
    let chi = chars.get(index).ok_or_else(|| {
        Error::InvalidArgument(format!("index {index} out of range: {} characters mod {modulus}", chars.len()))
    })?;
    let prim = chi.primitive();
    let b = GeneralizedBernoulli::new(&prim, n)?;
    let mut record = Record::new("genbernoulli")
        .input("modulus", modulus)
        .input("index", index)
        .input("n", n)
        .input("level", level.map(|l| Value::from(l.to_vec())).unwrap_or(Value::Null))
        .result("character", chi.to_string())
        .result("conductor", prim.conductor())
        .result("order", prim.order())
        .result("denominator", int(b.denominator()))
        .result("sums", b.sums().iter().map(int).collect::<Vec<_>>())
        .result("orbit_norm", rational(&b.orbit_norm()));
    if let Some([p, e]) = level {
        let e = u32::try_from(*e).map_err(|_| Error::InvalidArgument(format!("level exponent {e} too large")))?;
        let level = CyclotomicLevel::new(*p, e)?;
        let value = generalized_bernoulli(&prim, n, level)?;
        let v = value.pi_valuation().map(Value::from).unwrap_or(Value::Null);
        record = record
            .result("value", value.to_string())
            .result("pi_valuation", v);
    }
    Ok(record)
}

fn profile_map(s: &std::collections::BTreeMap<u32, u32>) -> Value {
    s.iter()
        .map(|(j, n)| (j.to_string(), Value::from(*n)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}
