use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use std::path::PathBuf;
use std::str::FromStr;

use d4quad_core::bigmath::PrecisionPolicy;
use d4quad_core::d4core::{extension_family, ExtSign};
use d4quad_core::linforms::{compute_p_ranges, BoundFamily};
use d4quad_core::pell::{gcd_pattern, pair_element};
use d4quad_core::prover::{
    brute_quadruple_search, family_classes, family_triple, prove_all, Family, RunConfig, Verdict,
};
use d4quad_core::seqsys::{classify_fundamental, SystemCase};

#[derive(Parser)]
#[command(name = "d4quad")]
#[command(about = "Verification pipeline for extensions of D(4)-pairs {a, ka}, k in {7,8,10,11,12,13}")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solution (a_p, r_p) of r^2 - k a^2 = 4 and its gcd pattern.
    Pell {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u32,
    },
    /// Third elements c_nu extending the pair {a, b}.
    Extend {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Family sign: "+" or "-".
        #[arg(long)]
        family: String,
        #[arg(long)]
        nu: u32,
    },
    /// Admissible fundamental-solution classes for a triple.
    Classify {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
    },
    /// Published index ranges for one (k, bound family).
    Bounds {
        #[arg(long)]
        k: u32,
        /// One of c1-, c1+, c2t1, c2t2, c3even, c3odd.
        #[arg(long)]
        family: String,
    },
    /// One reduction trace for a concrete case.
    Reduce {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u32,
        /// One of c1-, c1+, c2-, c2+, c3-, c3+.
        #[arg(long)]
        family: String,
        /// Class identifier as printed by `classify` (e.g. t1zpym).
        #[arg(long)]
        class: String,
    },
    /// Full verification sweep emitting per-case certificates.
    Prove {
        /// Comma-separated k values (default: all six).
        #[arg(long)]
        k: Option<String>,
        /// all | c1- | c1+ | c2 | c3 (c2/c3 cover both signs).
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Base working precision in decimal digits.
        #[arg(long)]
        precision: Option<u32>,
        /// Worker threads (0 = automatic).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// All d <= dmax extending a triple to a quadruple.
    Search {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        dmax: String,
    },
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).with_context(|| format!("not an integer: {s}"))
}

fn parse_sign(s: &str) -> Result<ExtSign> {
    match s {
        "+" | "plus" => Ok(ExtSign::Plus),
        "-" | "minus" => Ok(ExtSign::Minus),
        _ => bail!("family sign must be + or -"),
    }
}

fn env_precision() -> Option<u32> {
    std::env::var("D4QUAD_PRECISION").ok().and_then(|v| v.parse().ok())
}

fn env_jobs() -> Option<usize> {
    std::env::var("D4QUAD_JOBS").ok().and_then(|v| v.parse().ok())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Pell { k, p } => {
            let (a, r) = pair_element(k, p)?;
            println!("a_{p} = {a}");
            println!("r_{p} = {r}");
            if let Ok(g) = gcd_pattern(k, p) {
                println!("gcd(a_{p}, r_{p}) = {g}");
            }
        }
        Command::Extend { a, b, family, nu } => {
            let a = parse_bigint(&a)?;
            let b = parse_bigint(&b)?;
            let sign = parse_sign(&family)?;
            let fam = extension_family(&a, &b, sign, nu)?;
            for e in fam {
                let flag = if e.degenerate { "  (degenerate)" } else { "" };
                println!("c_{}^{} = {}{}", e.nu, family, e.c_nu, flag);
            }
        }
        Command::Classify { a, b, c } => {
            let a = parse_bigint(&a)?;
            let b = parse_bigint(&b)?;
            let c = parse_bigint(&c)?;
            let triple = d4quad_core::d4core::TripleRoots::new(&a, &b, &c)?;
            println!("roots: r = {}, s = {}, t = {}", triple.r, triple.s, triple.t);
            let half = (&triple.c * &triple.r - &triple.s * &triple.t) / 2;
            let c_is_c1 = half == BigInt::from(2) || half == BigInt::from(-2);
            for (label, case) in [
                ("x-system type 1", SystemCase::PqType1),
                ("x-system type 2", SystemCase::PqType2),
                ("z-system even/even", SystemCase::VwEvenEven),
                ("z-system odd/odd", SystemCase::VwOddOdd),
            ] {
                let classes = classify_fundamental(&triple, case, c_is_c1)?;
                for cls in classes {
                    println!(
                        "{label}: {} (z0={}, x0={}, z1={}, y1={}, y2={}, x2={})",
                        cls.id(),
                        cls.z0,
                        cls.x0,
                        cls.z1,
                        cls.y1,
                        cls.y2,
                        cls.x2
                    );
                }
            }
        }
        Command::Bounds { k, family } => {
            let policy = env_precision()
                .map(|d| PrecisionPolicy::new(d, d.saturating_mul(64).max(20_000)))
                .transpose()?
                .unwrap_or_default();
            let bf = match family.as_str() {
                "c1-" => BoundFamily::C1Minus,
                "c1+" => BoundFamily::C1Plus,
                "c2t1" => BoundFamily::C2Type1,
                "c2t2" => BoundFamily::C2Type2,
                "c3even" => BoundFamily::C3Even,
                "c3odd" => BoundFamily::C3Odd,
                other => bail!("unknown bound family {other}"),
            };
            let r = compute_p_ranges(k, bf, 3, &policy)?;
            println!("k = {k}, family = {family}");
            println!("p_max = {}", r.p_max);
            println!("index_cap = {}", r.index_cap);
            println!("post-window empties verified = {}", r.empties_verified);
        }
        Command::Reduce { k, p, family, class } => {
            let fam = Family::parse(&family).ok_or_else(|| anyhow!("unknown family {family}"))?;
            let policy = env_precision()
                .map(|d| PrecisionPolicy::new(d, d.saturating_mul(64).max(20_000)))
                .transpose()?
                .unwrap_or_default();
            let mut cfg = RunConfig { policy, ..RunConfig::default() };
            cfg.ks = vec![k];
            cfg.families = vec![fam];
            let triple = family_triple(k, p, fam)?;
            let classes = family_classes(&triple, fam)?;
            let target = classes
                .iter()
                .find(|(cls, _)| cls.id() == class)
                .ok_or_else(|| anyhow!("class {class} not admissible here"))?;
            let cert = d4quad_core::prover::certify_single_case(
                k, p, fam, &triple, &target.0, target.1, &cfg,
            )?;
            println!("{}", cert.to_json());
            if cert.verdict != Verdict::RegularOnly {
                std::process::exit(1);
            }
        }
        Command::Prove { k, family, out, precision, jobs } => {
            let ks = match k {
                None => d4quad_core::pell::SUPPORTED_K.to_vec(),
                Some(arg) => arg
                    .split(',')
                    .map(|t| t.trim().parse::<u32>().context("bad k"))
                    .collect::<Result<Vec<_>>>()?,
            };
            let families = match family.as_str() {
                "all" => Family::ALL.to_vec(),
                "c1-" => vec![Family::C1Minus],
                "c1+" => vec![Family::C1Plus],
                "c2" => vec![Family::C2Minus, Family::C2Plus],
                "c3" => vec![Family::C3Minus, Family::C3Plus],
                other => Family::parse(other)
                    .map(|f| vec![f])
                    .ok_or_else(|| anyhow!("unknown family {other}"))?,
            };
            let digits = precision.or_else(env_precision);
            let policy = digits
                .map(|d| PrecisionPolicy::new(d, d.saturating_mul(64).max(20_000)))
                .transpose()?
                .unwrap_or_default();
            let cfg = RunConfig {
                ks,
                families,
                policy,
                out_dir: out,
                jobs: jobs.or_else(env_jobs).unwrap_or(0),
                ..RunConfig::default()
            };
            let report = prove_all(&cfg)?;
            let fails = report
                .certificates
                .iter()
                .filter(|c| c.verdict != Verdict::RegularOnly)
                .count();
            println!(
                "cases: {}, regular-only: {}, failures: {}",
                report.certificates.len(),
                report.certificates.len() - fails,
                fails
            );
            for s in &report.summaries {
                println!(
                    "k={} {} [{}]: p_max={}, index_cap={}",
                    s.k, s.family, s.bound_kind, s.p_max, s.index_cap
                );
            }
            if !report.all_regular {
                std::process::exit(1);
            }
        }
        Command::Search { a, b, c, dmax } => {
            let a = parse_bigint(&a)?;
            let b = parse_bigint(&b)?;
            let c = parse_bigint(&c)?;
            let dmax = parse_bigint(&dmax)?;
            let found = brute_quadruple_search(&a, &b, &c, &dmax)?;
            if found.is_empty() {
                println!("no extensions up to {dmax}");
            }
            for d in found {
                println!("{d}");
            }
        }
    }
    Ok(())
}
