//! Command-line interface for the steenrod crate.
//!
//! Every subcommand prints a human-readable report by default and a
//! machine-readable document with `--json` (schema 1: sorted keys, canonical
//! term order, big integers as strings). Exit codes: 0 on success, 1 when
//! `verify-paper` finds a failing claim, 2 on usage errors.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use steenrod::bounds::{self, BoundReport, KsoExact};
use steenrod::milnor::{chi_pr, milnor_to_admissible, MilnorElement};
use steenrod::poly::{chi_nontriviality_witness, PolyClass};
use steenrod::seq::{enumerate_upsilon_r, ex, greatest_in_upsilon_r};
use steenrod::verify::{run_all, Caps};
use steenrod::{transition, Prime};

const CACHE_DIR_VAR: &str = "STEENROD_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "steenrod",
    version,
    about = "Exact computations in the even mod-p Steenrod algebra and \
             bounds for the realization numbers k_U(n), k_SO(n)"
)]
struct Cli {
    /// Emit a machine-readable JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower/upper bounds and exact values for k_U(n) and k_SO(n).
    Bounds {
        /// Dimension, at least 1.
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Also report the superseded uniform bounds k^s_U, k^s_SO.
        #[arg(long)]
        show_superseded: bool,
    },
    /// The antipode chi(P^r), expanded in the requested basis.
    Chi {
        /// Prime modulus.
        p: u32,
        /// Power index, at least 0.
        r: u64,
        #[arg(long, value_enum, default_value_t = BasisArg::Milnor)]
        basis: BasisArg,
    },
    /// Excess table ex(0..=r_max) with first differences.
    Ex {
        /// Prime modulus.
        p: u32,
        r_max: u64,
    },
    /// The degree-r monomial fibre, greatest element flagged.
    Upsilon {
        /// Prime modulus.
        p: u32,
        r: u64,
    },
    /// Apply chi(P^r) to ex(r)/2 fundamental classes and report the witness.
    Act {
        /// Prime modulus.
        p: u32,
        /// Power index, at least 1.
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        r: u64,
    },
    /// Run every desk-checkable claim and print one line per claim.
    VerifyPaper {
        /// Cap on r for algebra and action claims.
        #[arg(long, default_value_t = 8)]
        cap_r: u64,
        /// Cap on the dimension for bound identities.
        #[arg(long, default_value_t = 500)]
        cap_n: u64,
        /// Cap on the topological degree for transition-matrix claims.
        #[arg(long, default_value_t = 60)]
        cap_degree: u64,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Milnor,
    Admissible,
}

fn main() -> ExitCode {
    if let Ok(dir) = std::env::var(CACHE_DIR_VAR) {
        if !dir.is_empty() {
            transition::set_cache_dir(Some(dir.into()));
        }
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn parse_prime(p: u32) -> Result<Prime, String> {
    Prime::new(p).ok_or_else(|| format!("{p} is not prime"))
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let started = Instant::now();
    match &cli.command {
        Command::Bounds { n, show_superseded } => {
            let report = bounds::report(*n, *show_superseded);
            let params = json!({ "n": n, "show_superseded": show_superseded });
            if cli.json {
                emit(document("bounds", params, bounds_value(&report), started));
            } else {
                print_bounds(&report);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Chi { p, r, basis } => {
            let p = parse_prime(*p)?;
            let element = chi_pr(p, *r);
            let params = json!({
                "p": p.get(),
                "r": r,
                "basis": match basis {
                    BasisArg::Milnor => "milnor",
                    BasisArg::Admissible => "admissible",
                },
            });
            let degree = 2 * r * (p.as_u64() - 1);
            let (result, rendered) = match basis {
                BasisArg::Milnor => (
                    json!({ "degree": degree, "terms": milnor_value(&element) }),
                    element.to_string(),
                ),
                BasisArg::Admissible => {
                    let expansion = milnor_to_admissible(&element);
                    let rendered = if expansion.is_empty() {
                        "0".to_string()
                    } else {
                        expansion
                            .iter()
                            .rev()
                            .map(|(w, c)| {
                                if *c == 1 {
                                    w.to_string()
                                } else {
                                    format!("{c}*{w}")
                                }
                            })
                            .collect::<Vec<_>>()
                            .join(" + ")
                    };
                    let terms: Vec<Value> = expansion
                        .iter()
                        .rev()
                        .map(|(w, c)| json!({ "coeff": c, "word": w.letters() }))
                        .collect();
                    (json!({ "degree": degree, "terms": terms }), rendered)
                }
            };
            if cli.json {
                emit(document("chi", params, result, started));
            } else {
                println!("chi(P^{r}) at p = {p}, degree {degree}:");
                println!("  {rendered}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ex { p, r_max } => {
            let p = parse_prime(*p)?;
            let params = json!({ "p": p.get(), "r_max": r_max });
            let mut rows = Vec::new();
            let mut prev = 0u64;
            for r in 0..=*r_max {
                let e = ex(p, r);
                let diff = (r > 0).then(|| e as i64 - prev as i64);
                rows.push((r, e, diff));
                prev = e;
            }
            if cli.json {
                let result: Vec<Value> = rows
                    .iter()
                    .map(|(r, e, diff)| json!({ "r": r, "ex": e, "diff": diff }))
                    .collect();
                emit(document("ex", params, json!({ "rows": result }), started));
            } else {
                println!("{:>4} {:>6} {:>6}", "r", "ex(r)", "diff");
                for (r, e, diff) in rows {
                    match diff {
                        Some(d) => println!("{r:>4} {e:>6} {d:>6}"),
                        None => println!("{r:>4} {e:>6} {:>6}", "-"),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Upsilon { p, r } => {
            let p = parse_prime(*p)?;
            let params = json!({ "p": p.get(), "r": r });
            let all = enumerate_upsilon_r(p, *r);
            let greatest = greatest_in_upsilon_r(p, *r);
            if cli.json {
                let seqs: Vec<Value> = all
                    .iter()
                    .map(|j| {
                        json!({
                            "entries": j.entries(),
                            "greatest": *j == greatest,
                            "entry_sum": j.sum(),
                        })
                    })
                    .collect();
                let result = json!({ "count": all.len(), "sequences": seqs });
                emit(document("upsilon", params, result, started));
            } else {
                println!(
                    "Upsilon_{r} at p = {p}: {} sequence{}",
                    all.len(),
                    if all.len() == 1 { "" } else { "s" }
                );
                for j in &all {
                    let flag = if *j == greatest { "  *greatest" } else { "" };
                    println!("  {j}{flag}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Act { p, r } => {
            let p = parse_prime(*p)?;
            let params = json!({ "p": p.get(), "r": r });
            let witness = chi_nontriviality_witness(p, *r);
            let vars = (ex(p, *r) / 2) as usize;
            if cli.json {
                let result = json!({
                    "ex": ex(p, *r),
                    "variables": vars,
                    "result": poly_value(&witness.result),
                    "witness_monomial": witness.witness_monomial,
                    "witness_coeff": witness.result.coeff(&witness.witness_monomial),
                    "ok": witness.ok,
                });
                emit(document("act", params, result, started));
            } else {
                println!(
                    "chi(P^{r}) at p = {p} on i1...i{vars} (ex({r}) = {}):",
                    ex(p, *r)
                );
                println!("  result:  {}", witness.result);
                println!(
                    "  witness: {}  (coefficient {})",
                    exponents_string(&witness.witness_monomial),
                    witness.result.coeff(&witness.witness_monomial)
                );
                println!("  {}", if witness.ok { "ok" } else { "FAILED" });
            }
            if witness.ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::VerifyPaper {
            cap_r,
            cap_n,
            cap_degree,
        } => {
            let caps = Caps {
                algebra_r: *cap_r,
                max_n: *cap_n,
                max_degree: *cap_degree,
                ..Caps::default()
            };
            let params = json!({
                "cap_r": cap_r,
                "cap_n": cap_n,
                "cap_degree": cap_degree,
            });
            let outcomes = run_all(&caps);
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            if cli.json {
                let claims: Vec<Value> = outcomes
                    .iter()
                    .map(|o| {
                        json!({
                            "id": o.id,
                            "anchor": o.anchor,
                            "status": if o.passed() { "PASS" } else { "FAIL" },
                            "detail": o.result.as_ref().err(),
                        })
                    })
                    .collect();
                let result = json!({
                    "claims": claims,
                    "passed": outcomes.len() - failed,
                    "failed": failed,
                });
                emit(document("verify-paper", params, result, started));
            } else {
                for o in &outcomes {
                    let status = if o.passed() { "PASS" } else { "FAIL" };
                    println!("{:<24} {status}  {}", o.id, o.anchor);
                    if let Err(detail) = &o.result {
                        println!("{:<24}       {detail}", "");
                    }
                }
                println!(
                    "{} claims, {} passed, {failed} failed",
                    outcomes.len(),
                    outcomes.len() - failed
                );
            }
            if failed == 0 {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn emit(doc: Value) {
    println!("{}", serde_json::to_string_pretty(&doc).expect("valid JSON"));
}

fn document(command: &str, parameters: Value, result: Value, started: Instant) -> Value {
    json!({
        "schema": 1,
        "command": command,
        "parameters": parameters,
        "engine": { "name": "steenrod", "version": env!("CARGO_PKG_VERSION") },
        "elapsed_ms": started.elapsed().as_secs_f64() * 1e3,
        "result": result,
    })
}

// Big integers travel as strings: JSON numbers would lose precision.
fn big_string(v: &num_bigint::BigUint) -> Value {
    Value::String(v.to_string())
}

fn bounds_value(report: &BoundReport) -> Value {
    let per_prime: Vec<Value> = report
        .per_prime
        .iter()
        .map(|v| {
            json!({
                "p": v.p,
                "nu_lower": v.lower,
                "nu_upper": v.upper,
                "exact": v.exact,
            })
        })
        .collect();
    let kso_exact = match &report.kso_exact {
        None => Value::Null,
        Some(KsoExact::Value(v)) => big_string(v),
        Some(KsoExact::EitherOf(a, b)) => json!({ "either_of": [big_string(a), big_string(b)] }),
    };
    let mut result = json!({
        "n": report.n,
        "ku": {
            "lower": big_string(&report.ku_lower),
            "upper": big_string(&report.ku_upper),
            "exact": report.ku_exact.as_ref().map(big_string),
        },
        "kso": {
            "lower": big_string(&report.kso_lower),
            "upper": big_string(&report.kso_upper),
            "exact": kso_exact,
        },
        "per_prime": per_prime,
    });
    if let Some((ku_s, kso_s)) = &report.superseded {
        result["superseded"] = json!({ "ku": big_string(ku_s), "kso": big_string(kso_s) });
    }
    result
}

fn print_bounds(report: &BoundReport) {
    let n = report.n;
    println!("n = {n}");
    let ku_exact = match &report.ku_exact {
        Some(v) => format!("exact {v}"),
        None => "exact unknown".to_string(),
    };
    println!(
        "  k_U({n}):  lower {}  upper {}  {ku_exact}",
        report.ku_lower, report.ku_upper
    );
    let kso_exact = match &report.kso_exact {
        None => "exact unknown".to_string(),
        Some(v) => format!("exact {v}"),
    };
    println!(
        "  k_SO({n}): lower {}  upper {}  {kso_exact}",
        report.kso_lower, report.kso_upper
    );
    if !report.per_prime.is_empty() {
        println!("  per prime:");
        for v in &report.per_prime {
            let exact = match v.exact {
                Some(e) => format!("  exact {e}"),
                None => String::new(),
            };
            println!("    p={}: nu in [{}, {}]{exact}", v.p, v.lower, v.upper);
        }
    }
    if let Some((ku_s, kso_s)) = &report.superseded {
        println!("  superseded uniform bounds: k^s_U = {ku_s}, k^s_SO = {kso_s}");
    }
}

fn milnor_value(e: &MilnorElement) -> Vec<Value> {
    // Descending right-lexicographic order, matching the text rendering.
    let mut terms: Vec<Value> = e
        .terms()
        .map(|(m, c)| json!({ "coeff": c, "xi": m.exponents().entries() }))
        .collect();
    terms.reverse();
    terms
}

fn poly_value(f: &PolyClass) -> Vec<Value> {
    // Descending left-lexicographic order.
    let mut terms: Vec<Value> = f
        .terms()
        .map(|(m, c)| json!({ "coeff": c, "exponents": m }))
        .collect();
    terms.reverse();
    terms
}

fn exponents_string(exps: &[u32]) -> String {
    if exps.iter().all(|&a| a == 0) {
        return "1".to_string();
    }
    exps.iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(v, &a)| {
            if a == 1 {
                format!("i{}", v + 1)
            } else {
                format!("i{}^{a}", v + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}
