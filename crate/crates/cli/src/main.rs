//! `nilex`: exact verification tooling for the classification of
//! one-generated nilpotent assosymmetric algebras in dimensions up to six.
//!
//! Algebras are referred to by catalog name (`A5_06`; parametric families
//! take `--param name=value` bindings right after the name) or by a path to
//! a table in the text format. Exit status: 0 success, 1 verification
//! failure or inconclusive verdict, 2 input/usage error, 3 internal error.
//! `NILEX_SEED` overrides the default seed; `--seed` overrides both.

use clap::{Args, Parser, Subcommand};
use nilex_core::algebra::Algebra;
use nilex_core::catalog;
use nilex_core::cohomology::{cohomology_basis, BilinearForm};
use nilex_core::dsl;
use nilex_core::extensions::{validate_extension, ExtensionSpec};
use nilex_core::field::{Field, Q, Scalar};
use nilex_core::iso::{
    certify_noniso, fingerprint, iso_search_rational, NonIsoOutcome, RationalSearchConfig,
};
use nilex_core::report::{Report, ReportItem, Verdict};
use nilex_core::rng::DEFAULT_SEED;
use nilex_core::verify::{run_all, VerifyConfig};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nilex",
    version,
    about = "exact tools for one-generated nilpotent assosymmetric algebras"
)]
struct Cli {
    /// Seed for all randomized searches (overrides NILEX_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining identities, nilpotency, one-generation and
    /// annihilator of each listed algebra.
    Check(AlgebraArgs),
    /// Compute Z^2, B^2 and H^2 of one algebra.
    Cohomology(AlgebraArgs),
    /// Build a central extension from cocycle matrix files (given with
    /// `--cocycle FILE`, an n x n rational matrix, one row per line) and
    /// validate it.
    Extend(AlgebraArgs),
    /// Decide isomorphism between two algebras.
    Iso {
        #[command(flatten)]
        algebras: AlgebraArgs,
        /// Primes for finite-field searches.
        #[arg(long, value_delimiter = ',', default_values_t = [5u64, 7u64])]
        primes: Vec<u64>,
        /// Coordinate height bound for the direct rational search.
        #[arg(long, default_value_t = 4)]
        height_bound: i64,
    },
    /// List catalog entries, or print one table.
    Catalog(AlgebraArgs),
    /// Run the complete verification suite over every embedded table.
    #[command(name = "verify-paper")]
    VerifyPaper {
        /// Worker threads for independent verification tasks.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [5u64, 7u64])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 4)]
        height_bound: i64,
    },
}

/// Positional algebra references with interleaved `--param k=v` bindings,
/// e.g. `iso A6_08 --param beta=3/2 A6_09 --param beta=3/2`.
#[derive(Args)]
struct AlgebraArgs {
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    refs: Vec<String>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Verification,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Verification => write!(f, "verification failed"),
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

struct AlgebraRef {
    token: String,
    params: Vec<(String, Q)>,
}

/// References plus any global flags that appeared after the positionals
/// (the trailing-argument collector swallows them).
struct ParsedRefs {
    refs: Vec<AlgebraRef>,
    format: Option<String>,
    seed: Option<u64>,
    cocycles: Vec<String>,
}

fn parse_rational(text: &str) -> Option<Q> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Split `NAME [--param k=v]... NAME [--param k=v]...` into references,
/// also accepting trailing `--format`/`--seed` flags.
fn split_refs(tokens: &[String]) -> Result<ParsedRefs, CliError> {
    let mut out = ParsedRefs {
        refs: Vec::new(),
        format: None,
        seed: None,
        cocycles: Vec::new(),
    };
    let mut i = 0;
    let flag_value = |tokens: &[String], i: usize, flag: &str| -> Result<(String, usize), CliError> {
        let t = &tokens[i];
        if let Some(v) = t.strip_prefix(&format!("{flag}=")) {
            Ok((v.to_string(), i + 1))
        } else {
            match tokens.get(i + 1) {
                Some(v) => Ok((v.clone(), i + 2)),
                None => usage(format!("{flag} needs a value")),
            }
        }
    };
    while i < tokens.len() {
        let t = &tokens[i];
        if t == "--param" || t.starts_with("--param=") {
            let (kv, next) = flag_value(tokens, i, "--param")?;
            let Some((k, v)) = kv.split_once('=') else {
                return usage(format!("malformed --param '{kv}', expected name=value"));
            };
            let Some(value) = parse_rational(v) else {
                return usage(format!(
                    "parameter '{k}' needs an exact rational value, got '{v}'"
                ));
            };
            let Some(current) = out.refs.last_mut() else {
                return usage("--param before any algebra name");
            };
            current.params.push((k.to_string(), value));
            i = next;
        } else if t == "--format" || t.starts_with("--format=") {
            let (v, next) = flag_value(tokens, i, "--format")?;
            if v != "text" && v != "json" {
                return usage(format!("--format must be text or json, got '{v}'"));
            }
            out.format = Some(v);
            i = next;
        } else if t == "--cocycle" || t.starts_with("--cocycle=") {
            let (v, next) = flag_value(tokens, i, "--cocycle")?;
            out.cocycles.push(v);
            i = next;
        } else if t == "--seed" || t.starts_with("--seed=") {
            let (v, next) = flag_value(tokens, i, "--seed")?;
            match v.parse() {
                Ok(n) => out.seed = Some(n),
                Err(_) => return usage(format!("--seed needs an integer, got '{v}'")),
            }
            i = next;
        } else if t.starts_with("--") {
            return usage(format!("unknown flag '{t}' in algebra list"));
        } else {
            out.refs.push(AlgebraRef {
                token: t.clone(),
                params: Vec::new(),
            });
            i += 1;
        }
    }
    Ok(out)
}

/// Resolve a reference: catalog entries by name, otherwise a file in the
/// table format. `allow_excluded` instantiates parametric entries even at
/// excluded parameter values; exclusions exist to avoid listing one
/// isomorphism class twice, so isomorphism queries want to cross them.
fn resolve(r: &AlgebraRef, allow_excluded: bool) -> Result<Algebra, CliError> {
    if let Ok(entry) = catalog::entry(&r.token) {
        let mut params: Vec<Q> = Vec::new();
        for want in entry.param_names {
            match r.params.iter().find(|(k, _)| k == want) {
                Some((_, v)) => params.push(v.clone()),
                None => return usage(format!("{} needs --param {want}=<rational>", r.token)),
            }
        }
        for (k, _) in &r.params {
            if !entry.param_names.contains(&k.as_str()) {
                return usage(format!("{} has no parameter '{k}'", r.token));
            }
        }
        let built = if allow_excluded {
            entry.instantiate_allow_excluded(&params)
        } else {
            entry.instantiate(&params)
        };
        return built.map_err(|e| CliError::Usage(format!("{}: {e}", r.token)));
    }
    if !r.params.is_empty() {
        return usage(format!(
            "'{}' is not a catalog entry; --param applies only to catalog names",
            r.token
        ));
    }
    let text = std::fs::read_to_string(&r.token)
        .map_err(|e| CliError::Usage(format!("cannot read '{}': {e}", r.token)))?;
    dsl::parse_algebra(&text).map_err(|e| CliError::Usage(format!("{}: {e}", r.token)))
}

fn effective_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed
        .or_else(|| std::env::var("NILEX_SEED").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_SEED)
}

fn print_report(report: &Report, format: &str) {
    if format == "json" {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

fn items_report(seed: u64, section: &str, items: Vec<ReportItem>) -> Report {
    let mut report = Report {
        seed,
        primes: vec![],
        ..Report::default()
    };
    match section {
        "cohomology" => report.cohomology = items,
        "extensions" => report.extensions = items,
        "isomorphisms" => report.isomorphisms = items,
        _ => report.properties = items,
    }
    report
}

fn matrix_string(m: &nilex_core::Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let row: Vec<String> = (0..m.cols()).map(|j| m.at(i, j).to_string()).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn run_check(args: &AlgebraArgs, seed: u64, format: &str) -> Result<(), CliError> {
    let parsed = split_refs(&args.refs)?;
    let seed = parsed.seed.unwrap_or(seed);
    let format = parsed.format.as_deref().unwrap_or(format);
    let refs = parsed.refs;
    if refs.is_empty() {
        return usage("check needs at least one algebra");
    }
    let mut items = Vec::new();
    for r in &refs {
        let a = resolve(r, false)?;
        let name = a.name().unwrap_or(&r.token).to_string();
        let assoc = a.check_assosymmetric();
        let power = a.power_sequence();
        let witness = a.one_generated_witness(64, seed);
        let ann = a.annihilator().len();
        let ok = assoc.passed() && power.nilpotent && witness.is_some();
        items.push(ReportItem::new(
            name,
            "assosymmetric, nilpotent, one-generated",
            format!(
                "assosymmetric: {}; nilpotent: {} (index {}); one-generated: {}; dim Ann = {ann}",
                assoc.passed(),
                power.nilpotent,
                power
                    .nilpotency_index
                    .map_or("-".to_string(), |i| i.to_string()),
                witness.is_some(),
            ),
            if ok { Verdict::Pass } else { Verdict::Fail },
            "check",
        ));
    }
    let report = items_report(seed, "properties", items);
    print_report(&report, format);
    if report.failures() > 0 {
        return Err(CliError::Verification);
    }
    Ok(())
}

fn run_cohomology(args: &AlgebraArgs, seed: u64, format: &str) -> Result<(), CliError> {
    let parsed = split_refs(&args.refs)?;
    let seed = parsed.seed.unwrap_or(seed);
    let format = parsed.format.as_deref().unwrap_or(format);
    let refs = parsed.refs;
    if refs.len() != 1 {
        return usage("cohomology needs exactly one algebra");
    }
    let a = resolve(&refs[0], false)?;
    let rep = cohomology_basis(&a);
    let (z, b, h) = rep.dims();
    if format == "json" {
        let payload = serde_json::json!({
            "seed": seed,
            "algebra": a.name(),
            "dims": { "Z2": z, "B2": b, "H2": h },
            "Z2": rep.z2.iter().map(|f| f.describe()).collect::<Vec<_>>(),
            "B2": rep.b2.iter().map(|f| f.describe()).collect::<Vec<_>>(),
            "H2_representatives": rep
                .h2_representatives
                .iter()
                .map(|f| f.describe())
                .collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&payload).expect("json"));
    } else {
        println!("algebra {}", a.name().unwrap_or("?"));
        println!("dim (Z2, B2, H2) = ({z}, {b}, {h})");
        println!("Z2 basis:");
        for f in &rep.z2 {
            println!("  {}", f.describe());
        }
        println!("B2 basis:");
        for f in &rep.b2 {
            println!("  {}", f.describe());
        }
        println!("H2 representatives:");
        for f in &rep.h2_representatives {
            println!("  {}", f.describe());
        }
    }
    Ok(())
}

/// A cocycle file: an n x n matrix of rationals, one row per line,
/// whitespace separated, `#` comments.
fn parse_cocycle_file(path: &str, n: usize) -> Result<BilinearForm, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read '{path}': {e}")))?;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for field in line.split_whitespace() {
            let Some(v) = parse_rational(field) else {
                return usage(format!(
                    "{path}: line {}: '{field}' is not an exact rational",
                    lineno + 1
                ));
            };
            row.push(Scalar::Rational(v));
        }
        if row.len() != n {
            return usage(format!(
                "{path}: line {}: expected {n} entries, found {}",
                lineno + 1,
                row.len()
            ));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return usage(format!("{path}: expected {n} rows, found {}", rows.len()));
    }
    let flat: Vec<Scalar> = rows.into_iter().flatten().collect();
    Ok(BilinearForm::from_flat(n, Field::Rational, &flat))
}

fn run_extend(algebra: &AlgebraArgs, seed: u64, format: &str) -> Result<(), CliError> {
    let parsed = split_refs(&algebra.refs)?;
    let seed = parsed.seed.unwrap_or(seed);
    let format = parsed.format.as_deref().unwrap_or(format);
    let cocycles = parsed.cocycles;
    let refs = parsed.refs;
    if refs.len() != 1 {
        return usage("extend needs exactly one base algebra");
    }
    if cocycles.is_empty() {
        return usage("extend needs at least one --cocycle file");
    }
    let base = resolve(&refs[0], false)?;
    let forms = cocycles
        .iter()
        .map(|p| parse_cocycle_file(p, base.dim()))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = ExtensionSpec::new(base, forms);
    let rep = validate_extension(&spec, 64, seed)
        .map_err(|e| CliError::Usage(format!("extension rejected: {e}")))?;
    let table = dsl::serialize_algebra(
        &rep.extension
            .clone()
            .with_name(format!("{}_ext", spec.base.name().unwrap_or("A"))),
    );
    let ok = rep.admissibility.admissible() && rep.all_structural_checks_pass();
    if format == "json" {
        let payload = serde_json::json!({
            "seed": seed,
            "base": spec.base.name(),
            "admissible": rep.admissibility.admissible(),
            "ann_intersection_trivial": rep.admissibility.ann_intersection_trivial,
            "classes_independent": rep.admissibility.classes_independent,
            "assosymmetric": rep.assosymmetric,
            "nilpotent": rep.nilpotent,
            "one_generated": rep.one_generated,
            "ann_dim": rep.ann_dim,
            "ann_identity_holds": rep.ann_identity_holds,
            "two_dimensional_annihilator": rep.ann_dim_at_least_two,
            "table": table,
        });
        println!("{}", serde_json::to_string_pretty(&payload).expect("json"));
    } else {
        println!("base {}", spec.base.name().unwrap_or("?"));
        println!(
            "admissible: {} (annihilator condition {}, classes independent {})",
            rep.admissibility.admissible(),
            rep.admissibility.ann_intersection_trivial,
            rep.admissibility.classes_independent
        );
        println!(
            "assosymmetric: {}; nilpotent: {}; one-generated: {}; dim Ann = {}; annihilator identity: {}",
            rep.assosymmetric, rep.nilpotent, rep.one_generated, rep.ann_dim, rep.ann_identity_holds
        );
        if rep.ann_dim_at_least_two {
            println!(
                "note: annihilator has dimension >= 2; the algebra arises from a smaller base"
            );
        }
        println!();
        print!("{table}");
    }
    if !ok {
        return Err(CliError::Verification);
    }
    Ok(())
}

fn run_iso(
    args: &AlgebraArgs,
    primes: &[u64],
    height_bound: i64,
    seed: u64,
    format: &str,
) -> Result<(), CliError> {
    let parsed = split_refs(&args.refs)?;
    let seed = parsed.seed.unwrap_or(seed);
    let format = parsed.format.as_deref().unwrap_or(format);
    let refs = parsed.refs;
    if refs.len() != 2 {
        return usage("iso needs exactly two algebras");
    }
    let a = resolve(&refs[0], true)?;
    let b = resolve(&refs[1], true)?;
    let subject = format!(
        "{} vs {}",
        a.name().unwrap_or("A"),
        b.name().unwrap_or("B")
    );
    let mut items = Vec::new();
    let mut decided = true;
    if a.dim() != b.dim() {
        items.push(ReportItem::pass(
            subject,
            "decided",
            format!("non-isomorphic: dimensions {} vs {}", a.dim(), b.dim()),
            "dimension",
        ));
    } else if fingerprint(&a) != fingerprint(&b) {
        items.push(ReportItem::pass(
            subject,
            "decided",
            format!(
                "non-isomorphic over every field extension: fingerprints differ: ({}) vs ({})",
                fingerprint(&a),
                fingerprint(&b)
            ),
            "fingerprint certificate",
        ));
    } else {
        let rc = RationalSearchConfig {
            height_bound,
            primes: primes.to_vec(),
            ..RationalSearchConfig::default()
        };
        match iso_search_rational(&a, &b, &rc) {
            Ok(Some(w)) => items.push(ReportItem::pass(
                subject,
                "decided",
                format!("isomorphic: verified witness {}", matrix_string(&w.matrix)),
                "generator-image search",
            )),
            _ => match certify_noniso(&a, &b, primes) {
                NonIsoOutcome::FpExhaustion { primes } => items.push(ReportItem::pass(
                    subject,
                    "decided",
                    format!(
                        "no rational witness; exhaustive generator-image failure over {primes:?} (heuristic for extension fields)"
                    ),
                    "finite-field exhaustion",
                )),
                NonIsoOutcome::NotCertified { detail } => {
                    decided = false;
                    items.push(ReportItem::new(
                        subject,
                        "decided",
                        format!("inconclusive: {detail}"),
                        Verdict::Fail,
                        "isomorphism search",
                    ));
                }
                other => items.push(ReportItem::pass(
                    subject,
                    "decided",
                    format!("{other:?}"),
                    "certificate",
                )),
            },
        }
    }
    let report = items_report(seed, "isomorphisms", items);
    print_report(&report, format);
    if !decided {
        return Err(CliError::Verification);
    }
    Ok(())
}

fn run_catalog(args: &AlgebraArgs, format: &str) -> Result<(), CliError> {
    let parsed = split_refs(&args.refs)?;
    let format = parsed.format.as_deref().unwrap_or(format);
    let refs = parsed.refs;
    match refs.len() {
        0 => {
            if format == "json" {
                let entries: Vec<_> = catalog::entries()
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "name": e.name,
                            "dim": e.dim,
                            "parameters": e.param_names,
                            "corrected": e.corrected,
                            "variant": e.variant,
                            "provenance": e.provenance,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&entries).expect("json"));
            } else {
                for e in catalog::entries() {
                    let params = if e.param_names.is_empty() {
                        String::new()
                    } else {
                        format!("({})", e.param_names.join(","))
                    };
                    let mut tags = Vec::new();
                    if e.corrected {
                        tags.push("corrected");
                    }
                    if e.variant {
                        tags.push("variant");
                    }
                    let tag = if tags.is_empty() {
                        String::new()
                    } else {
                        format!("  [{}]", tags.join(", "))
                    };
                    println!("{}{params}  dim {}{tag}", e.name, e.dim);
                }
            }
            Ok(())
        }
        1 => {
            let entry =
                catalog::entry(&refs[0].token).map_err(|e| CliError::Usage(e.to_string()))?;
            if refs[0].params.is_empty() && !entry.param_names.is_empty() {
                println!(
                    "{}({}) dim {}\n{}",
                    entry.name,
                    entry.param_names.join(","),
                    entry.dim,
                    entry.provenance
                );
                println!("sample parameters:");
                for params in catalog::sample_parameters(entry.name, 3)
                    .map_err(|e| CliError::Usage(e.to_string()))?
                {
                    let rendered: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                    println!("  ({})", rendered.join(","));
                }
                return Ok(());
            }
            let a = resolve(&refs[0], false)?;
            print!("{}", dsl::serialize_algebra(&a));
            Ok(())
        }
        _ => usage("catalog takes at most one entry name"),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let seed = effective_seed(cli.seed);
    match &cli.command {
        Command::Check(args) => run_check(args, seed, &cli.format),
        Command::Cohomology(args) => run_cohomology(args, seed, &cli.format),
        Command::Extend(algebra) => run_extend(algebra, seed, &cli.format),
        Command::Iso {
            algebras,
            primes,
            height_bound,
        } => run_iso(algebras, primes, *height_bound, seed, &cli.format),
        Command::Catalog(args) => run_catalog(args, &cli.format),
        Command::VerifyPaper {
            jobs,
            primes,
            height_bound,
        } => {
            let cfg = VerifyConfig {
                seed,
                primes: primes.clone(),
                height_bound: *height_bound,
                jobs: *jobs,
                ..VerifyConfig::default()
            };
            let report = run_all(&cfg);
            print_report(&report, &cli.format);
            if report.failures() > 0 {
                return Err(CliError::Verification);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli)));
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(CliError::Verification)) => ExitCode::from(1),
        Ok(Err(CliError::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            eprintln!("internal invariant breach: {msg}");
            ExitCode::from(3)
        }
    }
}
