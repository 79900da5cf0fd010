//! Command-line surface: regenerate the tables, analyze real forms,
//! compute indices, and run the verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/input error.
//! The sampling seed for index computations comes from `IWASAWA_SEED`
//! (fixed default for reproducibility).

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cascade::kostant_cascade;
use crate::indexcalc::{self, ScCache};
use crate::paraquasi;
use crate::realform::{self, analyze, Kind, Registry};
use crate::rootsys::{Family, RootSystem, SimpleType};
use crate::verify::{self, Scope, Status};

const DEFAULT_SEED: u64 = 20260809;

pub fn seed_from_env() -> u64 {
    std::env::var("IWASAWA_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Parser)]
#[command(
    name = "iwasawa",
    version,
    about = "Kostant cascades, real forms, and exact index computations for the Iwasawa subalgebra"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Kostant cascade of a simple type (optionally of a base subset)
    Cascade {
        /// Family letter: A, B, C, D, E, F or G
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: usize,
        /// Comma-separated 1-based node subset (default: full base)
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Analyze a real form: cascade split, condition (*), properties
    Realform {
        #[arg(long)]
        name: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact index / stability / reductivity report for a subalgebra
    Index {
        #[arg(long)]
        name: String,
        /// One of: b, borel, minimal-parabolic
        #[arg(long, default_value = "b")]
        subalgebra: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Rank-one parabolic quasi-reductivity verdicts for a simple type
    Parabolic {
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the verification suite
    Verify {
        /// One of: all, cascade, chevalley, realform, parabolic, index
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Cascade {
            family,
            rank,
            subset,
            format,
        } => cmd_cascade(&family, rank, subset.as_deref(), format),
        Cmd::Realform { name, format } => cmd_realform(&name, format),
        Cmd::Index {
            name,
            subalgebra,
            format,
        } => cmd_index(&name, &subalgebra, format),
        Cmd::Parabolic {
            family,
            rank,
            format,
        } => cmd_parabolic(&family, rank, format),
        Cmd::Verify { scope, format } => cmd_verify(&scope, format),
    }
}

fn parse_type(family: &str, rank: usize) -> Result<SimpleType, String> {
    let f = Family::parse(family).ok_or_else(|| {
        format!("unknown family {family:?}; expected one of A, B, C, D, E, F, G")
    })?;
    SimpleType::new(f, rank).map_err(|e| e.to_string())
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn cmd_cascade(family: &str, rank: usize, subset: Option<&str>, format: Format) -> i32 {
    let t = match parse_type(family, rank) {
        Ok(t) => t,
        Err(e) => return usage_error(&e),
    };
    let rs = RootSystem::build(t);
    let s = match subset {
        None => rs.full_base(),
        Some(txt) => {
            let mut set = std::collections::BTreeSet::new();
            for part in txt.split(',') {
                match part.trim().parse::<usize>() {
                    Ok(v) if v >= 1 && v <= rank => {
                        set.insert(v - 1);
                    }
                    _ => return usage_error(&format!("bad subset node {part:?}")),
                }
            }
            set
        }
    };
    let c = kostant_cascade(&rs, &s);
    match format {
        Format::Json => {
            let elements: Vec<_> = c
                .elements
                .iter()
                .map(|e| {
                    json!({
                        "nodes": e.subset.iter().map(|&i| i + 1).collect::<Vec<_>>(),
                        "epsilon": e.epsilon.coeffs,
                        "gamma_size": e.gamma.len(),
                        "parent": e.parent,
                    })
                })
                .collect();
            let out = json!({
                "type": t.to_string(),
                "k": c.len(),
                "elements": elements,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv => {
            println!("element,nodes,epsilon,gamma_size");
            for (i, e) in c.elements.iter().enumerate() {
                let nodes: Vec<String> = e.subset.iter().map(|&n| (n + 1).to_string()).collect();
                let eps: Vec<String> = e.epsilon.coeffs.iter().map(|v| v.to_string()).collect();
                println!(
                    "{},{},{},{}",
                    i + 1,
                    nodes.join(" "),
                    eps.join(" "),
                    e.gamma.len()
                );
            }
        }
        Format::Text => {
            println!("cascade of {t}: k = {}", c.len());
            for (i, e) in c.elements.iter().enumerate() {
                let nodes: Vec<String> = e.subset.iter().map(|&n| (n + 1).to_string()).collect();
                println!(
                    "  K{} = {{{}}}  epsilon = {:?}  |Gamma| = {}",
                    i + 1,
                    nodes.join(","),
                    e.epsilon.coeffs,
                    e.gamma.len()
                );
            }
        }
    }
    0
}

fn cmd_realform(name: &str, format: Format) -> i32 {
    let reg = match Registry::load() {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let rec = match reg.get(name) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let a = match analyze(rec) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let mismatches = realform::validate_against_declared(&a);
    let kcomp_formula = realform::kcomp_count(&a).ok();
    match format {
        Format::Json | Format::Csv => {
            let mut v = serde_json::to_value(realform::analysis_json(&a)).unwrap();
            let obj = v.as_object_mut().unwrap();
            obj.insert("declared_strongest".into(), json!(rec.declared.strongest.label()));
            obj.insert("kcomp_formula".into(), json!(kcomp_formula));
            obj.insert("reference_match".into(), json!(mismatches.is_empty()));
            obj.insert("reference_mismatches".into(), json!(mismatches));
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        Format::Text => {
            println!("{} ({} of type {})", rec.name, kind_label(rec.kind), rec.simple_type);
            if a.analysis.b_is_zero {
                println!("  b is zero (compact form); every verdict is trivial");
            }
            println!(
                "  dim a = {}   k_g = {}   k_m = {}",
                a.analysis.dim_a,
                a.sides() * a.cascade.len(),
                realform::derived_k_m(&a)
            );
            println!(
                "  K'' = {}  K' = {}  K_reel = {}  #K_comp = {}",
                a.analysis.kpp.len(),
                a.analysis.kp.len(),
                a.analysis.kreel.len(),
                a.analysis.kcomp_count()
            );
            println!(
                "  property (P): {}   condition (*): {}",
                a.analysis.property_p, a.analysis.star
            );
            if let Some(v) = kcomp_formula {
                println!("  #K_comp by the closed formula: {v}");
            }
            let f = &a.analysis.flags;
            println!(
                "  properties: A={} B={} B'={} C={}  strongest = {}",
                f.a,
                f.b,
                f.bprime,
                f.c,
                f.strongest.label()
            );
            println!(
                "  declared strongest = {}  reference match: {}",
                rec.declared.strongest.label(),
                if mismatches.is_empty() { "yes" } else { "NO" }
            );
            for m in &mismatches {
                println!("    mismatch: {m}");
            }
        }
    }
    if mismatches.is_empty() {
        0
    } else {
        1
    }
}

fn kind_label(k: Kind) -> &'static str {
    match k {
        Kind::Form => "real form",
        Kind::Compact => "compact form",
        Kind::ComplexDouble => "realified complex algebra",
    }
}

fn cmd_index(name: &str, subalgebra: &str, format: Format) -> i32 {
    let seed = seed_from_env();
    let reg = match Registry::load() {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let rec = match reg.get(name) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let a = match analyze(rec) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let cache = ScCache::new();
    match subalgebra {
        "b" => {
            if a.analysis.b_is_zero {
                return usage_error(&format!("{name} is compact: b is zero"));
            }
            match indexcalc::verify_formule_indice(&a, &cache, seed) {
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
                Ok(rep) => {
                    print_index_report(&rep, format);
                    if rep.verdicts.iter().all(|(_, ok)| *ok) {
                        0
                    } else {
                        1
                    }
                }
            }
        }
        "borel" => {
            let sc = cache.get(rec.simple_type);
            let q = indexcalc::build_borel(sc).unwrap();
            report_plain_index(name, "borel", &q, seed, format)
        }
        "minimal-parabolic" => {
            let q = match indexcalc::build_minimal_parabolic(&a, &cache) {
                Ok(q) => q,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 1;
                }
            };
            let reductive = verify::minimal_parabolic_reductive(&a, &cache, seed);
            let code = report_plain_index(name, "minimal-parabolic", &q, seed, format);
            match reductive {
                Ok(v) => println!("reductive functional found: {v}"),
                Err(e) => println!("reductive sampling: {e}"),
            }
            code
        }
        other => usage_error(&format!(
            "unknown subalgebra {other:?}; expected b, borel or minimal-parabolic"
        )),
    }
}

fn report_plain_index(
    name: &str,
    kind: &str,
    q: &indexcalc::Subalgebra,
    seed: u64,
    format: Format,
) -> i32 {
    match indexcalc::index(q, seed) {
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
        Ok(c) => {
            if format == Format::Json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "name": name,
                        "subalgebra": kind,
                        "dim": c.dim,
                        "generic_rank": c.generic_rank,
                        "index": c.index,
                    }))
                    .unwrap()
                );
            } else {
                println!("{name} {kind}: dim = {}, index = {}", c.dim, c.index);
            }
            0
        }
    }
}

fn print_index_report(rep: &indexcalc::IndexReport, format: Format) {
    match format {
        Format::Json | Format::Csv => {
            println!("{}", serde_json::to_string_pretty(rep).unwrap());
        }
        Format::Text => {
            println!(
                "{}: dim b = {}, ind b = {}, rg g - rg k = {}",
                rep.name, rep.dim_b, rep.index_b, rep.rg_diff
            );
            println!(
                "  condition (*): {}   dim b_phi_u = {}   formula = {}",
                rep.star, rep.stab_u_dim, rep.formula_dim
            );
            println!("  stable: {}   reductive: {}", rep.stable, rep.reductive);
            for (what, ok) in &rep.verdicts {
                println!("  [{}] {}", if *ok { "ok" } else { "FAIL" }, what);
            }
        }
    }
}

fn cmd_parabolic(family: &str, rank: usize, format: Format) -> i32 {
    let t = match parse_type(family, rank) {
        Ok(t) => t,
        Err(e) => return usage_error(&e),
    };
    let row = paraquasi::table_row_json(t);
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&row).unwrap()),
        Format::Csv => {
            println!("node,quasi_reductive");
            let verdicts = paraquasi::table_row(t);
            for (i, v) in verdicts.iter().enumerate() {
                println!("{},{}", i + 1, v);
            }
        }
        Format::Text => {
            println!("rank-one parabolics of {t}:");
            let verdicts = paraquasi::table_row(t);
            for (i, v) in verdicts.iter().enumerate() {
                println!(
                    "  beta{}: {}",
                    i + 1,
                    if *v { "quasi-reductive" } else { "not quasi-reductive" }
                );
            }
        }
    }
    0
}

fn cmd_verify(scope: &str, format: Format) -> i32 {
    let Some(scope) = Scope::parse(scope) else {
        return usage_error(&format!(
            "unknown scope {scope:?}; expected all, cascade, chevalley, realform, parabolic or index"
        ));
    };
    let seed = seed_from_env();
    let checks = verify::run(scope, seed);
    for c in &checks {
        match format {
            Format::Json => println!("{}", serde_json::to_string(c).unwrap()),
            _ => {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Warn => "WARN",
                };
                println!("[{tag}] {}: {}", c.id, c.detail);
            }
        }
    }
    let fails = checks.iter().filter(|c| c.status == Status::Fail).count();
    let warns = checks.iter().filter(|c| c.status == Status::Warn).count();
    if format != Format::Json {
        println!(
            "{} checks: {} passed, {fails} failed, {warns} warnings",
            checks.len(),
            checks.len() - fails - warns
        );
    }
    if verify::has_failure(&checks) {
        1
    } else {
        0
    }
}
