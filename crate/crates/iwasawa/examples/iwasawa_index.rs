//! Exact index computations for `b = a ⊕ n`: the inequality
//! `ind b ≥ rg g − rg k`, with equality exactly under condition (*),
//! and the stable/reductive verdicts for the canonical functional.
//!
//!     cargo run --example iwasawa_index

use iwasawa::indexcalc::{verify_formule_indice, ScCache};
use iwasawa::realform::{analyze, Registry};

fn main() {
    let reg = Registry::load().expect("registry loads");
    let cache = ScCache::new();
    let seed = iwasawa::cli::seed_from_env();
    let names = [
        "sl(2,R)",
        "sl(3,R)",
        "sl(2,H)",
        "su(1,2)",
        "su(2,3)",
        "so(4,1)",
        "so(3,5)",
        "sp(1,1)",
        "sp(1,2)",
        "so*(8)",
        "complex-A1",
        "complex-G2",
        "EI",
        "EIV",
        "EVI",
        "FII",
        "G",
    ];
    println!(
        "{:<12} {:>5} {:>5} {:>8} {:>5} {:>6} {:>9}",
        "name", "dim_b", "ind_b", "rg_diff", "star", "stable", "reductive"
    );
    for name in names {
        let rec = reg.get(name).unwrap();
        let a = analyze(rec).unwrap();
        let rep = verify_formule_indice(&a, &cache, seed).unwrap();
        println!(
            "{:<12} {:>5} {:>5} {:>8} {:>5} {:>6} {:>9}",
            name, rep.dim_b, rep.index_b, rep.rg_diff, rep.star, rep.stable, rep.reductive
        );
        for (what, ok) in &rep.verdicts {
            if !ok {
                println!("    FAILED: {what}");
            }
        }
    }
}
