//! Survey every registered real form: the split of the cascade under
//! the involution, condition (*), and the strongest of the properties
//! (C) > (B) > (A), compared against the declared reference column.
//!
//!     cargo run --example realform_survey

use iwasawa::realform::{analyze, derived_k_m, Registry};

fn main() {
    let reg = Registry::load().expect("registry loads");
    println!(
        "{:<12} {:>5} {:>4} {:>4} {:>6} {:>6} {:>6} {:>5}  {:<8} {}",
        "name", "dim_a", "k_g", "k_m", "K_reel", "K_comp", "star", "(P)", "strongest", "declared"
    );
    for rec in &reg.records {
        let a = analyze(rec).expect("analysis succeeds");
        let an = &a.analysis;
        let derived = an.flags.strongest.label();
        let declared = rec.declared.strongest.label();
        let mark = if derived == declared { "" } else { "  <-- MISMATCH" };
        println!(
            "{:<12} {:>5} {:>4} {:>4} {:>6} {:>6} {:>6} {:>5}  {:<8} {}{}",
            rec.name,
            an.dim_a,
            a.sides() * a.cascade.len(),
            derived_k_m(&a),
            an.kreel.len(),
            an.kcomp_count(),
            an.star,
            an.property_p,
            derived,
            declared,
            mark,
        );
    }
}
