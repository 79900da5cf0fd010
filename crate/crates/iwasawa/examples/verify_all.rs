//! Run the complete verification suite and print one line per check.
//! Equivalent to `iwasawa verify --scope all`.
//!
//!     cargo run --example verify_all

use iwasawa::verify::{run, Scope, Status};

fn main() {
    let seed = iwasawa::cli::seed_from_env();
    let checks = run(Scope::All, seed);
    let mut fails = 0;
    for c in &checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => {
                fails += 1;
                "FAIL"
            }
            Status::Warn => "WARN",
        };
        println!("[{tag}] {}: {}", c.id, c.detail);
    }
    println!("---\n{} checks, {} failures", checks.len(), fails);
    std::process::exit(if fails > 0 { 1 } else { 0 });
}
