//! The machine-checkable claims behind every table this crate ships.
//!
//! Each check re-derives a published statement from scratch and compares
//! it against an independent route (closed forms, golden fixtures, the
//! index oracle). Genuine transcription slips in the source tables are
//! reported as warnings — never silently "fixed" — while disagreements
//! between two independently computed quantities fail the run.
//!
//! The golden fixtures in this module are the only place the shipped
//! tables are hard-coded; everything else re-derives them.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cascade::{k_g, k_g_closed_form, kostant_cascade};
use crate::chevalley::StructureConstants;
use crate::indexcalc::{self, ScCache};
use crate::linalg;
use crate::paraquasi::{self, PartClass};
use crate::realform::{self, analyze, Kind, Registry, Strongest};
use crate::rootsys::{Family, RootSystem, SimpleType};

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn pass(id: &str, detail: impl Into<String>) -> Check {
        Check {
            id: id.to_string(),
            status: Status::Pass,
            detail: detail.into(),
        }
    }
    fn fail(id: &str, detail: impl Into<String>) -> Check {
        Check {
            id: id.to_string(),
            status: Status::Fail,
            detail: detail.into(),
        }
    }
    fn warn(id: &str, detail: impl Into<String>) -> Check {
        Check {
            id: id.to_string(),
            status: Status::Warn,
            detail: detail.into(),
        }
    }
    fn of(id: &str, ok: bool, detail: impl Into<String>) -> Check {
        if ok {
            Check::pass(id, detail)
        } else {
            Check::fail(id, detail)
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Scope {
    All,
    Cascade,
    Chevalley,
    RealForm,
    Parabolic,
    Index,
}

impl Scope {
    pub fn parse(s: &str) -> Option<Scope> {
        match s {
            "all" => Some(Scope::All),
            "cascade" => Some(Scope::Cascade),
            "chevalley" => Some(Scope::Chevalley),
            "realform" => Some(Scope::RealForm),
            "parabolic" => Some(Scope::Parabolic),
            "index" => Some(Scope::Index),
            _ => None,
        }
    }
}

pub fn run(scope: Scope, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    if matches!(scope, Scope::All | Scope::Cascade) {
        out.extend(cascade_checks());
    }
    if matches!(scope, Scope::All | Scope::Chevalley) {
        out.extend(chevalley_checks());
    }
    if matches!(scope, Scope::All | Scope::RealForm) {
        out.extend(realform_checks());
    }
    if matches!(scope, Scope::All | Scope::Parabolic) {
        out.extend(parabolic_checks(seed));
    }
    if matches!(scope, Scope::All | Scope::Index) {
        out.extend(index_checks(seed));
    }
    out
}

pub fn has_failure(checks: &[Check]) -> bool {
    checks.iter().any(|c| c.status == Status::Fail)
}

fn all_types(max_rank: usize) -> Vec<SimpleType> {
    let mut types = Vec::new();
    for l in 1..=max_rank {
        types.push(SimpleType::new(Family::A, l).unwrap());
    }
    for l in 2..=max_rank {
        types.push(SimpleType::new(Family::B, l).unwrap());
    }
    for l in 3..=max_rank {
        types.push(SimpleType::new(Family::C, l).unwrap());
    }
    for l in 4..=max_rank {
        types.push(SimpleType::new(Family::D, l).unwrap());
    }
    for l in 6..=8.min(max_rank) {
        types.push(SimpleType::new(Family::E, l).unwrap());
    }
    if max_rank >= 4 {
        types.push(SimpleType::new(Family::F, 4).unwrap());
    }
    types.push(SimpleType::new(Family::G, 2).unwrap());
    types
}

// ---------------------------------------------------------------- cascade

/// Golden fixture: the published cascade-root tables for selected types.
/// The second G2 vector is printed as (1,2) in the source table, which
/// is neither a highest root of any base subset nor strongly orthogonal
/// to (2,3); the corrected value (0,1) is pinned here and the slip is
/// reported as a warning.
fn epsilon_fixture(t: SimpleType) -> Option<Vec<Vec<i64>>> {
    let v: Vec<Vec<i64>> = match (t.family, t.rank) {
        (Family::A, 5) => vec![
            vec![1, 1, 1, 1, 1],
            vec![0, 1, 1, 1, 0],
            vec![0, 0, 1, 0, 0],
        ],
        (Family::B, 5) => vec![
            vec![1, 2, 2, 2, 2],
            vec![0, 0, 1, 2, 2],
            vec![1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 1],
        ],
        (Family::B, 6) => vec![
            vec![1, 2, 2, 2, 2, 2],
            vec![0, 0, 1, 2, 2, 2],
            vec![0, 0, 0, 0, 1, 2],
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
        ],
        (Family::C, 5) => vec![
            vec![2, 2, 2, 2, 1],
            vec![0, 2, 2, 2, 1],
            vec![0, 0, 2, 2, 1],
            vec![0, 0, 0, 2, 1],
            vec![0, 0, 0, 0, 1],
        ],
        (Family::D, 6) => vec![
            vec![1, 2, 2, 2, 1, 1],
            vec![0, 0, 1, 2, 1, 1],
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 1],
        ],
        (Family::D, 7) => vec![
            vec![1, 2, 2, 2, 2, 1, 1],
            vec![0, 0, 1, 2, 2, 1, 1],
            vec![0, 0, 0, 0, 1, 1, 1],
            vec![1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0],
        ],
        (Family::E, 6) => vec![
            vec![1, 2, 2, 3, 2, 1],
            vec![1, 0, 1, 1, 1, 1],
            vec![0, 0, 1, 1, 1, 0],
            vec![0, 0, 0, 1, 0, 0],
        ],
        (Family::E, 7) => vec![
            vec![2, 2, 3, 4, 3, 2, 1],
            vec![0, 1, 1, 2, 2, 2, 1],
            vec![0, 1, 1, 2, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1],
            vec![0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0],
        ],
        (Family::E, 8) => vec![
            vec![2, 3, 4, 6, 5, 4, 3, 2],
            vec![2, 2, 3, 4, 3, 2, 1, 0],
            vec![0, 1, 1, 2, 2, 2, 1, 0],
            vec![0, 1, 1, 2, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 0],
            vec![0, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0, 0],
        ],
        (Family::F, 4) => vec![
            vec![2, 3, 4, 2],
            vec![0, 1, 2, 2],
            vec![0, 1, 2, 0],
            vec![0, 1, 0, 0],
        ],
        (Family::G, 2) => vec![vec![2, 3], vec![0, 1]],
        _ => return None,
    };
    Some(v)
}

pub fn cascade_checks() -> Vec<Check> {
    let mut out = Vec::new();
    // k per type against the closed forms, rank <= 12
    let mut bad = Vec::new();
    for t in all_types(12) {
        if k_g(t) != k_g_closed_form(t) {
            bad.push(t.to_string());
        }
    }
    out.push(Check::of(
        "cascade.k_per_type",
        bad.is_empty(),
        if bad.is_empty() {
            "cascade size matches the closed form for every type of rank <= 12".to_string()
        } else {
            format!("mismatches: {bad:?}")
        },
    ));
    // golden epsilon tables
    let mut bad = Vec::new();
    for t in [
        SimpleType::new(Family::A, 5).unwrap(),
        SimpleType::new(Family::B, 5).unwrap(),
        SimpleType::new(Family::B, 6).unwrap(),
        SimpleType::new(Family::C, 5).unwrap(),
        SimpleType::new(Family::D, 6).unwrap(),
        SimpleType::new(Family::D, 7).unwrap(),
        SimpleType::new(Family::E, 6).unwrap(),
        SimpleType::new(Family::E, 7).unwrap(),
        SimpleType::new(Family::E, 8).unwrap(),
        SimpleType::new(Family::F, 4).unwrap(),
        SimpleType::new(Family::G, 2).unwrap(),
    ] {
        let rs = RootSystem::build(t);
        let c = kostant_cascade(&rs, &rs.full_base());
        let got: BTreeSet<Vec<i64>> = c.elements.iter().map(|e| e.epsilon.coeffs.clone()).collect();
        let want: BTreeSet<Vec<i64>> = epsilon_fixture(t).unwrap().into_iter().collect();
        if got != want {
            bad.push(format!("{t}: derived {got:?} vs fixture {want:?}"));
        }
    }
    out.push(Check::of(
        "cascade.epsilon_tables",
        bad.is_empty(),
        if bad.is_empty() {
            "cascade roots match the golden tables (set equality)".to_string()
        } else {
            bad.join("; ")
        },
    ));
    out.push(Check::warn(
        "cascade.g2_fixture_note",
        "the published G2 row lists (1,2) as the second cascade root; (1,2) is \
         not strongly orthogonal to (2,3) and is not the highest root of any \
         base subset, so the fixture pins the recursion value (0,1)",
    ));
    // partition and strong orthogonality, every type rank <= 12
    let mut bad = Vec::new();
    for t in all_types(12) {
        let rs = RootSystem::build(t);
        let c = kostant_cascade(&rs, &rs.full_base());
        let total: usize = c.elements.iter().map(|e| e.gamma.len()).sum();
        if total != rs.num_positive() {
            bad.push(format!("{t}: gamma partition"));
        }
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let a = &c.elements[i].epsilon;
                let b = &c.elements[j].epsilon;
                if rs.is_root(&a.add(b)) || rs.is_root(&a.sub(b)) {
                    bad.push(format!("{t}: strong orthogonality"));
                }
            }
        }
    }
    out.push(Check::of(
        "cascade.partition_orthogonality",
        bad.is_empty(),
        if bad.is_empty() {
            "gamma sets partition the positive roots; cascade roots pairwise strongly orthogonal"
                .to_string()
        } else {
            bad.join("; ")
        },
    ));
    out
}

// -------------------------------------------------------------- chevalley

pub fn chevalley_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let mut jac = Vec::new();
    let mut mag = Vec::new();
    for t in all_types(8) {
        let sc = StructureConstants::new(RootSystem::build(t));
        if sc.jacobi_violations() != 0 {
            jac.push(t.to_string());
        }
        if sc.n_magnitude_violations() != 0 {
            mag.push(t.to_string());
        }
    }
    out.push(Check::of(
        "chevalley.jacobi",
        jac.is_empty(),
        if jac.is_empty() {
            "zero Jacobi violations over all basis triples, every type of rank <= 8".to_string()
        } else {
            format!("violations in {jac:?}")
        },
    ));
    out.push(Check::of(
        "chevalley.n_magnitude",
        mag.is_empty(),
        if mag.is_empty() {
            "|N| = p+1 for every special pair, every type of rank <= 8".to_string()
        } else {
            format!("violations in {mag:?}")
        },
    ));
    out
}

// --------------------------------------------------------------- realform

pub fn realform_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let reg = match Registry::load() {
        Ok(r) => r,
        Err(e) => {
            out.push(Check::fail("realform.registry", format!("{e}")));
            return out;
        }
    };
    out.push(Check::pass(
        "realform.registry",
        format!("{} entries load and pass the involution contracts", reg.records.len()),
    ));
    let mut columns = Vec::new();
    let mut kcomp = Vec::new();
    let mut ineq = Vec::new();
    let mut star_eq = Vec::new();
    let mut eq_iff_star = Vec::new();
    let mut cayley = Vec::new();
    let mut strongest = Vec::new();
    let mut gamma1 = Vec::new();
    for rec in &reg.records {
        let a = match analyze(rec) {
            Ok(a) => a,
            Err(e) => {
                out.push(Check::fail("realform.analyze", format!("{e}")));
                continue;
            }
        };
        for m in realform::validate_against_declared(&a) {
            columns.push(format!("{}: {m}", rec.name));
        }
        if a.analysis.star {
            if let Err(e) = realform::kcomp_count(&a) {
                kcomp.push(format!("{}: {e}", rec.name));
            }
        }
        match realform::verify_calcul_k(&a) {
            Err(e) => ineq.push(e),
            Ok(rep) => {
                if rep.star && !rep.equality {
                    star_eq.push(format!("{}: (*) holds but {} > {}", rec.name, rep.lhs, rep.rhs));
                }
                if !rep.equality_matches_star {
                    eq_iff_star.push(format!(
                        "{}: dim a - #K_reel = {} = rg g - rg k but condition (*) fails",
                        rec.name, rep.lhs
                    ));
                }
            }
        }
        // Cayley descent: #K_reel steps, invariant preserved
        let mut st = realform::CayleyState::new(&a);
        let invariant = st.dim_a - st.kreel.len() as i64;
        let steps = st.kreel.len();
        let mut ok = true;
        for _ in 0..steps {
            let k = st.kreel[0];
            match st.reduce(k) {
                Ok(next) => {
                    if next.dim_a - next.kreel.len() as i64 != invariant {
                        ok = false;
                    }
                    st = next;
                }
                Err(_) => ok = false,
            }
        }
        if !(ok && st.kreel.is_empty()) {
            cayley.push(rec.name.clone());
        }
        if a.analysis.flags.strongest != rec.declared.strongest {
            strongest.push(format!(
                "{}: derived {} vs declared {}",
                rec.name,
                a.analysis.flags.strongest.label(),
                rec.declared.strongest.label()
            ));
        }
        let g1_empty = a.analysis.sum_gamma1() == 0;
        if g1_empty != a.analysis.star {
            gamma1.push(rec.name.clone());
        }
    }
    let summary = |v: &Vec<String>, good: &str| -> String {
        if v.is_empty() {
            good.to_string()
        } else {
            v.join("; ")
        }
    };
    out.push(Check::of(
        "realform.columns",
        columns.is_empty(),
        summary(
            &columns,
            "derived (m0 type, dim a, k_m, k_g, rg g, strongest) match the declared columns on every entry",
        ),
    ));
    out.push(Check::of(
        "realform.kcomp_formula",
        kcomp.is_empty(),
        summary(
            &kcomp,
            "#K_comp = k_g - k_m + rg g - rg k - dim a on every entry with condition (*)",
        ),
    ));
    // worked instances of the count
    let worked = [("complex-C3", 6usize), ("so(5,5)", 0), ("so(3,5)", 2)];
    let mut bad = Vec::new();
    for (name, expect) in worked {
        let a = analyze(reg.get(name).unwrap()).unwrap();
        match realform::kcomp_count(&a) {
            Ok(v) if v == expect => {}
            Ok(v) => bad.push(format!("{name}: {v} != {expect}")),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    out.push(Check::of(
        "realform.kcomp_instances",
        bad.is_empty(),
        summary(
            &bad,
            "worked instances: complex doubles 2k, so(2p+1,2p+1) -> 0, so(2p+1,2p+3) -> 2",
        ),
    ));
    out.push(Check::of(
        "realform.descent_inequality",
        ineq.is_empty(),
        summary(
            &ineq
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>(),
            "dim a - #K_reel >= rg g - rg k on every entry",
        ),
    ));
    out.push(Check::of(
        "realform.descent_star_equality",
        star_eq.is_empty(),
        summary(
            &star_eq,
            "condition (*) forces equality in the descent relation on every entry",
        ),
    ));
    // The converse direction is false: entries whose maximally noncompact
    // Cartan is also maximally compact (sl(n,H), so(1,7), EIV) reach
    // equality with condition (*) failing. Reported as a failure because
    // the acceptance contract demands the equivalence; the counterexample
    // list is exact.
    out.push(Check::of(
        "realform.descent_equality_iff_star",
        eq_iff_star.is_empty(),
        summary(
            &eq_iff_star,
            "equality in the descent relation occurs exactly under condition (*)",
        ),
    ));
    if !eq_iff_star.is_empty() {
        out.push(Check::warn(
            "realform.descent_equality_note",
            "equality without condition (*) happens exactly when the maximally \
             noncompact Cartan is also maximally compact (no real roots, so \
             #K_reel = 0 while dim a already equals rg g - rg k); the descent \
             relation itself only claims the inequality plus equality under (*)",
        ));
    }
    out.push(Check::of(
        "realform.cayley_steps",
        cayley.is_empty(),
        summary(
            &cayley,
            "the Cayley descent runs exactly #K_reel steps preserving dim a - #K_reel",
        ),
    ));
    out.push(Check::of(
        "realform.strongest",
        strongest.is_empty(),
        summary(
            &strongest,
            "strongest-property column reproduced on every entry",
        ),
    ));
    out.push(Check::of(
        "realform.gamma1_iff_star",
        gamma1.is_empty(),
        summary(
            &gamma1,
            "all Gamma_1 empty exactly on the entries with condition (*)",
        ),
    ));
    out
}

// -------------------------------------------------------------- parabolic

pub fn parabolic_checks(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    // fixed diagrams: A and C all-black, plus the exceptional rows
    let mut bad = Vec::new();
    for l in 1..=8 {
        let row = paraquasi::table_row(SimpleType::new(Family::A, l).unwrap());
        if !row.iter().all(|&v| v) {
            bad.push(format!("A{l}"));
        }
    }
    for l in 3..=8 {
        let row = paraquasi::table_row(SimpleType::new(Family::C, l).unwrap());
        if !row.iter().all(|&v| v) {
            bad.push(format!("C{l}"));
        }
    }
    let fixtures: [(SimpleType, Vec<bool>); 5] = [
        (
            SimpleType::new(Family::E, 6).unwrap(),
            vec![true, false, true, true, true, true],
        ),
        (
            SimpleType::new(Family::E, 7).unwrap(),
            vec![false, true, true, false, true, false, true],
        ),
        (
            SimpleType::new(Family::E, 8).unwrap(),
            vec![false, true, true, false, true, false, true, false],
        ),
        (
            SimpleType::new(Family::F, 4).unwrap(),
            vec![false, true, true, true],
        ),
        (SimpleType::new(Family::G, 2).unwrap(), vec![false, true]),
    ];
    for (t, expect) in fixtures {
        if paraquasi::table_row(t) != expect {
            bad.push(t.to_string());
        }
    }
    out.push(Check::of(
        "parabolic.table_fixed",
        bad.is_empty(),
        if bad.is_empty() {
            "rank-one parabolic verdicts match the fixed diagrams (A, C, E6, E7, E8, F4, G2)"
                .to_string()
        } else {
            format!("mismatches: {bad:?}")
        },
    ));
    // B/D rows: emit and self-check against the partition classes
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (f, lo) in [(Family::B, 2usize), (Family::D, 4usize)] {
        for l in lo..=8 {
            let t = SimpleType::new(f, l).unwrap();
            let rs = RootSystem::build(t);
            let c = kostant_cascade(&rs, &rs.full_base());
            let part = paraquasi::partition_roots(&rs, &c);
            let row = paraquasi::table_row(t);
            for (i, &v) in row.iter().enumerate() {
                let cl = part.class_of[&rs.simple_root(i)];
                let expect = matches!(
                    cl,
                    PartClass::D1 | PartClass::D2 | PartClass::D3Prime
                );
                if v != expect {
                    bad.push(format!("{t} beta{}", i + 1));
                }
            }
            let marked: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(_, &v)| v)
                .map(|(i, _)| i + 1)
                .collect();
            rows.push(format!("{t}: quasi-reductive at {marked:?}"));
        }
    }
    out.push(Check::of(
        "parabolic.bd_rows",
        bad.is_empty(),
        if bad.is_empty() {
            format!("B/D verdicts self-consistent; {}", rows.join("; "))
        } else {
            format!("inconsistent: {bad:?}")
        },
    ));
    // cond_root invariants, exhaustive for every type of rank <= 8
    let mut bad = Vec::new();
    for t in all_types(8) {
        let rs = RootSystem::build(t);
        let c = kostant_cascade(&rs, &rs.full_base());
        let part = paraquasi::partition_roots(&rs, &c);
        if paraquasi::cond_root_i_violations(&rs, &c) != 0 {
            bad.push(format!("{t} (i)"));
        }
        if paraquasi::cond_root_ii_violations(&rs, &c, &part) != 0 {
            bad.push(format!("{t} (ii)"));
        }
        if paraquasi::cond_root_iii_violations(&rs, &c, &part) != 0 {
            bad.push(format!("{t} (iii)"));
        }
    }
    out.push(Check::of(
        "parabolic.cond_root",
        bad.is_empty(),
        if bad.is_empty() {
            "root-difference conditions (i)-(iii) hold exhaustively, rank <= 8".to_string()
        } else {
            format!("violations: {bad:?}")
        },
    ));
    // which types have simple roots in the special half-difference class
    let mut bad = Vec::new();
    for t in all_types(9) {
        let rs = RootSystem::build(t);
        let c = kostant_cascade(&rs, &rs.full_base());
        let part = paraquasi::partition_roots(&rs, &c);
        let nonempty = (0..t.rank)
            .any(|i| part.class_of[&rs.simple_root(i)] == PartClass::D3Prime);
        let expect = matches!(
            (t.family, t.rank % 2),
            (Family::F, _) | (Family::C, _) | (Family::B, 0)
        );
        if nonempty != expect {
            bad.push(t.to_string());
        }
    }
    out.push(Check::of(
        "parabolic.d3prime_types",
        bad.is_empty(),
        if bad.is_empty() {
            "simple roots of half-difference shape occur exactly for F4, C_l, and B_l with l even"
                .to_string()
        } else {
            format!("mismatches: {bad:?}")
        },
    ));
    out.push(Check::warn(
        "parabolic.b_parity_note",
        "the published statement says B_l with l odd carries the simple \
         half-difference root; the recursion gives l even (B2 already has \
         beta2 = ((beta1+2beta2) - beta1)/2, while for odd l the candidate \
         beta_l is itself a cascade root), and the published witness sets \
         {beta_{l-1},beta_l}, {beta_l} only exist in the cascade for l even",
    ));
    // independent cross-check through the index oracle
    let cache = ScCache::new();
    let mut bad = Vec::new();
    for t in [
        SimpleType::new(Family::A, 1).unwrap(),
        SimpleType::new(Family::A, 2).unwrap(),
        SimpleType::new(Family::A, 3).unwrap(),
        SimpleType::new(Family::B, 2).unwrap(),
        SimpleType::new(Family::C, 3).unwrap(),
        SimpleType::new(Family::G, 2).unwrap(),
    ] {
        let sc = cache.get(t);
        let row = paraquasi::table_row(t);
        for (i, &expect) in row.iter().enumerate() {
            match paraquasi::direct_parabolic_check(sc.clone(), i, seed) {
                Ok(got) if got == expect => {}
                Ok(got) => bad.push(format!("{t} beta{}: direct {got} vs criterion {expect}", i + 1)),
                Err(e) => bad.push(format!("{t} beta{}: {e}", i + 1)),
            }
        }
    }
    out.push(Check::of(
        "parabolic.direct_cross_check",
        bad.is_empty(),
        if bad.is_empty() {
            "direct reductive-functional search agrees with the criterion on A1-A3, B2, C3, G2"
                .to_string()
        } else {
            bad.join("; ")
        },
    ));
    out
}

// ------------------------------------------------------------------ index

pub fn index_checks(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let reg = match Registry::load() {
        Ok(r) => r,
        Err(e) => {
            out.push(Check::fail("index.registry", format!("{e}")));
            return out;
        }
    };
    let cache = ScCache::new();
    let mut formule = Vec::new();
    let mut stab = Vec::new();
    let mut stable = Vec::new();
    let mut skipped = 0usize;
    for rec in &reg.records {
        let a = analyze(rec).unwrap();
        if a.analysis.b_is_zero {
            skipped += 1;
            continue;
        }
        match indexcalc::verify_formule_indice(&a, &cache, seed) {
            Err(e) => formule.push(format!("{}: {e}", rec.name)),
            Ok(rep) => {
                for (what, ok) in &rep.verdicts {
                    if !ok {
                        match what.as_str() {
                            s if s.starts_with("stab") || s.starts_with("phi_u") => {
                                stab.push(format!("{}: {what}", rec.name))
                            }
                            s if s.starts_with("stable") => {
                                stable.push(format!("{}: {what}", rec.name))
                            }
                            _ => formule.push(format!("{}: {what}", rec.name)),
                        }
                    }
                }
                // quasi-reductivity of b must match (B)
                let is_b = a.analysis.flags.b;
                if rep.reductive != is_b {
                    stable.push(format!(
                        "{}: reductive verdict {} vs property (B) {}",
                        rec.name, rep.reductive, is_b
                    ));
                }
            }
        }
    }
    let summary = |v: &Vec<String>, good: String| -> String {
        if v.is_empty() {
            good
        } else {
            v.join("; ")
        }
    };
    out.push(Check::of(
        "index.formule_indice",
        formule.is_empty(),
        summary(
            &formule,
            format!(
                "ind b >= rg g - rg k with equality iff condition (*), all non-compact entries ({skipped} compact entries have b = 0)"
            ),
        ),
    ));
    out.push(Check::of(
        "index.stab_u",
        stab.is_empty(),
        summary(
            &stab,
            "phi_u is regular and dim b_phi_u matches the stabilizer dimension formula on every entry".to_string(),
        ),
    ));
    out.push(Check::of(
        "index.stability_iff_kcomp",
        stable.is_empty(),
        summary(
            &stable,
            "phi_u stable iff K_comp empty iff property (B); quasi-reductive iff (B)".to_string(),
        ),
    ));
    out.push(Check::warn(
        "index.rq_stab_note",
        "the published display for [b, b_phi_u] ∩ b_phi_u lists only the \
         X_eps − X_theta-eps differences; the intersection also contains the \
         Gamma_1 root vectors whenever condition (*) fails (each Gamma_1 root \
         is nonzero on a, so [a, X_alpha] reaches it) — the check compares \
         against the corrected span, which is verified on every entry",
    ));
    // the open-orbit tension from the introduction of the source text
    for name in ["su(1,2)", "su(1,4)", "su(1,6)"] {
        let a = analyze(reg.get(name).unwrap()).unwrap();
        let rep = indexcalc::verify_formule_indice(&a, &cache, seed).unwrap();
        out.push(Check::warn(
            "index.su_open_orbit_tension",
            format!(
                "{name}: computed ind b = {} (open coadjoint orbit, matching the declared (C) row); \
                 the introduction of the source text cites an opposite claim (ind b > 0) for \
                 sl(2p,1) — the computation sides with the (C) row",
                rep.index_b
            ),
        ));
    }
    // minimal parabolics: reductive functionals exist at small entries
    let mut bad = Vec::new();
    for name in ["su(1,2)", "so(2,3)", "sp(1,1)"] {
        let a = analyze(reg.get(name).unwrap()).unwrap();
        match minimal_parabolic_reductive(&a, &cache, seed) {
            Ok(true) => {}
            Ok(false) => bad.push(format!("{name}: sampled regular functional not reductive")),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    out.push(Check::of(
        "index.minimal_parabolic",
        bad.is_empty(),
        if bad.is_empty() {
            "minimal parabolics pass the reductive-functional test (su(1,2), so(2,3), sp(1,1))"
                .to_string()
        } else {
            bad.join("; ")
        },
    ));
    // Lemme-style extensional check of the bracket condition space
    let mut bad = Vec::new();
    for rec in &reg.records {
        if rec.simple_type.rank > 6 || rec.kind == Kind::Compact {
            continue;
        }
        let a = analyze(rec).unwrap();
        let b = match indexcalc::build_b(&a, &cache) {
            Ok(b) => b,
            Err(_) => continue,
        };
        let (kernel, explicit) = indexcalc::equivalence_spaces(&a, &b);
        let dim_ok = kernel.len() == linalg::span_dim(&explicit);
        let contained = explicit.iter().all(|v| linalg::in_span(&kernel, v))
            && kernel.iter().all(|v| linalg::in_span(&explicit, v));
        if !(dim_ok && contained) {
            bad.push(rec.name.clone());
        }
    }
    out.push(Check::of(
        "index.equivalence_space",
        bad.is_empty(),
        if bad.is_empty() {
            "{x in b : [x,u] in n+m} equals its explicit parametrization on every entry of rank <= 6"
                .to_string()
        } else {
            format!("mismatches: {bad:?}")
        },
    ));
    out
}

/// Sample regular functionals on `m ⊕ a ⊕ n` until one is regular, then
/// test reductivity.
pub fn minimal_parabolic_reductive(
    a: &realform::AnalyzedForm,
    cache: &ScCache,
    seed: u64,
) -> Result<bool, indexcalc::IndexError> {
    use crate::linalg::rat;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let q = indexcalc::build_minimal_parabolic(a, cache)?;
    let comp = indexcalc::index(&q, seed)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xabcdef);
    for _ in 0..24 {
        let phi: Vec<crate::linalg::Rat> = (0..q.dim())
            .map(|_| rat(rng.gen_range(1..=65536i64)))
            .collect();
        match indexcalc::is_reductive_form(&q, &phi, comp.index) {
            Ok(v) => return Ok(v),
            Err(indexcalc::IndexError::NotRegular { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(indexcalc::IndexError::NoRegularSample(24))
}

/// Strongest-property comparison rows for the whole registry (used by
/// the survey example and the realform CLI).
pub fn strongest_summary() -> Vec<(String, Strongest, Strongest)> {
    let reg = Registry::load().unwrap();
    reg.records
        .iter()
        .map(|rec| {
            let a = analyze(rec).unwrap();
            (
                rec.name.clone(),
                a.analysis.flags.strongest,
                rec.declared.strongest,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cascade_scope_passes() {
        let checks = cascade_checks();
        for c in &checks {
            assert_ne!(c.status, Status::Fail, "{}: {}", c.id, c.detail);
        }
        // the G2 note is always present
        assert!(checks.iter().any(|c| c.id == "cascade.g2_fixture_note"));
    }

    #[test]
    fn parabolic_scope_passes() {
        let checks = parabolic_checks(99);
        for c in &checks {
            assert_ne!(c.status, Status::Fail, "{}: {}", c.id, c.detail);
        }
    }
}
