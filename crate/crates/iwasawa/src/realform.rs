//! Real forms through an involution of the root lattice.
//!
//! Each registry entry carries Satake data: the black subset `Π′` of
//! the base (simple roots of the centralizer `m`) and a diagram
//! involution `σ`. The Cartan involution acts on roots as
//! `θ = −w₀(Π′) ∘ σ`; realifications of complex algebras instead use a
//! doubled root system with the swap `θ(α, side) = (−α, other side)`.
//! Everything downstream — the split of the cascade into `K′/K″`, real
//! and complex-paired cascade roots, condition (*), the Cayley descent
//! and the (A)/(B)/(C) classification — is derived from that action and
//! cross-checked against the declared reference columns.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::cascade::{gamma1, kostant_cascade, Cascade};
use crate::linalg::{self, rat, Rat};
use crate::rootsys::{Family, Root, RootSystem, SimpleType};
use crate::weyl;
use num::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub const REGISTRY_TEXT: &str = include_str!("registry.txt");

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Kind {
    Form,
    Compact,
    ComplexDouble,
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum Strongest {
    Nothing,
    A,
    B,
    C,
}

impl Strongest {
    pub fn parse(s: &str) -> Option<Strongest> {
        match s {
            "rien" => Some(Strongest::Nothing),
            "A" => Some(Strongest::A),
            "B" => Some(Strongest::B),
            "C" => Some(Strongest::C),
            _ => None,
        }
    }
    pub fn label(&self) -> &'static str {
        match self {
            Strongest::Nothing => "rien",
            Strongest::A => "(A)",
            Strongest::B => "(B)",
            Strongest::C => "(C)",
        }
    }
}

#[derive(Clone, Debug)]
pub struct InvolutionSpec {
    pub black: BTreeSet<usize>,
    /// Permutation of the base, `sigma[i]` = image of node `i`.
    pub sigma: Vec<usize>,
    pub complex_double: bool,
}

#[derive(Clone, Debug)]
pub struct Declared {
    pub rg_g: usize,
    pub k0_name: String,
    pub rg_k: usize,
    pub dim_a: usize,
    pub k_g: usize,
    pub m0_name: String,
    /// Canonical simple components of the semisimple part of `m0`.
    pub m0_type: Vec<String>,
    pub k_m: usize,
    pub strongest: Strongest,
}

#[derive(Clone, Debug)]
pub struct RealFormRecord {
    pub name: String,
    pub kind: Kind,
    /// The simple type of the complexification; for `ComplexDouble`
    /// records the type of the simple factor (the complexification is
    /// the doubled system).
    pub simple_type: SimpleType,
    pub involution: InvolutionSpec,
    pub declared: Declared,
}

#[derive(Error, Debug)]
pub enum RegistryError {
    #[error("registry line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("registry entry {name}: {msg}")]
    Contract { name: String, msg: String },
    #[error("unknown real form {name}; available: {available}")]
    UnknownName { name: String, available: String },
    #[error("property (P) fails for {name} at cascade element {element}")]
    PropertyP { name: String, element: usize },
    #[error("{0}")]
    Root(#[from] crate::rootsys::RootError),
}

pub struct Registry {
    pub records: Vec<RealFormRecord>,
    by_name: HashMap<String, usize>,
}

impl Registry {
    /// Parse and contract-check the embedded registry.
    pub fn load() -> Result<Registry, RegistryError> {
        Self::parse(REGISTRY_TEXT)
    }

    pub fn parse(text: &str) -> Result<Registry, RegistryError> {
        let mut records = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let rec = parse_record(line).map_err(|msg| RegistryError::Parse {
                line: lineno + 1,
                msg,
            })?;
            check_contracts(&rec)?;
            records.push(rec);
        }
        let by_name = records
            .iter()
            .enumerate()
            .map(|(i, r)| (r.name.clone(), i))
            .collect();
        Ok(Registry { records, by_name })
    }

    pub fn get(&self, name: &str) -> Result<&RealFormRecord, RegistryError> {
        if let Some(&i) = self.by_name.get(name) {
            return Ok(&self.records[i]);
        }
        // su(q,p) etc. name the same algebra as su(p,q)
        if let Some(swapped) = swap_signature(name) {
            if let Some(&i) = self.by_name.get(&swapped) {
                return Ok(&self.records[i]);
            }
        }
        Err(RegistryError::UnknownName {
            name: name.to_string(),
            available: self
                .records
                .iter()
                .map(|r| r.name.as_str())
                .collect::<Vec<_>>()
                .join(", "),
        })
    }

    pub fn names(&self) -> Vec<&str> {
        self.records.iter().map(|r| r.name.as_str()).collect()
    }
}

/// `su(2,1)` → `su(1,2)` and friends.
fn swap_signature(name: &str) -> Option<String> {
    let open = name.find('(')?;
    let close = name.rfind(')')?;
    let head = &name[..open];
    let args = &name[open + 1..close];
    let (p, q) = args.split_once(',')?;
    let (p, q): (usize, usize) = (p.trim().parse().ok()?, q.trim().parse().ok()?);
    Some(format!("{head}({q},{p})"))
}

fn parse_record(line: &str) -> Result<RealFormRecord, String> {
    let parts: Vec<&str> = line.split('|').map(|s| s.trim()).collect();
    if parts.len() != 15 {
        return Err(format!("expected 15 fields, got {}", parts.len()));
    }
    let name = parts[0].to_string();
    let kind = match parts[1] {
        "form" => Kind::Form,
        "compact" => Kind::Compact,
        "complex" => Kind::ComplexDouble,
        other => return Err(format!("unknown kind {other}")),
    };
    let family = Family::parse(parts[2]).ok_or_else(|| format!("bad family {}", parts[2]))?;
    let rank: usize = parts[3].parse().map_err(|_| "bad rank".to_string())?;
    let simple_type = SimpleType::new(family, rank).map_err(|e| e.to_string())?;
    let black: BTreeSet<usize> = match parts[4] {
        "-" => BTreeSet::new(),
        "all" => (0..rank).collect(),
        s => s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map(|v| v - 1)
                    .map_err(|_| format!("bad black node {x}"))
            })
            .collect::<Result<_, _>>()?,
    };
    let sigma: Vec<usize> = match parts[5] {
        "id" => (0..rank).collect(),
        "opp" => opposition_involution(simple_type),
        s => {
            let mut sigma: Vec<usize> = (0..rank).collect();
            for pair in s.split(',') {
                let (a, b) = pair
                    .split_once(':')
                    .ok_or_else(|| format!("bad sigma pair {pair}"))?;
                let a: usize = a.trim().parse().map_err(|_| "bad sigma".to_string())?;
                let b: usize = b.trim().parse().map_err(|_| "bad sigma".to_string())?;
                sigma[a - 1] = b - 1;
                sigma[b - 1] = a - 1;
            }
            sigma
        }
    };
    let num = |i: usize| -> Result<usize, String> {
        parts[i]
            .parse::<usize>()
            .map_err(|_| format!("bad number in field {i}"))
    };
    let m0_type: Vec<String> = match parts[12] {
        "-" => vec![],
        s => s.split(',').map(|x| canonical_type_label(x.trim())).collect(),
    };
    let strongest =
        Strongest::parse(parts[14]).ok_or_else(|| format!("bad strongest {}", parts[14]))?;
    Ok(RealFormRecord {
        name,
        kind,
        simple_type,
        involution: InvolutionSpec {
            black,
            sigma,
            complex_double: kind == Kind::ComplexDouble,
        },
        declared: Declared {
            rg_g: num(6)?,
            k0_name: parts[7].to_string(),
            rg_k: num(8)?,
            dim_a: num(9)?,
            k_g: num(10)?,
            m0_name: parts[11].to_string(),
            m0_type,
            k_m: num(13)?,
            strongest,
        },
    })
}

/// The opposition involution `−w₀` of the full diagram.
fn opposition_involution(t: SimpleType) -> Vec<usize> {
    let rs = RootSystem::build(t);
    let base = rs.full_base();
    (0..t.rank)
        .map(|i| {
            let im = weyl::longest_element_on_root(&rs, &base, &rs.simple_root(i)).neg();
            im.support()
                .into_iter()
                .next()
                .expect("-w0 permutes the base")
        })
        .collect()
}

/// Canonical name of a simple-type label; collapses the small-rank
/// coincidences so derived and declared components compare equal.
pub fn canonical_type_label(s: &str) -> String {
    match s {
        "B1" | "C1" | "C2" | "D2" | "D3" => match s {
            "B1" | "C1" => "A1".to_string(),
            "C2" => "B2".to_string(),
            "D3" => "A3".to_string(),
            _ => "A1,A1".to_string(),
        },
        other => other.to_string(),
    }
}

/// The involution on the root lattice, `θ = −w₀(Π′) ∘ σ`.
#[derive(Clone, Debug)]
pub struct ThetaLattice {
    pub word: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl ThetaLattice {
    pub fn new(rs: &RootSystem, spec: &InvolutionSpec) -> ThetaLattice {
        ThetaLattice {
            word: weyl::longest_element_word(rs, &spec.black),
            sigma: spec.sigma.clone(),
        }
    }

    pub fn apply(&self, rs: &RootSystem, r: &Root) -> Root {
        let mut coeffs = vec![0i64; rs.rank()];
        for (i, &c) in r.coeffs.iter().enumerate() {
            coeffs[self.sigma[i]] = c;
        }
        let permuted = Root { coeffs };
        weyl::apply_word_root(rs, &self.word, &permuted).neg()
    }

    /// Matrix of `θ` on the Cartan in the coroot basis `H_i`
    /// (`H_α ↦ H_{θα}`), columns = images.
    pub fn cartan_matrix(&self, rs: &RootSystem) -> Vec<Vec<Rat>> {
        let l = rs.rank();
        let mut m = vec![vec![Rat::zero(); l]; l];
        for i in 0..l {
            let img = self.apply(rs, &rs.simple_root(i));
            let co = rs.coroot_coeffs(&img);
            for j in 0..l {
                m[j][i] = rat(co[j]);
            }
        }
        m
    }
}

fn check_contracts(rec: &RealFormRecord) -> Result<(), RegistryError> {
    let err = |msg: String| RegistryError::Contract {
        name: rec.name.clone(),
        msg,
    };
    let rs = RootSystem::build(rec.simple_type);
    let l = rs.rank();
    let spec = &rec.involution;
    // sigma is an involution preserving the Cartan matrix and the blacks
    for i in 0..l {
        if spec.sigma[spec.sigma[i]] != i {
            return Err(err("sigma is not an involution".into()));
        }
        for j in 0..l {
            if rs.cartan[spec.sigma[i]][spec.sigma[j]] != rs.cartan[i][j] {
                return Err(err("sigma does not preserve the Cartan matrix".into()));
            }
        }
    }
    if spec
        .black
        .iter()
        .any(|&b| !spec.black.contains(&spec.sigma[b]))
    {
        return Err(err("sigma does not fix the black set".into()));
    }
    if spec.complex_double {
        return Ok(()); // the swap involution needs no further checks
    }
    let theta = ThetaLattice::new(&rs, spec);
    for i in 0..l {
        let b = rs.simple_root(i);
        let t2 = theta.apply(&rs, &theta.apply(&rs, &b));
        if t2 != b {
            return Err(err(format!("theta^2 != id on node {}", i + 1)));
        }
    }
    for &b in &spec.black {
        let r = rs.simple_root(b);
        if theta.apply(&rs, &r) != r {
            return Err(err(format!(
                "theta does not fix black node {} (sigma must restrict to the \
                 opposition involution of the black subdiagram)",
                b + 1
            )));
        }
    }
    for a in &rs.positive_roots {
        let ta = theta.apply(&rs, a);
        let imaginary = ta == *a;
        let in_black = a.support().is_subset(&spec.black);
        if imaginary != in_black {
            return Err(err(format!(
                "fixed roots must be exactly those supported on the black set \
                 (violated by {:?})",
                a.coeffs
            )));
        }
        if !imaginary && ta.is_positive() {
            return Err(err(format!(
                "theta must send non-imaginary positive roots to negatives \
                 (violated by {:?})",
                a.coeffs
            )));
        }
    }
    Ok(())
}

/// A cascade element of the (possibly doubled) system: `side` is 0
/// except in the second factor of a realified complex algebra.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
pub struct CascadeItem {
    pub side: usize,
    pub idx: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyFlags {
    pub a: bool,
    pub b: bool,
    pub bprime: bool,
    pub c: bool,
    pub strongest: Strongest,
}

#[derive(Clone, Debug)]
pub struct CascadeAnalysis {
    pub b_is_zero: bool,
    pub kpp: Vec<CascadeItem>,
    pub kp: Vec<CascadeItem>,
    pub kreel: Vec<CascadeItem>,
    /// θ-pairs `(K⁺, θK⁺)`; the representative is the nest-outer member
    /// when the pair is nested, otherwise the lexicographically smaller
    /// node set.
    pub kcomp_pairs: Vec<(CascadeItem, CascadeItem)>,
    pub property_p: bool,
    pub star: bool,
    /// Derived `dim a` (the noncompact dimension of the Cartan).
    pub dim_a: usize,
    /// `Γ₁^K` per element of `K″`.
    pub gamma1: HashMap<CascadeItem, Vec<Root>>,
    pub flags: PropertyFlags,
}

impl CascadeAnalysis {
    pub fn kcomp_count(&self) -> usize {
        2 * self.kcomp_pairs.len()
    }
    pub fn sum_gamma1(&self) -> usize {
        self.gamma1.values().map(|v| v.len()).sum()
    }
}

/// A record together with everything derived from its involution.
pub struct AnalyzedForm {
    pub record: RealFormRecord,
    pub rs: Arc<RootSystem>,
    /// Cascade of the simple factor over the full base.
    pub cascade: Cascade,
    pub theta: Option<ThetaLattice>,
    pub analysis: CascadeAnalysis,
}

impl AnalyzedForm {
    pub fn sides(&self) -> usize {
        if self.record.kind == Kind::ComplexDouble {
            2
        } else {
            1
        }
    }

    pub fn epsilon_of(&self, item: CascadeItem) -> &Root {
        &self.cascade.elements[item.idx].epsilon
    }

    /// Positive imaginary roots `Δ₊′` (side 0; empty for doubles).
    pub fn imaginary_positive(&self) -> HashSet<Root> {
        match (&self.theta, self.record.kind) {
            (_, Kind::ComplexDouble) => HashSet::new(),
            (Some(th), _) => self
                .rs
                .positive_roots
                .iter()
                .filter(|a| th.apply(&self.rs, a) == **a)
                .cloned()
                .collect(),
            (None, _) => HashSet::new(),
        }
    }

    /// `Δ₊″` per side: positive roots whose root vector enters `b`.
    pub fn delta_pp(&self) -> Vec<(usize, Root)> {
        match self.record.kind {
            Kind::ComplexDouble => {
                let mut out = Vec::new();
                for side in 0..2 {
                    for r in &self.rs.positive_roots {
                        out.push((side, r.clone()));
                    }
                }
                out
            }
            _ => {
                let th = self.theta.as_ref().expect("forms carry a lattice involution");
                self.rs
                    .positive_roots
                    .iter()
                    .filter(|a| th.apply(&self.rs, a) != **a)
                    .map(|a| (0usize, a.clone()))
                    .collect()
            }
        }
    }

    /// Rational basis of `a` inside the Cartan of the complexification,
    /// coordinates over the coroots (both factors for doubles).
    pub fn a_basis(&self) -> Vec<Vec<Rat>> {
        let l = self.rs.rank();
        match self.record.kind {
            Kind::ComplexDouble => {
                // diagonal pairs (H_i, H_i)
                (0..l)
                    .map(|i| {
                        let mut v = vec![Rat::zero(); 2 * l];
                        v[i] = Rat::one();
                        v[l + i] = Rat::one();
                        v
                    })
                    .collect()
            }
            _ => {
                let th = self.theta.as_ref().unwrap();
                let m = th.cartan_matrix(&self.rs);
                // kernel of (theta_h + I)
                let mut a = m;
                for (i, row) in a.iter_mut().enumerate() {
                    let t = &row[i] + Rat::one();
                    row[i] = t;
                }
                linalg::kernel_basis(&a)
            }
        }
    }
}

/// Run the full cascade analysis of a registry record.
pub fn analyze(rec: &RealFormRecord) -> Result<AnalyzedForm, RegistryError> {
    let rs = Arc::new(RootSystem::build(rec.simple_type));
    let cascade = kostant_cascade(&rs, &rs.full_base());
    match rec.kind {
        Kind::ComplexDouble => analyze_double(rec, rs, cascade),
        _ => analyze_form(rec, rs, cascade),
    }
}

fn analyze_double(
    rec: &RealFormRecord,
    rs: Arc<RootSystem>,
    cascade: Cascade,
) -> Result<AnalyzedForm, RegistryError> {
    // θ(α, s) = (−α, 1−s): no fixed roots, every epsilon pairs with its
    // mirror on the other side.
    let k = cascade.len();
    let kpp: Vec<CascadeItem> = (0..2)
        .flat_map(|side| (0..k).map(move |idx| CascadeItem { side, idx }))
        .collect();
    let kcomp_pairs: Vec<(CascadeItem, CascadeItem)> = (0..k)
        .map(|idx| {
            (
                CascadeItem { side: 0, idx },
                CascadeItem { side: 1, idx },
            )
        })
        .collect();
    let flags = PropertyFlags {
        a: true,
        b: false,
        bprime: false,
        c: false,
        strongest: Strongest::A,
    };
    let analysis = CascadeAnalysis {
        b_is_zero: false,
        kpp,
        kp: vec![],
        kreel: vec![],
        kcomp_pairs,
        property_p: true,
        star: true,
        dim_a: rs.rank(),
        gamma1: HashMap::new(),
        flags,
    };
    Ok(AnalyzedForm {
        record: rec.clone(),
        rs,
        cascade,
        theta: None,
        analysis,
    })
}

fn analyze_form(
    rec: &RealFormRecord,
    rs: Arc<RootSystem>,
    cascade: Cascade,
) -> Result<AnalyzedForm, RegistryError> {
    let theta = ThetaLattice::new(&rs, &rec.involution);
    let k = cascade.len();
    let item = |idx: usize| CascadeItem { side: 0, idx };
    let theta_eps: Vec<Root> = (0..k)
        .map(|i| theta.apply(&rs, &cascade.elements[i].epsilon))
        .collect();
    let mut kpp = Vec::new();
    let mut kp = Vec::new();
    for i in 0..k {
        if theta_eps[i] == cascade.elements[i].epsilon {
            kp.push(item(i));
        } else {
            kpp.push(item(i));
        }
    }
    let mut kreel = Vec::new();
    let mut paired: HashMap<usize, usize> = HashMap::new();
    for &it in &kpp {
        let minus_theta = theta_eps[it.idx].neg();
        if minus_theta == cascade.elements[it.idx].epsilon {
            kreel.push(it);
        } else {
            let partner = cascade
                .element_of_epsilon(&minus_theta)
                .ok_or(RegistryError::PropertyP {
                    name: rec.name.clone(),
                    element: it.idx,
                })?;
            paired.insert(it.idx, partner);
        }
    }
    let mut kcomp_pairs = Vec::new();
    let mut seen: HashSet<usize> = HashSet::new();
    for (&a, &b) in paired.iter() {
        if seen.contains(&a) || seen.contains(&b) {
            continue;
        }
        // involution sanity
        if paired.get(&b) != Some(&a) {
            return Err(RegistryError::PropertyP {
                name: rec.name.clone(),
                element: a,
            });
        }
        seen.insert(a);
        seen.insert(b);
        let sa = &cascade.elements[a].subset;
        let sb = &cascade.elements[b].subset;
        let plus_first = if sb.is_subset(sa) {
            true
        } else if sa.is_subset(sb) {
            false
        } else {
            let va: Vec<usize> = sa.iter().copied().collect();
            let vb: Vec<usize> = sb.iter().copied().collect();
            va <= vb
        };
        let (p, q) = if plus_first { (a, b) } else { (b, a) };
        kcomp_pairs.push((item(p), item(q)));
    }
    kcomp_pairs.sort();
    // condition (*): the cascade of the imaginary subsystem coincides
    // with the imaginary part of the full cascade (as epsilon sets)
    let black_cascade = kostant_cascade(&rs, &rec.involution.black);
    let eps_black: BTreeSet<Vec<i64>> = black_cascade
        .elements
        .iter()
        .map(|e| e.epsilon.coeffs.clone())
        .collect();
    let eps_kp: BTreeSet<Vec<i64>> = kp
        .iter()
        .map(|it| cascade.elements[it.idx].epsilon.coeffs.clone())
        .collect();
    let star = eps_black == eps_kp;
    // derived noncompact dimension: rank of (θ − id) on h*
    let dim_a = {
        let l = rs.rank();
        let mut m = vec![vec![Rat::zero(); l]; l];
        for i in 0..l {
            let img = theta.apply(&rs, &rs.simple_root(i));
            for j in 0..l {
                m[j][i] = rat(img.coeffs[j]);
            }
        }
        for (i, row) in m.iter_mut().enumerate() {
            let t = &row[i] - Rat::one();
            row[i] = t;
        }
        linalg::rank_rat(m)
    };
    // Γ₁ per K″ element
    let imaginary: HashSet<Root> = rs
        .positive_roots
        .iter()
        .filter(|a| theta.apply(&rs, a) == **a)
        .cloned()
        .collect();
    let mut g1: HashMap<CascadeItem, Vec<Root>> = HashMap::new();
    for &it in &kpp {
        g1.insert(it, gamma1(&cascade.elements[it.idx], &imaginary));
    }
    let b_flag = kcomp_pairs.is_empty();
    let c_flag = star && rec.declared.rg_g == rec.declared.rg_k;
    let flags = PropertyFlags {
        a: star,
        b: b_flag,
        bprime: b_flag,
        c: c_flag,
        strongest: if c_flag {
            Strongest::C
        } else if b_flag {
            Strongest::B
        } else if star {
            Strongest::A
        } else {
            Strongest::Nothing
        },
    };
    let analysis = CascadeAnalysis {
        b_is_zero: rec.kind == Kind::Compact,
        kpp,
        kp,
        kreel,
        kcomp_pairs,
        property_p: true,
        star,
        dim_a,
        gamma1: g1,
        flags,
    };
    Ok(AnalyzedForm {
        record: rec.clone(),
        rs,
        cascade,
        theta: Some(theta),
        analysis,
    })
}

/// `#K_comp` by the closed formula, valid under condition (*); checked
/// against the direct count.
pub fn kcomp_count(a: &AnalyzedForm) -> Result<usize, String> {
    if !a.analysis.star {
        return Err("formula requires condition (*)".to_string());
    }
    let derived_kg = a.sides() * a.cascade.len();
    let derived_km = derived_k_m(a);
    let rg_g = a.sides() * a.rs.rank();
    let rg_k = a.record.declared.rg_k;
    let value =
        derived_kg as i64 - derived_km as i64 + rg_g as i64 - rg_k as i64 - a.analysis.dim_a as i64;
    let counted = a.analysis.kcomp_count() as i64;
    if value != counted {
        return Err(format!(
            "formula value {value} disagrees with the counted #K_comp {counted}"
        ));
    }
    Ok(value as usize)
}

/// The (A)/(B)/(B′)/(C) flags with their strongest representative;
/// already consistent with the implication chain C ⟹ B ⟹ A.
pub fn classify_properties(a: &AnalyzedForm) -> &PropertyFlags {
    &a.analysis.flags
}

/// `k_m = #K(Π′)`, derived.
pub fn derived_k_m(a: &AnalyzedForm) -> usize {
    match a.record.kind {
        Kind::ComplexDouble => 0,
        _ => kostant_cascade(&a.rs, &a.record.involution.black).len(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CalculKReport {
    pub lhs: i64,
    pub rhs: i64,
    pub inequality_holds: bool,
    pub equality: bool,
    pub star: bool,
    pub equality_matches_star: bool,
}

/// Both sides of the Cayley-descent relation
/// `dim a − #K_réel ≥ rg g − rg k` (equality under condition (*)).
pub fn verify_calcul_k(a: &AnalyzedForm) -> Result<CalculKReport, String> {
    let lhs = a.analysis.dim_a as i64 - a.analysis.kreel.len() as i64;
    let rhs = a.sides() as i64 * a.rs.rank() as i64 - a.record.declared.rg_k as i64;
    let inequality_holds = lhs >= rhs;
    if !inequality_holds {
        return Err(format!(
            "{}: dim a − #K_réel = {lhs} < rg g − rg k = {rhs}",
            a.record.name
        ));
    }
    let equality = lhs == rhs;
    Ok(CalculKReport {
        lhs,
        rhs,
        inequality_holds,
        equality,
        star: a.analysis.star,
        equality_matches_star: equality == a.analysis.star,
    })
}

/// Combinatorial state of the Cayley descent `d_{ε_K}`.
#[derive(Clone, Debug)]
pub struct CayleyState {
    pub dim_a: i64,
    pub kpp: Vec<CascadeItem>,
    pub kp: Vec<CascadeItem>,
    pub kreel: Vec<CascadeItem>,
    pub kcomp_pairs: Vec<(CascadeItem, CascadeItem)>,
    pub property_p: bool,
    pub star: bool,
}

impl CayleyState {
    pub fn new(a: &AnalyzedForm) -> CayleyState {
        CayleyState {
            dim_a: a.analysis.dim_a as i64,
            kpp: a.analysis.kpp.clone(),
            kp: a.analysis.kp.clone(),
            kreel: a.analysis.kreel.clone(),
            kcomp_pairs: a.analysis.kcomp_pairs.clone(),
            property_p: a.analysis.property_p,
            star: a.analysis.star,
        }
    }

    /// One Cayley step along a real cascade root: `K″` loses `K`, `K′`
    /// gains its (now imaginary) transform, `dim a` drops by one.
    pub fn reduce(&self, k: CascadeItem) -> Result<CayleyState, String> {
        if !self.kreel.contains(&k) {
            return Err("cayley step requires a real cascade root".to_string());
        }
        let mut next = self.clone();
        next.dim_a -= 1;
        next.kpp.retain(|&x| x != k);
        next.kreel.retain(|&x| x != k);
        next.kp.push(k);
        Ok(next)
    }
}

/// Serializable view of an analysis (the JSON export surface).
#[derive(Serialize)]
pub struct AnalysisJson {
    pub name: String,
    pub b_is_zero: bool,
    pub kpp: Vec<ItemJson>,
    pub kp: Vec<ItemJson>,
    pub kreel: Vec<ItemJson>,
    pub kcomp_pairs: Vec<(ItemJson, ItemJson)>,
    pub property_p: bool,
    pub star: bool,
    pub dim_a: usize,
    pub gamma1_sizes: Vec<(ItemJson, usize)>,
    pub properties: PropertyFlags,
}

#[derive(Serialize)]
pub struct ItemJson {
    pub side: usize,
    pub nodes: Vec<usize>,
    pub epsilon: Vec<i64>,
}

pub fn analysis_json(a: &AnalyzedForm) -> AnalysisJson {
    let item = |it: &CascadeItem| ItemJson {
        side: it.side,
        nodes: a.cascade.elements[it.idx]
            .subset
            .iter()
            .map(|&n| n + 1)
            .collect(),
        epsilon: a.cascade.elements[it.idx].epsilon.coeffs.clone(),
    };
    let mut gamma1_sizes: Vec<(ItemJson, usize)> = a
        .analysis
        .gamma1
        .iter()
        .map(|(k, v)| (item(k), v.len()))
        .collect();
    gamma1_sizes.sort_by(|x, y| (x.0.side, &x.0.nodes).cmp(&(y.0.side, &y.0.nodes)));
    AnalysisJson {
        name: a.record.name.clone(),
        b_is_zero: a.analysis.b_is_zero,
        kpp: a.analysis.kpp.iter().map(item).collect(),
        kp: a.analysis.kp.iter().map(item).collect(),
        kreel: a.analysis.kreel.iter().map(item).collect(),
        kcomp_pairs: a
            .analysis
            .kcomp_pairs
            .iter()
            .map(|(x, y)| (item(x), item(y)))
            .collect(),
        property_p: a.analysis.property_p,
        star: a.analysis.star,
        dim_a: a.analysis.dim_a,
        gamma1_sizes,
        properties: a.analysis.flags.clone(),
    }
}

/// Classify the connected components of a base subset, canonically.
pub fn classify_components(rs: &RootSystem, s: &BTreeSet<usize>) -> Vec<String> {
    let mut out: Vec<String> = rs
        .connected_components(s)
        .iter()
        .map(|c| canonical_type_label(&classify_component(rs, c)))
        .collect();
    out.sort();
    out
}

fn classify_component(rs: &RootSystem, comp: &BTreeSet<usize>) -> String {
    let nodes: Vec<usize> = comp.iter().copied().collect();
    let n = nodes.len();
    if n == 1 {
        return "A1".to_string();
    }
    let mut deg: HashMap<usize, usize> = nodes.iter().map(|&i| (i, 0)).collect();
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    for &(a, b) in &rs.edges {
        if comp.contains(&a) && comp.contains(&b) {
            let mult = rs.cartan[a][b] * rs.cartan[b][a];
            *deg.get_mut(&a).unwrap() += 1;
            *deg.get_mut(&b).unwrap() += 1;
            edges.push((a, b, mult));
        }
    }
    let maxmult = edges.iter().map(|e| e.2).max().unwrap_or(1);
    if maxmult == 3 {
        return "G2".to_string();
    }
    if maxmult == 2 {
        if n == 2 {
            return "B2".to_string();
        }
        let &(a, b, _) = edges.iter().find(|e| e.2 == 2).unwrap();
        if deg[&a] == 2 && deg[&b] == 2 {
            return "F4".to_string();
        }
        // double edge touches an end node e with neighbor nb:
        // C[e][nb] = −2 ⟺ e is the short end (B); else the long end (C)
        let (e, nb) = if deg[&a] == 1 { (a, b) } else { (b, a) };
        if rs.cartan[e][nb] == -2 {
            return format!("B{n}");
        }
        return format!("C{n}");
    }
    let fork = nodes.iter().find(|&&i| deg[&i] == 3);
    match fork {
        None => format!("A{n}"),
        Some(&f) => {
            let mut adj: HashMap<usize, Vec<usize>> = nodes.iter().map(|&i| (i, vec![])).collect();
            for &(a, b, _) in &edges {
                adj.get_mut(&a).unwrap().push(b);
                adj.get_mut(&b).unwrap().push(a);
            }
            let mut lens: Vec<usize> = adj[&f]
                .iter()
                .map(|&nb| {
                    let mut len = 1;
                    let (mut prev, mut cur) = (f, nb);
                    loop {
                        let next: Vec<usize> = adj[&cur]
                            .iter()
                            .copied()
                            .filter(|&x| x != prev)
                            .collect();
                        if next.is_empty() {
                            break;
                        }
                        prev = cur;
                        cur = next[0];
                        len += 1;
                    }
                    len
                })
                .collect();
            lens.sort();
            match lens.as_slice() {
                [1, 1, _] => format!("D{n}"),
                [1, 2, 2] => "E6".to_string(),
                [1, 2, 3] => "E7".to_string(),
                [1, 2, 4] => "E8".to_string(),
                _ => format!("?{n}"),
            }
        }
    }
}

/// Mismatches between derived data and the declared reference columns.
pub fn validate_against_declared(a: &AnalyzedForm) -> Vec<String> {
    let mut bad = Vec::new();
    let d = &a.record.declared;
    let derived_kg = a.sides() * a.cascade.len();
    if derived_kg != d.k_g {
        bad.push(format!("k_g: derived {derived_kg} != declared {}", d.k_g));
    }
    let km = derived_k_m(a);
    if km != d.k_m {
        bad.push(format!("k_m: derived {km} != declared {}", d.k_m));
    }
    if a.analysis.dim_a != d.dim_a {
        bad.push(format!(
            "dim_a: derived {} != declared {}",
            a.analysis.dim_a, d.dim_a
        ));
    }
    let rg_g = a.sides() * a.rs.rank();
    if rg_g != d.rg_g {
        bad.push(format!("rg_g: derived {rg_g} != declared {}", d.rg_g));
    }
    let dtype = match a.record.kind {
        Kind::ComplexDouble => vec![],
        _ => classify_components(&a.rs, &a.record.involution.black),
    };
    let mut declared_type = d.m0_type.clone();
    declared_type.sort();
    if dtype != declared_type {
        bad.push(format!(
            "m0 type: derived {dtype:?} != declared {declared_type:?}"
        ));
    }
    if a.analysis.flags.strongest != d.strongest {
        bad.push(format!(
            "strongest: derived {} != declared {}",
            a.analysis.flags.strongest.label(),
            d.strongest.label()
        ));
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analyzed(name: &str) -> AnalyzedForm {
        let reg = Registry::load().unwrap();
        analyze(reg.get(name).unwrap()).unwrap()
    }

    #[test]
    fn registry_loads_and_passes_contracts() {
        let reg = Registry::load().unwrap();
        assert!(reg.records.len() > 70);
        assert!(reg.get("nonexistent").is_err());
    }

    #[test]
    fn split_form_theta_is_minus_identity() {
        let a = analyzed("sl(3,R)");
        let th = a.theta.as_ref().unwrap();
        for r in a.rs.all_roots() {
            assert_eq!(th.apply(&a.rs, &r), r.neg());
        }
        assert!(a.analysis.star);
        assert_eq!(a.analysis.kreel.len(), 1);
        assert!(a.analysis.kcomp_pairs.is_empty());
    }

    #[test]
    fn su21_theta_swaps_and_negates() {
        let a = analyzed("su(1,2)");
        let th = a.theta.as_ref().unwrap();
        let b1 = a.rs.simple_root(0);
        let b2 = a.rs.simple_root(1);
        assert_eq!(th.apply(&a.rs, &b1), b2.neg());
        // one real cascade root, C holds
        assert_eq!(a.analysis.kreel.len(), 1);
        assert_eq!(a.analysis.flags.strongest, Strongest::C);
    }

    #[test]
    fn star_examples_from_the_classification() {
        assert!(!analyzed("sl(2,H)").analysis.star);
        assert!(analyzed("EVII").analysis.star);
        let eiv = analyzed("EIV");
        assert!(!eiv.analysis.star);
        assert_eq!(
            eiv.record.involution.black,
            [1usize, 2, 3, 4].into_iter().collect::<BTreeSet<_>>()
        );
    }

    #[test]
    fn declared_columns_reproduce_for_every_entry() {
        let reg = Registry::load().unwrap();
        for rec in &reg.records {
            let a = analyze(rec).unwrap();
            let bad = validate_against_declared(&a);
            assert!(bad.is_empty(), "{}: {:?}", rec.name, bad);
        }
    }

    #[test]
    fn kcomp_formula_on_star_entries() {
        let reg = Registry::load().unwrap();
        for rec in &reg.records {
            let a = analyze(rec).unwrap();
            if a.analysis.star {
                let v = kcomp_count(&a).unwrap();
                assert_eq!(v, a.analysis.kcomp_count(), "{}", rec.name);
            } else {
                assert!(kcomp_count(&a).is_err());
            }
        }
    }

    #[test]
    fn kcomp_worked_instances() {
        // complex doubles: 2 k_s
        let a = analyzed("complex-C3");
        assert_eq!(kcomp_count(&a).unwrap(), 6);
        // so(2p+1,2p+1): 0
        let a = analyzed("so(5,5)");
        assert_eq!(kcomp_count(&a).unwrap(), 0);
        // so(2p+1,2p+3): 2
        let a = analyzed("so(3,5)");
        assert_eq!(kcomp_count(&a).unwrap(), 2);
    }

    #[test]
    fn cayley_descent_terminates_in_kreel_steps() {
        for name in ["sl(4,R)", "su(2,4)", "EVI", "complex-B2", "sl(2,H)"] {
            let a = analyzed(name);
            let mut st = CayleyState::new(&a);
            let invariant = st.dim_a - st.kreel.len() as i64;
            let steps = st.kreel.len();
            for _ in 0..steps {
                let k = st.kreel[0];
                st = st.reduce(k).unwrap();
                assert_eq!(st.dim_a - st.kreel.len() as i64, invariant, "{name}");
                assert!(st.property_p && st.star == a.analysis.star);
            }
            assert!(st.kreel.is_empty());
            let k_bad = CascadeItem { side: 0, idx: 0 };
            if !st.kreel.contains(&k_bad) {
                assert!(st.reduce(k_bad).is_err());
            }
        }
    }

    #[test]
    fn gamma1_characterization_matches_star() {
        // Γ₁ all empty ⟺ condition (*) — across the whole registry
        let reg = Registry::load().unwrap();
        for rec in &reg.records {
            let a = analyze(rec).unwrap();
            let all_empty = a.analysis.sum_gamma1() == 0;
            assert_eq!(all_empty, a.analysis.star, "{}", rec.name);
        }
    }

    #[test]
    fn gamma1_nonempty_only_on_nested_outer_halves() {
        let reg = Registry::load().unwrap();
        for rec in &reg.records {
            let a = analyze(rec).unwrap();
            for (item, g1) in &a.analysis.gamma1 {
                if g1.is_empty() {
                    continue;
                }
                // the θ-partner must be strictly nested inside
                let pair = a
                    .analysis
                    .kcomp_pairs
                    .iter()
                    .find(|(p, q)| p == item || q == item)
                    .unwrap_or_else(|| panic!("{}: Γ₁ on a real element", rec.name));
                let other = if pair.0 == *item { pair.1 } else { pair.0 };
                let inner = &a.cascade.elements[other.idx].subset;
                let outer = &a.cascade.elements[item.idx].subset;
                assert!(inner.is_subset(outer) && inner != outer, "{}", rec.name);
                // and the chosen representative is the outer half
                assert_eq!(pair.0, *item, "{}", rec.name);
            }
        }
    }

    #[test]
    fn calcul_k_inequality_everywhere() {
        let reg = Registry::load().unwrap();
        for rec in &reg.records {
            let a = analyze(rec).unwrap();
            let rep = verify_calcul_k(&a).unwrap();
            assert!(rep.inequality_holds, "{}", rec.name);
            if rep.star {
                assert!(rep.equality, "{}: (*) must force equality", rec.name);
            }
        }
    }

    #[test]
    fn compact_form_short_circuits() {
        let a = analyzed("compact-G2");
        assert!(a.analysis.b_is_zero);
        assert_eq!(a.analysis.dim_a, 0);
        assert!(a.analysis.kpp.is_empty());
        assert!(a.analysis.star);
        assert_eq!(a.analysis.flags.strongest, Strongest::C);
    }

    #[test]
    fn complex_double_analysis() {
        let a = analyzed("complex-A1");
        assert_eq!(a.analysis.kcomp_count(), 2);
        assert_eq!(a.analysis.dim_a, 1);
        assert!(a.analysis.star);
        assert_eq!(a.analysis.flags.strongest, Strongest::A);
    }

    #[test]
    fn table5_strongest_column_reproduced() {
        let reg = Registry::load().unwrap();
        for rec in &reg.records {
            let a = analyze(rec).unwrap();
            assert_eq!(
                a.analysis.flags.strongest, rec.declared.strongest,
                "{}",
                rec.name
            );
        }
    }

    #[test]
    fn b_implies_a_and_c_implies_b() {
        let reg = Registry::load().unwrap();
        for rec in &reg.records {
            let a = analyze(rec).unwrap();
            let f = &a.analysis.flags;
            if f.c {
                assert!(f.b, "{}", rec.name);
            }
            if f.b {
                assert!(f.a, "{}", rec.name);
            }
            assert_eq!(f.b, f.bprime);
        }
    }

    #[test]
    fn json_export_shape() {
        let a = analyzed("EIV");
        let j = serde_json::to_value(analysis_json(&a)).unwrap();
        for key in [
            "name",
            "kpp",
            "kp",
            "kreel",
            "kcomp_pairs",
            "property_p",
            "star",
            "properties",
        ] {
            assert!(j.get(key).is_some(), "missing {key}");
        }
    }
}
