//! Root systems of the simple types over exact integer arithmetic.
//!
//! Roots live in the coordinate basis of simple roots `β_1, …, β_l`; all
//! pairings route through the Cartan matrix and a diagonal symmetrizer,
//! so every number in sight is an integer.
//!
//! Node numbering follows Bourbaki for the classical chains and for
//! `E`-types (chain `β1–β3–β4–β5–β6[–β7[–β8]]` with `β2` attached to
//! `β4`); `D_l` forks at `β_{l-2}` into `β_{l-1}, β_l`. For `F4` the
//! double edge points `β2 → β3` (so `β1, β2` long); for `G2` the triple
//! edge points `β1 → β2` (so `β1` long). This is the single place the
//! numbering is defined; everything downstream uses it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::linalg::Rat;
use num::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "A" | "a" => Some(Family::A),
            "B" | "b" => Some(Family::B),
            "C" | "c" => Some(Family::C),
            "D" | "d" => Some(Family::D),
            "E" | "e" => Some(Family::E),
            "F" | "f" => Some(Family::F),
            "G" | "g" => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("rank {rank} out of bounds for type {family} (allowed {bounds})")]
    RankOutOfBounds {
        family: Family,
        rank: usize,
        bounds: &'static str,
    },
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("subset {0:?} is not connected")]
    DisconnectedSubset(Vec<usize>),
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        let (ok, bounds) = match family {
            Family::A => (rank >= 1, "rank >= 1"),
            Family::B => (rank >= 2, "rank >= 2"),
            Family::C => (rank >= 3, "rank >= 3"),
            Family::D => (rank >= 4, "rank >= 4"),
            Family::E => ((6..=8).contains(&rank), "rank in 6..=8"),
            Family::F => (rank == 4, "rank == 4"),
            Family::G => (rank == 2, "rank == 2"),
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(RootError::RankOutOfBounds {
                family,
                rank,
                bounds,
            })
        }
    }

    /// Number of positive roots, by the classical closed forms.
    pub fn positive_count(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 1) / 2,
            Family::B | Family::C => l * l,
            Family::D => l * (l - 1),
            Family::E => match l {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A root in simple-root coordinates. Positive roots have all
/// coefficients `>= 0`, negative roots all `<= 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Root {
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Root { coeffs }
    }
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }
    pub fn neg(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    pub fn add(&self, other: &Root) -> Root {
        Root {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
    pub fn sub(&self, other: &Root) -> Root {
        Root {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
    pub fn support(&self) -> BTreeSet<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }
    /// Deterministic order: height first, then lexicographic coefficients.
    pub fn order_key(&self) -> (i64, Vec<i64>) {
        (self.height(), self.coeffs.clone())
    }
}

pub struct RootSystem {
    pub simple_type: SimpleType,
    /// `cartan[i][j] = ⟨β_j, β_i∨⟩`
    pub cartan: Vec<Vec<i64>>,
    /// `symmetrizer[i] = (β_i, β_i)/2`, normalized so short roots get 1.
    pub symmetrizer: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    /// All positive roots, ordered by (height, lexicographic coefficients).
    pub positive_roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

fn cartan_data(t: SimpleType) -> (Vec<Vec<i64>>, Vec<i64>, Vec<(usize, usize)>) {
    let l = t.rank;
    let mut d = vec![1i64; l];
    let edges: Vec<(usize, usize)> = match t.family {
        Family::A => (0..l - 1).map(|i| (i, i + 1)).collect(),
        Family::B => {
            for x in d.iter_mut().take(l - 1) {
                *x = 2;
            }
            (0..l - 1).map(|i| (i, i + 1)).collect()
        }
        Family::C => {
            d[l - 1] = 2;
            (0..l - 1).map(|i| (i, i + 1)).collect()
        }
        Family::D => {
            let mut e: Vec<(usize, usize)> = (0..l - 2).map(|i| (i, i + 1)).collect();
            e.push((l - 3, l - 1));
            e
        }
        Family::E => {
            let mut e = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
            if l >= 7 {
                e.push((5, 6));
            }
            if l == 8 {
                e.push((6, 7));
            }
            e
        }
        Family::F => {
            d[0] = 2;
            d[1] = 2;
            vec![(0, 1), (1, 2), (2, 3)]
        }
        Family::G => {
            d[0] = 3;
            vec![(0, 1)]
        }
    };
    // symmetric bilinear form on simple roots: (β_i, β_i) = 2 d_i,
    // (β_i, β_j) = -max(d_i, d_j) on edges
    let mut b = vec![vec![0i64; l]; l];
    for i in 0..l {
        b[i][i] = 2 * d[i];
    }
    for &(i, j) in &edges {
        let v = -d[i].max(d[j]);
        b[i][j] = v;
        b[j][i] = v;
    }
    let mut c = vec![vec![0i64; l]; l];
    for i in 0..l {
        for j in 0..l {
            debug_assert_eq!(b[i][j] % d[i], 0);
            c[i][j] = b[i][j] / d[i];
        }
    }
    (c, d, edges)
}

impl RootSystem {
    /// Enumerate the positive roots by saturation from the simple roots,
    /// using the string property `q = p - ⟨α, β_i∨⟩`.
    pub fn build(t: SimpleType) -> RootSystem {
        let (cartan, symmetrizer, edges) = cartan_data(t);
        let l = t.rank;
        let mut known: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier: Vec<Root> = (0..l).map(|i| Root::simple(l, i)).collect();
        for r in &frontier {
            known.insert(r.coeffs.clone());
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in &frontier {
                for i in 0..l {
                    // p = length of the downward β_i-string through r
                    let mut p = 0i64;
                    let mut cur = r.clone();
                    loop {
                        cur.coeffs[i] -= 1;
                        if cur.coeffs[i] >= 0 && known.contains(&cur.coeffs) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..l).map(|j| r.coeffs[j] * cartan[i][j]).sum();
                    if p - pairing > 0 {
                        let mut up = r.clone();
                        up.coeffs[i] += 1;
                        if known.insert(up.coeffs.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut positive_roots: Vec<Root> =
            known.into_iter().map(|coeffs| Root { coeffs }).collect();
        positive_roots.sort_by_key(|r| r.order_key());
        let index = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let rs = RootSystem {
            simple_type: t,
            cartan,
            symmetrizer,
            edges,
            positive_roots,
            index,
        };
        debug_assert_eq!(rs.positive_roots.len(), t.positive_count());
        rs
    }

    pub fn rank(&self) -> usize {
        self.simple_type.rank
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }

    /// Symmetrized inner product `(a, b)`.
    pub fn inner(&self, a: &Root, b: &Root) -> i64 {
        let l = self.rank();
        let mut s = 0;
        for i in 0..l {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..l {
                if b.coeffs[j] != 0 {
                    s += a.coeffs[i] * b.coeffs[j] * self.symmetrizer[i] * self.cartan[i][j];
                }
            }
        }
        s
    }

    /// `⟨a, b∨⟩ = 2(a,b)/(b,b)` — an integer whenever `b` is a root.
    pub fn pairing(&self, a: &Root, b: &Root) -> i64 {
        let n = 2 * self.inner(a, b);
        let d = self.inner(b, b);
        debug_assert!(d > 0 && n % d == 0);
        n / d
    }

    /// `⟨v, β_i∨⟩` for an integer coefficient vector.
    pub fn pairing_simple(&self, v: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| v[j] * self.cartan[i][j]).sum()
    }

    /// `⟨v, β_i∨⟩` for a rational coefficient vector.
    pub fn pairing_simple_rat(&self, v: &[Rat], i: usize) -> Rat {
        let mut acc = Rat::zero();
        for j in 0..self.rank() {
            if self.cartan[i][j] != 0 && !v[j].is_zero() {
                acc += &v[j] * crate::linalg::rat(self.cartan[i][j]);
            }
        }
        acc
    }

    /// `(r, r)/2` — the symmetrizer value of an arbitrary root.
    pub fn d_of(&self, r: &Root) -> i64 {
        let n = self.inner(r, r);
        debug_assert_eq!(n % 2, 0);
        n / 2
    }

    /// Coefficients of the coroot `H_r` over the simple coroots `H_i`.
    pub fn coroot_coeffs(&self, r: &Root) -> Vec<i64> {
        let dr = self.d_of(r);
        (0..self.rank())
            .map(|i| {
                let n = r.coeffs[i] * self.symmetrizer[i];
                debug_assert_eq!(n % dr, 0);
                n / dr
            })
            .collect()
    }

    pub fn is_positive_root(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r) || self.index.contains_key(&r.neg())
    }

    /// Index of a positive root in the deterministic ordering.
    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Connected components of a subset of the base, ordered by least node.
    pub fn connected_components(&self, s: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut rem = s.clone();
        let mut comps = Vec::new();
        while let Some(&start) = rem.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            comp.insert(start);
            while let Some(x) = stack.pop() {
                for &(a, b) in &self.edges {
                    let other = if a == x {
                        Some(b)
                    } else if b == x {
                        Some(a)
                    } else {
                        None
                    };
                    if let Some(o) = other {
                        if rem.contains(&o) && comp.insert(o) {
                            stack.push(o);
                        }
                    }
                }
            }
            for x in &comp {
                rem.remove(x);
            }
            comps.push(comp);
        }
        comps
    }

    /// The highest root `ε_S` of the subsystem generated by a connected
    /// nonempty subset of the base.
    pub fn highest_root(&self, s: &BTreeSet<usize>) -> Result<Root, RootError> {
        if s.is_empty() {
            return Err(RootError::EmptySubset);
        }
        if self.connected_components(s).len() != 1 {
            return Err(RootError::DisconnectedSubset(s.iter().copied().collect()));
        }
        let hr = self
            .positive_roots
            .iter()
            .filter(|r| r.support().is_subset(s))
            .max_by_key(|r| r.order_key())
            .expect("subsystem of a nonempty base subset has positive roots")
            .clone();
        debug_assert!(s.iter().all(|&i| {
            self.pairing(&hr, &self.simple_root(i)) >= 0
        }));
        Ok(hr)
    }

    /// All roots (positive and negative) with support inside `s`.
    pub fn subsystem_roots(&self, s: &BTreeSet<usize>) -> Vec<Root> {
        let mut out = Vec::new();
        for r in &self.positive_roots {
            if r.support().is_subset(s) {
                out.push(r.clone());
                out.push(r.neg());
            }
        }
        out
    }

    pub fn all_roots(&self) -> impl Iterator<Item = Root> + '_ {
        self.positive_roots
            .iter()
            .cloned()
            .chain(self.positive_roots.iter().map(|r| r.neg()))
    }

    /// Full base as a subset.
    pub fn full_base(&self) -> BTreeSet<usize> {
        (0..self.rank()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: generate the whole root set as the closure of
    /// the simple roots under all simple reflections (no string property).
    fn weyl_orbit_roots(rs: &RootSystem) -> BTreeSet<Vec<i64>> {
        let l = rs.rank();
        let mut all: BTreeSet<Vec<i64>> = (0..l).map(|i| Root::simple(l, i).coeffs).collect();
        let mut frontier: Vec<Vec<i64>> = all.iter().cloned().collect();
        while let Some(v) = frontier.pop() {
            for i in 0..l {
                let p: i64 = (0..l).map(|j| v[j] * rs.cartan[i][j]).sum();
                let mut w = v.clone();
                w[i] -= p;
                if all.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        all
    }

    fn check_counts(t: SimpleType) {
        let rs = RootSystem::build(t);
        let orbit = weyl_orbit_roots(&rs);
        assert_eq!(orbit.len(), 2 * rs.num_positive(), "type {t:?}");
        for r in &rs.positive_roots {
            assert!(orbit.contains(&r.coeffs));
        }
        assert_eq!(rs.num_positive(), t.positive_count());
    }

    #[test]
    fn enumeration_matches_weyl_orbit_oracle() {
        for l in 1..=6 {
            check_counts(SimpleType::new(Family::A, l).unwrap());
        }
        for l in 2..=6 {
            check_counts(SimpleType::new(Family::B, l).unwrap());
        }
        for l in 3..=6 {
            check_counts(SimpleType::new(Family::C, l).unwrap());
        }
        for l in 4..=6 {
            check_counts(SimpleType::new(Family::D, l).unwrap());
        }
        check_counts(SimpleType::new(Family::F, 4).unwrap());
        check_counts(SimpleType::new(Family::G, 2).unwrap());
        check_counts(SimpleType::new(Family::E, 6).unwrap());
    }

    #[test]
    fn counts_match_closed_forms_up_to_rank_12() {
        let mut types = vec![];
        for l in 1..=12 {
            types.push(SimpleType::new(Family::A, l).unwrap());
        }
        for l in 2..=12 {
            types.push(SimpleType::new(Family::B, l).unwrap());
        }
        for l in 3..=12 {
            types.push(SimpleType::new(Family::C, l).unwrap());
        }
        for l in 4..=12 {
            types.push(SimpleType::new(Family::D, l).unwrap());
        }
        for l in 6..=8 {
            types.push(SimpleType::new(Family::E, l).unwrap());
        }
        types.push(SimpleType::new(Family::F, 4).unwrap());
        types.push(SimpleType::new(Family::G, 2).unwrap());
        for t in types {
            let rs = RootSystem::build(t);
            assert_eq!(rs.num_positive(), t.positive_count(), "{t:?}");
        }
    }

    #[test]
    fn a2_positive_roots() {
        let rs = RootSystem::build(SimpleType::new(Family::A, 2).unwrap());
        let coeffs: Vec<Vec<i64>> = rs.positive_roots.iter().map(|r| r.coeffs.clone()).collect();
        assert_eq!(coeffs, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn g2_has_six_positive_roots() {
        let rs = RootSystem::build(SimpleType::new(Family::G, 2).unwrap());
        assert_eq!(rs.num_positive(), 6);
    }

    #[test]
    fn rank_bounds_rejected() {
        assert!(SimpleType::new(Family::A, 0).is_err());
        assert!(SimpleType::new(Family::B, 1).is_err());
        assert!(SimpleType::new(Family::C, 2).is_err());
        assert!(SimpleType::new(Family::D, 3).is_err());
        assert!(SimpleType::new(Family::E, 9).is_err());
        assert!(SimpleType::new(Family::F, 5).is_err());
        assert!(SimpleType::new(Family::G, 3).is_err());
    }

    #[test]
    fn pairing_values() {
        let a2 = RootSystem::build(SimpleType::new(Family::A, 2).unwrap());
        assert_eq!(a2.pairing(&a2.simple_root(0), &a2.simple_root(1)), -1);
        assert_eq!(a2.pairing(&a2.simple_root(1), &a2.simple_root(1)), 2);
        let b2 = RootSystem::build(SimpleType::new(Family::B, 2).unwrap());
        // β2 short, β1 long: ⟨β2, β1∨⟩ = −1 and ⟨β1, β2∨⟩ = −2
        assert_eq!(b2.pairing(&b2.simple_root(1), &b2.simple_root(0)), -1);
        assert_eq!(b2.pairing(&b2.simple_root(0), &b2.simple_root(1)), -2);
    }

    #[test]
    fn highest_roots() {
        let a3 = RootSystem::build(SimpleType::new(Family::A, 3).unwrap());
        let hr = a3.highest_root(&a3.full_base()).unwrap();
        assert_eq!(hr.coeffs, vec![1, 1, 1]);
        let g2 = RootSystem::build(SimpleType::new(Family::G, 2).unwrap());
        let hr = g2.highest_root(&g2.full_base()).unwrap();
        assert_eq!(hr.coeffs, vec![2, 3]);
        // rank-1 subsystem
        let s: BTreeSet<usize> = [1].into_iter().collect();
        assert_eq!(a3.highest_root(&s).unwrap().coeffs, vec![0, 1, 0]);
        // errors
        assert!(a3.highest_root(&BTreeSet::new()).is_err());
        let disc: BTreeSet<usize> = [0, 2].into_iter().collect();
        assert!(a3.highest_root(&disc).is_err());
    }

    #[test]
    fn subsystem_of_orthogonal_pair() {
        let a3 = RootSystem::build(SimpleType::new(Family::A, 3).unwrap());
        let s: BTreeSet<usize> = [0, 2].into_iter().collect();
        let roots = a3.subsystem_roots(&s);
        assert_eq!(roots.len(), 4);
        let b2 = RootSystem::build(SimpleType::new(Family::B, 2).unwrap());
        assert_eq!(b2.subsystem_roots(&b2.full_base()).len(), 8);
        assert!(a3.subsystem_roots(&BTreeSet::new()).is_empty());
    }

    #[test]
    fn string_property_on_all_pairs() {
        // p − q = ⟨β, α∨⟩ for the α-string through β, small types
        for t in [
            SimpleType::new(Family::B, 3).unwrap(),
            SimpleType::new(Family::G, 2).unwrap(),
            SimpleType::new(Family::D, 4).unwrap(),
        ] {
            let rs = RootSystem::build(t);
            let all: Vec<Root> = rs.all_roots().collect();
            for a in &rs.positive_roots {
                for b in &all {
                    if b == a || *b == a.neg() {
                        continue;
                    }
                    let mut p = 0;
                    let mut cur = b.sub(a);
                    while rs.is_root(&cur) {
                        p += 1;
                        cur = cur.sub(a);
                    }
                    let mut q = 0;
                    let mut cur = b.add(a);
                    while rs.is_root(&cur) {
                        q += 1;
                        cur = cur.add(a);
                    }
                    assert_eq!(p - q, rs.pairing(b, a), "{t:?} {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn highest_root_pairs_zero_or_one() {
        for t in [
            SimpleType::new(Family::F, 4).unwrap(),
            SimpleType::new(Family::C, 4).unwrap(),
            SimpleType::new(Family::E, 6).unwrap(),
        ] {
            let rs = RootSystem::build(t);
            let hr = rs.highest_root(&rs.full_base()).unwrap();
            for a in &rs.positive_roots {
                if *a == hr {
                    continue;
                }
                let p = rs.pairing(a, &hr);
                assert!(p == 0 || p == 1, "{t:?}: ⟨{a:?}, hr∨⟩ = {p}");
            }
        }
    }
}
