//! Chevalley basis `{H_i} ∪ {X_α}` with integer structure constants.
//!
//! Signs follow the extraspecial-pair scheme: positive roots are taken
//! in the deterministic order of [`RootSystem`]; for each non-simple
//! positive `γ` the extraspecial pair `(ε, η)` (with `ε` minimal such
//! that `γ − ε` is a positive root) gets `N_{ε,η} = p+1 > 0`, and every
//! other constant is forced from these by the Jacobi identity and the
//! normalization `[X_α, X_{−α}] = H_α`, `α(H_α) = 2`. The convention is
//! immaterial for everything downstream; tests assert only `|N| = p+1`,
//! antisymmetry and the Jacobi identity.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::linalg::{minimal_polynomial, rat, Rat};
use crate::rootsys::{Root, RootSystem};
use num::Zero;

/// Signed root id: `0..m` positive roots in order, `m..2m` their
/// negatives.
pub type SignedRoot = usize;

/// Sparse element of the ambient algebra, coordinates over the basis
/// `X_{pos 0..m}, X_{neg 0..m}, H_0..H_{l-1}`.
pub type Elem = BTreeMap<usize, Rat>;

#[derive(Clone, Debug, PartialEq)]
pub enum Br {
    Zero,
    /// `c · X` or `c · H_i` — a multiple of one basis vector.
    Mult(usize, i64),
    /// Element of the Cartan: coefficients over the `H_i`.
    Cartan(Vec<i64>),
}

pub struct StructureConstants {
    pub rs: RootSystem,
    /// `N_{α,β}` for positive pairs with `α+β ∈ Δ`, keyed by positive
    /// root indices (i, j) in both orders.
    n_pos: HashMap<(usize, usize), i64>,
    /// Bracket of any two basis vectors.
    table: Vec<Vec<Br>>,
    /// `κ(X_α, X_{−α})` per positive index (trace form of the adjoint
    /// representation, i.e. the Killing form).
    pub gram_x: Vec<i64>,
    /// `κ(H_i, H_j)`.
    pub gram_h: Vec<Vec<i64>>,
}

impl StructureConstants {
    pub fn new(rs: RootSystem) -> StructureConstants {
        let m = rs.num_positive();
        let l = rs.rank();
        let n_pos = build_n_table(&rs);
        let dim = 2 * m + l;
        let mut table = vec![vec![Br::Zero; dim]; dim];
        {
            let helper = NHelper {
                rs: &rs,
                n_pos: &n_pos,
            };
            for (i, row) in table.iter_mut().enumerate() {
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell = helper.bracket_basis(i, j);
                }
            }
        }
        let mut sc = StructureConstants {
            rs,
            n_pos,
            table,
            gram_x: vec![],
            gram_h: vec![],
        };
        sc.gram_x = (0..m).map(|i| sc.trace_pair(i, m + i)).collect();
        sc.gram_h = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        2 * sc
                            .rs
                            .positive_roots
                            .iter()
                            .map(|a| {
                                sc.rs.pairing_simple(&a.coeffs, i)
                                    * sc.rs.pairing_simple(&a.coeffs, j)
                            })
                            .sum::<i64>()
                    })
                    .collect()
            })
            .collect();
        sc
    }

    pub fn num_positive(&self) -> usize {
        self.rs.num_positive()
    }

    /// Basis dimension `2|Δ₊| + rank`.
    pub fn dim(&self) -> usize {
        2 * self.num_positive() + self.rs.rank()
    }

    pub fn cartan_index(&self, i: usize) -> usize {
        2 * self.num_positive() + i
    }

    pub fn sr_of_root(&self, r: &Root) -> Option<SignedRoot> {
        if let Some(i) = self.rs.root_index(r) {
            return Some(i);
        }
        self.rs.root_index(&r.neg()).map(|i| self.num_positive() + i)
    }

    pub fn root_of_sr(&self, sr: SignedRoot) -> Root {
        let m = self.num_positive();
        if sr < m {
            self.rs.positive_roots[sr].clone()
        } else {
            self.rs.positive_roots[sr - m].neg()
        }
    }

    /// `N_{α,β}` for arbitrary roots with `α+β ∈ Δ`.
    pub fn n(&self, a: &Root, b: &Root) -> i64 {
        NHelper {
            rs: &self.rs,
            n_pos: &self.n_pos,
        }
        .n_signed(a, b)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Br {
        &self.table[i][j]
    }

    /// Bracket of sparse elements.
    pub fn bracket(&self, x: &Elem, y: &Elem) -> Elem {
        let mut out: Elem = BTreeMap::new();
        for (&i, ci) in x {
            if ci.is_zero() {
                continue;
            }
            for (&j, cj) in y {
                if cj.is_zero() {
                    continue;
                }
                let c = ci * cj;
                match &self.table[i][j] {
                    Br::Zero => {}
                    Br::Mult(k, n) => {
                        let add = &c * rat(*n);
                        let entry = out.entry(*k).or_insert_with(Rat::zero);
                        *entry += add;
                    }
                    Br::Cartan(h) => {
                        for (hi, coeff) in h.iter().enumerate() {
                            if *coeff != 0 {
                                let idx = self.cartan_index(hi);
                                let add = &c * rat(*coeff);
                                let entry = out.entry(idx).or_insert_with(Rat::zero);
                                *entry += add;
                            }
                        }
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// trace of `ad(e_i) ∘ ad(e_j)` over the basis.
    fn trace_pair(&self, i: usize, j: usize) -> i64 {
        let dim = self.dim();
        let mut tr = Rat::zero();
        let ei = basis_elem(i);
        for e in 0..dim {
            let inner = self.bracket(&basis_elem(j), &basis_elem(e));
            if inner.is_empty() {
                continue;
            }
            let outer = self.bracket(&ei, &inner);
            if let Some(c) = outer.get(&e) {
                tr += c;
            }
        }
        assert!(crate::linalg::rat_is_int(&tr));
        let digits = tr.numer().to_u64_digits();
        let mag = if digits.1.is_empty() { 0 } else { digits.1[0] as i64 };
        match digits.0 {
            num::bigint::Sign::Minus => -mag,
            _ => mag,
        }
    }

    /// Killing form (adjoint trace form) of two sparse elements.
    pub fn invariant_form(&self, x: &Elem, y: &Elem) -> Rat {
        let m = self.num_positive();
        let m2 = 2 * m;
        let mut acc = Rat::zero();
        for (&i, ci) in x {
            for (&j, cj) in y {
                let g: i64 = if i < m2 && j < m2 {
                    // κ(X_a, X_b) ≠ 0 only for b = −a
                    let (ia, neg_a) = if i < m { (i, false) } else { (i - m, true) };
                    let (ib, neg_b) = if j < m { (j, false) } else { (j - m, true) };
                    if ia == ib && neg_a != neg_b {
                        self.gram_x[ia]
                    } else {
                        0
                    }
                } else if i >= m2 && j >= m2 {
                    self.gram_h[i - m2][j - m2]
                } else {
                    0
                };
                if g != 0 {
                    acc += ci * cj * rat(g);
                }
            }
        }
        acc
    }

    /// Dense matrix of `ad(x)` over the full basis.
    pub fn ad_matrix(&self, x: &Elem) -> Vec<Vec<Rat>> {
        let dim = self.dim();
        let mut mat = vec![vec![Rat::zero(); dim]; dim];
        for j in 0..dim {
            let col = self.bracket(x, &basis_elem(j));
            for (i, v) in col {
                mat[i][j] = v;
            }
        }
        mat
    }

    /// Is `ad(x)` semisimple? Exact test: the minimal polynomial of the
    /// adjoint matrix is squarefree.
    pub fn ad_semisimple(&self, x: &Elem) -> bool {
        let mat = self.ad_matrix(x);
        minimal_polynomial(&mat).is_squarefree()
    }

    /// Number of Jacobi violations over all unordered basis triples.
    pub fn jacobi_violations(&self) -> usize {
        let dim = self.dim();
        let mut bad = 0usize;
        let basis: Vec<Elem> = (0..dim).map(basis_elem).collect();
        for i in 0..dim {
            for j in i..dim {
                let bij = self.bracket(&basis[i], &basis[j]);
                for k in j..dim {
                    let t1 = self.bracket(&bij, &basis[k]);
                    let bjk = self.bracket(&basis[j], &basis[k]);
                    let t2 = self.bracket(&bjk, &basis[i]);
                    let bki = self.bracket(&basis[k], &basis[i]);
                    let t3 = self.bracket(&bki, &basis[j]);
                    let mut sum = t1;
                    for (idx, v) in t2.into_iter().chain(t3) {
                        let entry = sum.entry(idx).or_insert_with(Rat::zero);
                        *entry += v;
                    }
                    sum.retain(|_, v| !v.is_zero());
                    if !sum.is_empty() {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// `|N_{α,β}| = p+1` for every positive special pair; returns the
    /// number of violations.
    pub fn n_magnitude_violations(&self) -> usize {
        let mut bad = 0;
        let m = self.num_positive();
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let a = &self.rs.positive_roots[i];
                let b = &self.rs.positive_roots[j];
                let s = a.add(b);
                if !self.rs.is_root(&s) {
                    continue;
                }
                let n = self.n_pos[&(i, j)];
                let mut p = 0i64;
                let mut cur = b.sub(a);
                while self.rs.is_root(&cur) {
                    p += 1;
                    cur = cur.sub(a);
                }
                if n.abs() != p + 1 {
                    bad += 1;
                }
            }
        }
        bad
    }
}

/// Resolver for structure constants of arbitrary sign, given the
/// positive-pair table (possibly still under construction).
struct NHelper<'a> {
    rs: &'a RootSystem,
    n_pos: &'a HashMap<(usize, usize), i64>,
}

impl<'a> NHelper<'a> {
    fn pos_idx(&self, r: &Root) -> usize {
        self.rs.root_index(r).expect("positive root")
    }

    fn n_pos_pair(&self, a: &Root, b: &Root) -> i64 {
        let key = (self.pos_idx(a), self.pos_idx(b));
        *self
            .n_pos
            .get(&key)
            .unwrap_or_else(|| panic!("positive pair not yet derived: {a:?} {b:?}"))
    }

    /// `N_{x,y}` for arbitrary roots with `x+y ∈ Δ`, reduced to
    /// positive pairs via `N_{a,b}/d_c = N_{b,c}/d_a` (for `a+b+c = 0`)
    /// and `N_{−a,−b} = −N_{a,b}`.
    fn n_signed(&self, x: &Root, y: &Root) -> i64 {
        let xp = x.is_positive();
        let yp = y.is_positive();
        if xp && yp {
            return self.n_pos_pair(x, y);
        }
        if !xp && !yp {
            return -self.n_signed(&x.neg(), &y.neg());
        }
        if !xp && yp {
            return -self.n_signed(y, x);
        }
        // x > 0 > y, z = x+y
        let z = x.add(y);
        let d = |r: &Root| self.rs.d_of(r);
        if z.is_positive() {
            // N_{x,y} = −N_{−y, z} · d_z / d_x
            let v = -self.n_pos_pair(&y.neg(), &z) * d(&z);
            debug_assert_eq!(v % d(x), 0);
            v / d(x)
        } else {
            // N_{x,y} = N_{−z, x} · d_z / d_y
            let zn = z.neg();
            let v = self.n_pos_pair(&zn, x) * d(&zn);
            let dy = d(&y.neg());
            debug_assert_eq!(v % dy, 0);
            v / dy
        }
    }

    fn bracket_basis(&self, i: usize, j: usize) -> Br {
        let m = self.rs.num_positive();
        let m2 = 2 * m;
        let root_of = |sr: usize| -> Root {
            if sr < m {
                self.rs.positive_roots[sr].clone()
            } else {
                self.rs.positive_roots[sr - m].neg()
            }
        };
        let sr_of = |r: &Root| -> usize {
            if let Some(k) = self.rs.root_index(r) {
                k
            } else {
                m + self.rs.root_index(&r.neg()).unwrap()
            }
        };
        if i >= m2 && j >= m2 {
            return Br::Zero;
        }
        if i >= m2 {
            // [H_i, X_b] = ⟨b, β_i∨⟩ X_b
            let b = root_of(j);
            let c = self.rs.pairing_simple(&b.coeffs, i - m2);
            return if c == 0 { Br::Zero } else { Br::Mult(j, c) };
        }
        if j >= m2 {
            let a = root_of(i);
            let c = self.rs.pairing_simple(&a.coeffs, j - m2);
            return if c == 0 { Br::Zero } else { Br::Mult(i, -c) };
        }
        let a = root_of(i);
        let b = root_of(j);
        let s = a.add(&b);
        if s.coeffs.iter().all(|&c| c == 0) {
            // [X_α, X_{−α}] = H_α (α the positive one)
            let (pos, sign) = if a.is_positive() { (a, 1) } else { (b, -1) };
            let h: Vec<i64> = self
                .rs
                .coroot_coeffs(&pos)
                .into_iter()
                .map(|c| sign * c)
                .collect();
            return Br::Cartan(h);
        }
        if self.rs.is_root(&s) {
            let n = self.n_signed(&a, &b);
            return Br::Mult(sr_of(&s), n);
        }
        Br::Zero
    }
}

/// Positive-pair structure constants via the extraspecial recursion.
fn build_n_table(rs: &RootSystem) -> HashMap<(usize, usize), i64> {
    let m = rs.num_positive();
    let mut n_pos: HashMap<(usize, usize), i64> = HashMap::new();
    // positive roots are already height-sorted
    for gi in 0..m {
        let gamma = rs.positive_roots[gi].clone();
        if gamma.height() == 1 {
            continue;
        }
        // extraspecial pair: least ε with γ − ε positive
        let (ei, eps, eta) = (0..m)
            .find_map(|k| {
                let eps = &rs.positive_roots[k];
                let eta = gamma.sub(eps);
                if eta.is_positive() && rs.is_positive_root(&eta) {
                    Some((k, eps.clone(), eta))
                } else {
                    None
                }
            })
            .expect("non-simple positive root decomposes");
        let hi = rs.root_index(&eta).unwrap();
        // N_{ε,η} = p+1, p the downward ε-string through η
        let mut p = 0i64;
        let mut cur = eta.sub(&eps);
        while rs.is_root(&cur) {
            p += 1;
            cur = cur.sub(&eps);
        }
        n_pos.insert((ei, hi), p + 1);
        n_pos.insert((hi, ei), -(p + 1));
        // all remaining special pairs for γ, forced by Jacobi with X_{−ε}
        let mut derived: Vec<((usize, usize), i64)> = Vec::new();
        {
            let helper = NHelper { rs, n_pos: &n_pos };
            for ai in 0..m {
                let alpha = &rs.positive_roots[ai];
                let beta = gamma.sub(alpha);
                if !beta.is_positive() || !rs.is_positive_root(&beta) {
                    continue;
                }
                let bi = rs.root_index(&beta).unwrap();
                if ai > bi || (ai, bi) == (ei, hi) {
                    continue;
                }
                let d_gamma = rs.d_of(&gamma);
                let d_eta = rs.d_of(&eta);
                let mut t = 0i64;
                let bme = beta.sub(&eps);
                if rs.is_root(&bme) {
                    t += helper.n_signed(&beta, &eps.neg()) * helper.n_signed(alpha, &bme);
                }
                let ame = alpha.sub(&eps);
                if rs.is_root(&ame) {
                    t += helper.n_signed(&eps.neg(), alpha) * helper.n_signed(&beta, &ame);
                }
                // N_{α,β} · N_{−ε,γ} + t = 0 with N_{−ε,γ} = N_{ε,η} d_η/d_γ
                let n_eps_gamma_num = (p + 1) * d_eta;
                assert_eq!((t * d_gamma) % n_eps_gamma_num, 0);
                let n_ab = -(t * d_gamma) / n_eps_gamma_num;
                derived.push(((ai, bi), n_ab));
            }
        }
        for ((ai, bi), v) in derived {
            n_pos.insert((ai, bi), v);
            n_pos.insert((bi, ai), -v);
        }
    }
    n_pos
}

/// A single basis vector as a sparse element.
pub fn basis_elem(i: usize) -> Elem {
    let mut e = BTreeMap::new();
    e.insert(i, Rat::from_integer(1.into()));
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, SimpleType};
    use num::One;

    fn sc(f: Family, l: usize) -> StructureConstants {
        StructureConstants::new(RootSystem::build(SimpleType::new(f, l).unwrap()))
    }

    fn unit(i: usize) -> Elem {
        basis_elem(i)
    }

    #[test]
    fn a2_structure_constants() {
        let s = sc(Family::A, 2);
        let b1 = s.rs.simple_root(0);
        let b2 = s.rs.simple_root(1);
        assert_eq!(s.n(&b1, &b2).abs(), 1);
        let i = s.rs.root_index(&b1).unwrap();
        let j = s.rs.root_index(&b2).unwrap();
        let br = s.bracket(&unit(i), &unit(j));
        assert_eq!(br.len(), 1);
        let k = s.rs.root_index(&b1.add(&b2)).unwrap();
        assert!(br.contains_key(&k));
    }

    #[test]
    fn b2_doubled_constant() {
        let s = sc(Family::B, 2);
        let b2 = s.rs.simple_root(1);
        let b12 = s.rs.simple_root(0).add(&b2);
        assert_eq!(s.n(&b2, &b12).abs(), 2);
    }

    #[test]
    fn h_alpha_normalization() {
        // [X_α, X_{−α}] = H_α with α(H_α) = 2, every type/root
        for (f, l) in [(Family::G, 2), (Family::B, 3), (Family::A, 3)] {
            let s = sc(f, l);
            let m = s.num_positive();
            for i in 0..m {
                let a = &s.rs.positive_roots[i];
                let br = s.bracket(&unit(i), &unit(m + i));
                let mut val = Rat::zero();
                for (idx, c) in &br {
                    let hi = idx - 2 * m;
                    val += c * rat(s.rs.pairing_simple(&a.coeffs, hi));
                }
                assert_eq!(val, rat(2), "{f:?}{l} root {a:?}");
            }
        }
    }

    #[test]
    fn jacobi_small_types_exhaustive() {
        for (f, l) in [
            (Family::A, 2),
            (Family::B, 2),
            (Family::G, 2),
            (Family::C, 3),
            (Family::B, 3),
            (Family::A, 3),
        ] {
            let s = sc(f, l);
            assert_eq!(s.jacobi_violations(), 0, "{f:?}{l}");
            assert_eq!(s.n_magnitude_violations(), 0, "{f:?}{l}");
        }
    }

    #[test]
    fn bracket_antisymmetry_and_weights() {
        let s = sc(Family::B, 3);
        let m = s.num_positive();
        for i in [0usize, 3, 10] {
            assert!(s.bracket(&unit(i), &unit(i)).is_empty());
        }
        let h = unit(s.cartan_index(0));
        for i in 0..m {
            let a = &s.rs.positive_roots[i];
            let br = s.bracket(&h, &unit(i));
            let c = s.rs.pairing_simple(&a.coeffs, 0);
            if c == 0 {
                assert!(br.is_empty());
            } else {
                assert_eq!(br.get(&i), Some(&rat(c)));
            }
        }
    }

    #[test]
    fn killing_form_values() {
        // A1: κ(H, H) = 8 for the simple coroot
        let s = sc(Family::A, 1);
        let h = unit(s.cartan_index(0));
        assert_eq!(s.invariant_form(&h, &h), rat(8));
        // weight orthogonality
        let s = sc(Family::A, 2);
        let h = unit(s.cartan_index(0));
        assert_eq!(s.invariant_form(&unit(0), &unit(1)), Rat::zero());
        assert!(!s.invariant_form(&unit(0), &unit(3)).is_zero());
        assert_eq!(s.invariant_form(&unit(0), &h), Rat::zero());
    }

    #[test]
    fn killing_form_invariance_random_triples() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let s = sc(Family::C, 3);
        let dim = s.dim();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let rnd = |rng: &mut StdRng| -> Elem {
                (0..dim)
                    .filter_map(|i| {
                        if rng.gen_bool(0.3) {
                            Some((i, rat(rng.gen_range(-3..=3))))
                        } else {
                            None
                        }
                    })
                    .collect()
            };
            let x = rnd(&mut rng);
            let y = rnd(&mut rng);
            let z = rnd(&mut rng);
            let lhs = s.invariant_form(&s.bracket(&x, &y), &z);
            let rhs = s.invariant_form(&x, &s.bracket(&y, &z));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn killing_gram_nondegenerate_small_ranks() {
        for (f, l) in [
            (Family::A, 2),
            (Family::B, 2),
            (Family::C, 3),
            (Family::G, 2),
            (Family::F, 4),
        ] {
            let s = sc(f, l);
            for g in &s.gram_x {
                assert_ne!(*g, 0);
            }
            let gh: Vec<Vec<Rat>> = s
                .gram_h
                .iter()
                .map(|row| row.iter().map(|&v| rat(v)).collect())
                .collect();
            assert_eq!(crate::linalg::rank_rat(gh), s.rs.rank(), "{f:?}{l}");
        }
    }

    #[test]
    fn ad_semisimple_examples() {
        let s = sc(Family::A, 2);
        let m = s.num_positive();
        assert!(s.ad_semisimple(&unit(s.cartan_index(0))));
        assert!(!s.ad_semisimple(&unit(0)));
        let mut x = unit(0);
        x.insert(m, Rat::one());
        assert!(s.ad_semisimple(&x));
    }

    #[test]
    fn negative_pair_convention() {
        let s = sc(Family::F, 4);
        let m = s.num_positive();
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let a = &s.rs.positive_roots[i];
                let b = &s.rs.positive_roots[j];
                if s.rs.is_root(&a.add(b)) {
                    assert_eq!(s.n(&a.neg(), &b.neg()), -s.n(a, b));
                    assert_eq!(s.n(b, a), -s.n(a, b));
                }
            }
        }
    }
}
