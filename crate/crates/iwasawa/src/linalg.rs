//! Exact linear algebra over the integers and rationals.
//!
//! Rank computations run fraction-free (Bareiss) over `BigInt` with a
//! modular cross-check at three 30-bit primes; kernels and solves run
//! over `BigRational`. Nothing here ever touches floating point.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

/// Three 30-bit primes used for modular rank cross-checks.
pub const RANK_PRIMES: [u64; 3] = [1_073_741_789, 1_073_741_783, 1_073_741_741];

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_is_int(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Rank of an integer matrix by fraction-free Bareiss elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    let mut col = 0usize;
    while rank < rows && col < cols {
        // pivot search: any nonzero entry in this column at or below `rank`
        let mut piv = None;
        for r in rank..rows {
            if !m[r][col].is_zero() {
                piv = Some(r);
                break;
            }
        }
        let Some(p) = piv else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                // still must rescale the row for the Bareiss invariant
                for c in col + 1..cols {
                    if !m[r][c].is_zero() {
                        let v = &pivot * &m[r][c];
                        m[r][c] = &v / &prev;
                    }
                }
                continue;
            }
            for c in col + 1..cols {
                let v = &pivot * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = &v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        col += 1;
    }
    rank
}

/// Rank of an integer matrix modulo a prime.
pub fn modular_rank(m: &[Vec<BigInt>], p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let mut v = x % &pb;
                    if v.is_negative() {
                        v += &pb;
                    }
                    let digits = v.to_u64_digits().1;
                    if digits.is_empty() {
                        0
                    } else {
                        digits[0]
                    }
                })
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank >= rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = mod_inv(a[rank][col], p);
        for c in col..cols {
            a[rank][c] = mulmod(a[rank][c], inv, p);
        }
        for r in 0..rows {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for c in col..cols {
                    let sub = mulmod(f, a[rank][c], p);
                    a[r][c] = (a[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Row-reduce in place; returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank >= rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = m[rank][col].clone();
        for c in col..cols {
            let v = &m[rank][c] / &inv;
            m[rank][c] = v;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let v = &m[r][c] - &f * &m[rank][c];
                    m[r][c] = v;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

pub fn rank_rat(mut m: Vec<Vec<Rat>>) -> usize {
    rref(&mut m).len()
}

/// Basis of `{x : M x = 0}` for a rational matrix (columns = unknowns).
pub fn kernel_basis(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if m.is_empty() {
        return vec![];
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let pivots = rref(&mut a);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `A x = b` over the rationals; `None` when inconsistent.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    if rows == 0 {
        return if b.iter().all(|x| x.is_zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    let cols = a[0].len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // inconsistent iff a pivot lands in the augmented column
    if pivots.iter().any(|&c| c == cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

/// Dimension of the span of a set of rational vectors.
pub fn span_dim(vectors: &[Vec<Rat>]) -> usize {
    rank_rat(vectors.to_vec())
}

/// Is `v` contained in the span of `basis`?
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let n = v.len();
    let cols: Vec<Vec<Rat>> = (0..n).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    solve(&cols, v).is_some()
}

/// Basis of `span(u) ∩ span(w)`.
pub fn intersection_basis(u: &[Vec<Rat>], w: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if u.is_empty() || w.is_empty() {
        return vec![];
    }
    let n = u[0].len();
    // kernel of the n x (|u|+|w|) matrix [u^T | -w^T]
    let mut m = vec![vec![Rat::zero(); u.len() + w.len()]; n];
    for (j, uv) in u.iter().enumerate() {
        for i in 0..n {
            m[i][j] = uv[i].clone();
        }
    }
    for (j, wv) in w.iter().enumerate() {
        for i in 0..n {
            m[i][u.len() + j] = -wv[i].clone();
        }
    }
    let ker = kernel_basis(&m);
    let mut builder = SpanBuilder::new();
    let mut indep: Vec<Vec<Rat>> = Vec::new();
    for k in ker {
        let mut v = vec![Rat::zero(); n];
        for (j, uv) in u.iter().enumerate() {
            if !k[j].is_zero() {
                for i in 0..n {
                    let t = &v[i] + &k[j] * &uv[i];
                    v[i] = t;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) && builder.add(&v) {
            indep.push(v);
        }
    }
    indep
}

/// Incremental row-echelon span: feed vectors, keep an independent set.
pub struct SpanBuilder {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new() -> SpanBuilder {
        SpanBuilder {
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current rows; add it when independent.
    /// Returns true if the vector enlarged the span.
    pub fn add(&mut self, v: &[Rat]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (wi, ri) in w.iter_mut().zip(row) {
                    if !ri.is_zero() {
                        let t = &*wi - &f * ri;
                        *wi = t;
                    }
                }
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let lead = w[p].clone();
                for x in w.iter_mut() {
                    let t = &*x / &lead;
                    *x = t;
                }
                self.rows.push(w);
                self.pivots.push(p);
                true
            }
        }
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (wi, ri) in w.iter_mut().zip(row) {
                    if !ri.is_zero() {
                        let t = &*wi - &f * ri;
                        *wi = t;
                    }
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn into_rows(self) -> Vec<Vec<Rat>> {
        self.rows
    }
}

impl Default for SpanBuilder {
    fn default() -> Self {
        Self::new()
    }
}

/// Monic polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(pub Vec<Rat>);

impl Poly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly(vec![Rat::zero()]);
        }
        Poly(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat(i as i64 + 1))
                .collect(),
        )
    }
    fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        v
    }
    fn make_monic(mut v: Vec<Rat>) -> Vec<Rat> {
        v = Self::trim(v);
        let lead = v.last().unwrap().clone();
        if !lead.is_zero() && !lead.is_one() {
            for c in v.iter_mut() {
                let t = &*c / &lead;
                *c = t;
            }
        }
        v
    }
    pub fn rem(&self, div: &Poly) -> Poly {
        let mut r = Self::trim(self.0.clone());
        let d = Self::trim(div.0.clone());
        if d.len() == 1 {
            assert!(!d[0].is_zero(), "polynomial division by zero");
            return Poly(vec![Rat::zero()]);
        }
        let dd = d.len() - 1;
        let dl = d.last().unwrap().clone();
        while r.len() > 1 && r.len() - 1 >= dd && !(r.len() == 1 && r[0].is_zero()) {
            if r.last().unwrap().is_zero() {
                r.pop();
                continue;
            }
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() / &dl;
            for i in 0..d.len() {
                let t = &r[shift + i] - &f * &d[i];
                r[shift + i] = t;
            }
            r = Self::trim(r);
            if r.len() == 1 && r[0].is_zero() {
                break;
            }
        }
        Poly(Self::trim(r))
    }
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = Self::trim(a.0.clone());
        let mut y = Self::trim(b.0.clone());
        while !(y.len() == 1 && y[0].is_zero()) {
            let r = Poly(x.clone()).rem(&Poly(y.clone()));
            x = y;
            y = r.0;
        }
        Poly(Self::make_monic(x))
    }
    pub fn mul(a: &Poly, b: &Poly) -> Poly {
        let mut out = vec![Rat::zero(); a.0.len() + b.0.len() - 1];
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                let t = &out[i + j] + ai * bj;
                out[i + j] = t;
            }
        }
        Poly(Self::trim(out))
    }
    pub fn div_exact(&self, d: &Poly) -> Poly {
        // long division, asserting zero remainder
        let mut r = Self::trim(self.0.clone());
        let dv = Self::trim(d.0.clone());
        let dd = dv.len() - 1;
        let dl = dv.last().unwrap().clone();
        let mut q = vec![Rat::zero(); r.len().saturating_sub(dd)];
        while r.len() - 1 >= dd && !(r.len() == 1 && r[0].is_zero()) {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() / &dl;
            q[shift] = f.clone();
            for i in 0..dv.len() {
                let t = &r[shift + i] - &f * &dv[i];
                r[shift + i] = t;
            }
            r = Self::trim(r);
        }
        assert!(r.iter().all(|c| c.is_zero()), "non-exact polynomial division");
        Poly(Self::trim(q))
    }
    pub fn lcm(a: &Poly, b: &Poly) -> Poly {
        let g = Self::gcd(a, b);
        let prod = Self::mul(a, b);
        Poly(Self::make_monic(prod.div_exact(&g).0))
    }
    pub fn is_squarefree(&self) -> bool {
        let g = Self::gcd(self, &self.derivative());
        g.degree() == 0
    }
}

/// Minimal polynomial of a square rational matrix.
///
/// Computed as the lcm of local minimal polynomials over the standard
/// basis vectors, stopping early once the degree saturates the lcm.
pub fn minimal_polynomial(a: &[Vec<Rat>]) -> Poly {
    let n = a.len();
    let mut m = Poly(vec![Rat::one()]); // 1
    for start in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[start] = Rat::one();
        // check whether m already annihilates v
        if m.degree() > 0 && poly_annihilates(a, &m, &v) {
            continue;
        }
        let local = local_min_poly(a, v);
        m = Poly::lcm(&m, &local);
        if m.degree() == n {
            break;
        }
    }
    m
}

fn mat_vec(a: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    let n = a.len();
    let mut out = vec![Rat::zero(); n];
    for i in 0..n {
        let mut acc = Rat::zero();
        for j in 0..n {
            if !a[i][j].is_zero() && !v[j].is_zero() {
                acc += &a[i][j] * &v[j];
            }
        }
        out[i] = acc;
    }
    out
}

fn poly_annihilates(a: &[Vec<Rat>], p: &Poly, v: &[Rat]) -> bool {
    let mut acc: Vec<Rat> = v.iter().map(|x| x * &p.0[0]).collect();
    let mut cur = v.to_vec();
    for c in p.0.iter().skip(1) {
        cur = mat_vec(a, &cur);
        if !c.is_zero() {
            for i in 0..acc.len() {
                let t = &acc[i] + c * &cur[i];
                acc[i] = t;
            }
        }
    }
    acc.iter().all(|x| x.is_zero())
}

fn local_min_poly(a: &[Vec<Rat>], v: Vec<Rat>) -> Poly {
    let n = a.len();
    // Krylov sequence until linear dependence
    let mut krylov: Vec<Vec<Rat>> = vec![v.clone()];
    loop {
        let next = mat_vec(a, krylov.last().unwrap());
        // solve for coefficients: next = sum c_i krylov[i]
        let cols: Vec<Vec<Rat>> = (0..n)
            .map(|i| krylov.iter().map(|k| k[i].clone()).collect())
            .collect();
        if let Some(c) = solve(&cols, &next) {
            // poly x^k - sum c_i x^i
            let mut coeffs: Vec<Rat> = c.iter().map(|x| -x.clone()).collect();
            coeffs.push(Rat::one());
            return Poly(coeffs);
        }
        krylov.push(next);
        assert!(krylov.len() <= n + 1, "Krylov sequence failed to close");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: Vec<Vec<i64>>) -> Vec<Vec<BigInt>> {
        v.into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect()
    }

    #[test]
    fn bareiss_and_modular_agree() {
        let m = bi(vec![vec![2, 4, 1], vec![1, 2, 0], vec![3, 6, 1]]);
        assert_eq!(bareiss_rank(m.clone()), 2);
        for p in RANK_PRIMES {
            assert_eq!(modular_rank(&m, p), 2);
        }
    }

    #[test]
    fn kernel_of_rank_one() {
        let m: Vec<Vec<Rat>> = vec![vec![rat(1), rat(2), rat(3)]];
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = &v[0] + rat(2) * &v[1] + rat(3) * &v[2];
            assert!(s.is_zero());
        }
    }

    #[test]
    fn minpoly_squarefree_of_diagonalizable() {
        // [[0,1],[1,0]] has min poly x^2-1 (squarefree)
        let a = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]];
        let m = minimal_polynomial(&a);
        assert_eq!(m.degree(), 2);
        assert!(m.is_squarefree());
        // nilpotent [[0,1],[0,0]]: x^2, not squarefree
        let n = vec![vec![rat(0), rat(1)], vec![rat(0), rat(0)]];
        let mn = minimal_polynomial(&n);
        assert_eq!(mn.degree(), 2);
        assert!(!mn.is_squarefree());
    }

    #[test]
    fn intersection_of_planes() {
        let u = vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
        ];
        let w = vec![
            vec![rat(0), rat(1), rat(1)],
            vec![rat(0), rat(0), rat(1)],
        ];
        let i = intersection_basis(&u, &w);
        assert_eq!(i.len(), 1);
        assert!(i[0][0].is_zero());
        assert!(!i[0][1].is_zero());
        assert!(i[0][2].is_zero());
    }
}
