//! Dense univariate polynomials over a small prime field GF(p), with
//! squarefree decomposition and Berlekamp splitting.
//!
//! `p` stays below 2^31 so products of two residues fit in a `u64`.

use std::cmp::Ordering;

/// Coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod_u64(a, p - 2, p)
}

fn pow_mod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        debug_assert!((2..(1 << 31)).contains(&p));
        let mut out = Self {
            p,
            c: c.into_iter().map(|v| v % p).collect(),
        };
        out.trim();
        out
    }

    pub fn zero(p: u64) -> Self {
        Self { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(
            self.p,
            self.c.iter().map(|v| v * (k % self.p) % self.p).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let c = (0..n)
            .map(|i| {
                (self.c.get(i).copied().unwrap_or(0) + other.c.get(i).copied().unwrap_or(0))
                    % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| {
                (self.c.get(i).copied().unwrap_or(0) + p - other.c.get(i).copied().unwrap_or(0)) % p
            })
            .collect();
        Self::new(p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Self::new(p, c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.degree().unwrap();
        let inv = inv_mod(d.lead(), p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = r[i] * inv % p;
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            for (j, &dj) in d.c.iter().enumerate() {
                let k = i - dd + j;
                r[k] = (r[k] + p - coef * dj % p) % p;
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &v)| (i as u64 % p) * v % p)
            .collect();
        Self::new(p, c)
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// For `f = g(x^p)` returns `g` (every element of GF(p) is its own p-th
    /// root).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        debug_assert!(self
            .c
            .iter()
            .enumerate()
            .all(|(i, &v)| v == 0 || i % p == 0));
        Self::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    /// Canonical order: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree monic parts with their multiplicities.
pub(crate) fn squarefree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.modulus();
    let f = f.monic();
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree(&f.pth_root()) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, m) in squarefree(&c.pth_root()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Basis of `{ v : v^p = v mod f }` (the Berlekamp subalgebra), as
/// polynomials of degree below `deg f`.
fn berlekamp_kernel(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.modulus();
    let n = f.degree().expect("nonzero");
    // rows[i] = x^(i p) mod f
    let xp = FpPoly::x(p).pow_mod(p, f);
    let mut rows = Vec::with_capacity(n);
    let mut cur = FpPoly::one(p);
    for _ in 0..n {
        let mut r = cur.coeffs().to_vec();
        r.resize(n, 0);
        rows.push(r);
        cur = cur.mul_mod(&xp, f);
    }
    // A = Q^T - I; solve A v = 0.
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let v = rows[i][j];
                    if i == j {
                        (v + p - 1) % p
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    nullspace(&mut a, p)
        .into_iter()
        .map(|v| FpPoly::new(p, v))
        .collect()
}

/// Kernel of an `n x n` matrix over GF(p) via reduced row echelon form.
fn nullspace(a: &mut [Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][col], p);
        for v in a[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][col] != 0 {
                let k = a[i][col];
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + p - k * y % p) % p;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (ri, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[ri][fc]) % p;
            }
            v
        })
        .collect()
}

/// Splits a monic squarefree polynomial into its monic irreducible factors.
/// Deterministic: factors are refined by `gcd(g, v - s)` over the kernel
/// basis `v` and all constants `s`.
pub(crate) fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let f = f.monic();
    match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![f],
        _ => {}
    }
    let p = f.modulus();
    let kernel = berlekamp_kernel(&f);
    let target = kernel.len();
    let mut factors = vec![f];
    for v in &kernel {
        if factors.len() == target {
            break;
        }
        if v.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(target);
        for g in factors {
            if g.degree().unwrap_or(0) <= 1 {
                next.push(g);
                continue;
            }
            let mut rest = g;
            for s in 0..p {
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
                let h = rest.gcd(&v.sub(&FpPoly::new(p, vec![s])));
                let dh = h.degree().unwrap_or(0);
                if dh > 0 && dh < rest.degree().unwrap() {
                    rest = rest.div_rem(&h).0.monic();
                    next.push(h);
                }
            }
            next.push(rest);
        }
        factors = next;
    }
    debug_assert_eq!(factors.len(), target);
    factors.sort_by(FpPoly::canonical_cmp);
    factors
}

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicity, in canonical order.
pub(crate) fn factor(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let mut out: Vec<(FpPoly, u32)> = squarefree(f)
        .into_iter()
        .flat_map(|(g, m)| berlekamp(&g).into_iter().map(move |h| (h, m)))
        .collect();
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(bits: &[u64]) -> FpPoly {
        FpPoly::new(2, bits.to_vec())
    }

    fn expand(p: u64, fs: &[(FpPoly, u32)]) -> FpPoly {
        fs.iter().fold(FpPoly::one(p), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn gf2_square_of_trinomial() {
        // t^4 + t^2 + 1 = (t^2 + t + 1)^2
        let f = f2(&[1, 0, 1, 0, 1]);
        assert_eq!(factor(&f), vec![(f2(&[1, 1, 1]), 2)]);
    }

    #[test]
    fn gf2_cube() {
        let g = f2(&[1, 1, 1]);
        let f = g.mul(&g).mul(&g);
        assert_eq!(factor(&f), vec![(g, 3)]);
    }

    #[test]
    fn gf2_splits_linear_factors() {
        // t^2 + 1 = (t + 1)^2, t^3 + t = t (t + 1)^2
        assert_eq!(factor(&f2(&[1, 0, 1])), vec![(f2(&[1, 1]), 2)]);
        assert_eq!(
            factor(&f2(&[0, 1, 0, 1])),
            vec![(f2(&[0, 1]), 1), (f2(&[1, 1]), 2)]
        );
    }

    #[test]
    fn gf2_degree_fifteen_product() {
        // x^15 - 1 over GF(2) has 5 irreducible factors (degrees 1,2,4,4,4).
        let mut c = vec![0u64; 16];
        c[0] = 1;
        c[15] = 1;
        let f = FpPoly::new(2, c);
        let fs = factor(&f);
        let mut degs: Vec<usize> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2, 4, 4, 4]);
        assert_eq!(expand(2, &fs), f);
    }

    #[test]
    fn gf5_factorization_reexpands() {
        // x^4 + 4 = x^4 - 1 splits into four linear factors over GF(5)
        let f = FpPoly::new(5, vec![4, 0, 0, 0, 1]);
        let fs = factor(&f);
        assert_eq!(fs.len(), 4);
        assert_eq!(expand(5, &fs), f);
    }

    #[test]
    fn gf3_pth_power() {
        // (x + 1)^3 = x^3 + 1 over GF(3)
        let f = FpPoly::new(3, vec![1, 0, 0, 1]);
        assert_eq!(factor(&f), vec![(FpPoly::new(3, vec![1, 1]), 3)]);
    }
}
