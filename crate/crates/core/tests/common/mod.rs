//! Independent brute-force oracles shared by the integration tests and the
//! acceptance suite. Nothing here calls into the library's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

/// Points doubled so that lattice points and cell centers are integral.
fn lattice(rows: &[usize]) -> Vec<(i64, i64)> {
    rows.iter()
        .enumerate()
        .map(|(i, &r)| (2 * i as i64, 2 * r as i64))
        .collect()
}

fn centers(rows: &[usize]) -> Vec<(i64, i64)> {
    rows.iter()
        .enumerate()
        .map(|(i, &r)| (2 * i as i64 + 1, 2 * r as i64 + 1))
        .collect()
}

fn count_sw(p: &[(i64, i64)], q: &[(i64, i64)]) -> i64 {
    p.iter()
        .map(|a| q.iter().filter(|b| a.0 < b.0 && a.1 < b.1).count() as i64)
        .sum()
}

/// `2 J(P, Q)`.
fn j2(p: &[(i64, i64)], q: &[(i64, i64)]) -> i64 {
    count_sw(p, q) + count_sw(q, p)
}

/// Maslov grading with respect to a marker set, straight from
/// `M = J(x,x) - 2J(x,O) + J(O,O) + 1`.
fn maslov(x: &[(i64, i64)], m: &[(i64, i64)]) -> i64 {
    let twice = j2(x, x) - 2 * j2(x, m) + j2(m, m) + 2;
    assert_eq!(twice % 2, 0);
    twice / 2
}

/// `(M, 2A)` of a state.
pub fn grade(xs: &[usize], os: &[usize], rows: &[usize]) -> (i64, i64) {
    let n = rows.len() as i64;
    let x = lattice(rows);
    let mo = maslov(&x, &centers(os));
    let mx = maslov(&x, &centers(xs));
    (mo, mo - mx - (n - 1))
}

fn in_half_open_cyclic(v: usize, lo: usize, hi: usize, n: usize) -> bool {
    let len = (hi + n - lo) % n;
    (v + n - lo) % n < len
}

/// Boundary of a state in the fully blocked complex, by direct rectangle
/// enumeration on the torus.
pub fn boundary(xs: &[usize], os: &[usize], rows: &[usize]) -> Vec<Vec<usize>> {
    let n = rows.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut count = 0;
            for (left, right) in [(i, j), (j, i)] {
                // lower-left corner (left, rows[left]), upper-right (right, rows[right])
                let (bottom, top) = (rows[left], rows[right]);
                let col_in = |c: usize| in_half_open_cyclic(c, left, right, n);
                let row_in = |r: usize| in_half_open_cyclic(r, bottom, top, n);
                let marked = (0..n).any(|c| col_in(c) && (row_in(xs[c]) || row_in(os[c])));
                let occupied =
                    (0..n).any(|c| c != left && col_in(c) && rows[c] != bottom && row_in(rows[c]));
                if !marked && !occupied {
                    count += 1;
                }
            }
            if count % 2 == 1 {
                let mut y = rows.to_vec();
                y.swap(i, j);
                out.push(y);
            }
        }
    }
    out.sort();
    out
}

/// Rank over GF(2) of a dense bit matrix stored row-wise.
pub fn dense_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let width = rows.first().map_or(0, |r| r.len() * 64);
    let mut rank = 0;
    for col in 0..width {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Tilde grid homology keyed by `(M, 2A)`, from dense boundary matrices
/// between consecutive Maslov gradings.
pub fn dense_homology(xs: &[usize], os: &[usize]) -> BTreeMap<(i64, i64), u64> {
    let n = xs.len();
    let states = permutations(n);
    let grades: Vec<(i64, i64)> = states.iter().map(|s| grade(xs, os, s)).collect();
    let mut pieces: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (k, g) in grades.iter().enumerate() {
        pieces.entry(*g).or_default().push(k);
    }
    let index: HashMap<&Vec<usize>, usize> =
        states.iter().enumerate().map(|(k, s)| (s, k)).collect();
    // rank of the boundary out of each piece
    let mut out_rank: HashMap<(i64, i64), usize> = HashMap::new();
    for (&gr, members) in &pieces {
        let target = (gr.0 - 1, gr.1);
        let Some(tgt) = pieces.get(&target) else {
            out_rank.insert(gr, 0);
            continue;
        };
        let pos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(p, &k)| (k, p)).collect();
        let words = tgt.len().div_ceil(64);
        let matrix: Vec<Vec<u64>> = members
            .iter()
            .map(|&k| {
                let mut row = vec![0u64; words];
                for y in boundary(xs, os, &states[k]) {
                    let p = pos[&index[&y]];
                    row[p / 64] ^= 1 << (p % 64);
                }
                row
            })
            .collect();
        out_rank.insert(gr, dense_rank(matrix));
    }
    pieces
        .iter()
        .filter_map(|(&gr, members)| {
            let incoming = out_rank.get(&(gr.0 + 1, gr.1)).copied().unwrap_or(0);
            let h = members.len() - out_rank[&gr] - incoming;
            (h > 0).then_some((gr, h as u64))
        })
        .collect()
}

pub fn components(xs: &[usize], os: &[usize]) -> usize {
    let n = xs.len();
    let mut o_col = vec![0; n];
    for (c, &r) in os.iter().enumerate() {
        o_col[r] = c;
    }
    let mut seen = vec![false; n];
    let mut k = 0;
    for s in 0..n {
        if !seen[s] {
            k += 1;
            let mut c = s;
            while !seen[c] {
                seen[c] = true;
                c = o_col[xs[c]];
            }
        }
    }
    k
}

/// A uniformly random knot grid of size `n`.
pub fn random_knot_grid<R: Rng>(rng: &mut R, n: usize) -> (Vec<usize>, Vec<usize>) {
    loop {
        let mut xs: Vec<usize> = (0..n).collect();
        let mut os: Vec<usize> = (0..n).collect();
        xs.shuffle(rng);
        os.shuffle(rng);
        if xs.iter().zip(&os).all(|(a, b)| a != b) && components(&xs, &os) == 1 {
            return (xs, os);
        }
    }
}

/// Number of irreducible factors of a GF(2)[t] polynomial (bit `i` is the
/// coefficient of `t^i`, constant term nonzero or not), by trial division.
pub fn gf2_factor_count(mut p: u128) -> u64 {
    assert_ne!(p, 0);
    let deg = |q: u128| 127 - q.leading_zeros() as i64;
    let rem = |mut a: u128, b: u128| {
        while a != 0 && deg(a) >= deg(b) {
            a ^= b << (deg(a) - deg(b));
        }
        a
    };
    let div = |mut a: u128, b: u128| {
        let mut q = 0u128;
        while a != 0 && deg(a) >= deg(b) {
            let s = deg(a) - deg(b);
            q |= 1 << s;
            a ^= b << s;
        }
        q
    };
    let mut count = 0;
    let mut d: u128 = 2;
    while deg(p) > 0 {
        if 2 * deg(d) > deg(p) {
            return count + 1;
        }
        if rem(p, d) == 0 {
            p = div(p, d);
            count += 1;
        } else {
            d += 1;
        }
    }
    count
}

/// Brute-force projective integrality on raw `(numerators, denominator, basis)`
/// terms: cancel repeated terms mod 2, then try every surviving exponent as
/// the shift.
pub fn brute_projectively_integral(terms: &[(Vec<i64>, i64, usize)]) -> bool {
    let mut live: HashSet<(Vec<(i64, i64)>, usize)> = HashSet::new();
    for (nums, den, idx) in terms {
        let key: Vec<(i64, i64)> = nums
            .iter()
            .map(|&a| {
                let g = num_gcd(a.abs(), *den);
                (a / g, den / g)
            })
            .collect();
        if !live.remove(&(key.clone(), *idx)) {
            live.insert((key, *idx));
        }
    }
    let exps: Vec<&Vec<(i64, i64)>> = live.iter().map(|(e, _)| e).collect();
    exps.is_empty()
        || exps.iter().any(|shift| {
            exps.iter().all(|e| {
                e.iter()
                    .zip(shift.iter())
                    .all(|(&(a, b), &(c, d))| (a * d - c * b) % (b * d) == 0)
            })
        })
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        num_gcd(b, a % b)
    }
}

/// A random braid word `(strands, letters)`.
pub fn random_braid<R: Rng>(rng: &mut R, max_strands: usize, max_len: usize) -> (usize, Vec<i64>) {
    let n = rng.gen_range(2..=max_strands);
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i64);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    (n, letters)
}

/// Seifert matrix of the torus knot `T(2, 2g+1)`.
pub fn torus_seifert(g: usize) -> Vec<Vec<i64>> {
    let m = 2 * g;
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| match j as i64 - i as i64 {
                    0 => -1,
                    1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Block sum of Seifert matrices (a connected sum).
pub fn block_sum(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (m, n) = (a.len(), b.len());
    (0..m + n)
        .map(|i| {
            (0..m + n)
                .map(|j| match (i < m, j < m) {
                    (true, true) => a[i][j],
                    (false, false) => b[i - m][j - m],
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Coefficients `c_0..c_d` of a random polynomial of degree in `degrees` with nonzero constant and
/// leading terms, entries in `-bound..=bound` (or `0..=1` when `bound == 1`
/// and `binary`).
pub fn random_coeffs<R: Rng>(
    rng: &mut R,
    degrees: std::ops::RangeInclusive<usize>,
    bound: i64,
    binary: bool,
) -> Vec<i64> {
    let degree = rng.gen_range(degrees);
    loop {
        let c: Vec<i64> = (0..=degree)
            .map(|_| {
                if binary {
                    rng.gen_range(0..=1)
                } else {
                    rng.gen_range(-bound..=bound)
                }
            })
            .collect();
        if c[0] != 0 && c[degree] != 0 {
            return c;
        }
    }
}

/// Whether an integer polynomial of degree 1..=3 is irreducible over Q,
/// via the rational root test.
pub fn low_degree_irreducible(c: &[i64]) -> bool {
    let d = c.len() - 1;
    assert!((1..=3).contains(&d));
    if d == 1 {
        return true;
    }
    let divisors = |v: i64| (1..=v.abs()).filter(move |k| v % k == 0);
    for p in divisors(c[0]) {
        for q in divisors(c[d]) {
            for s in [p, -p] {
                // c(s/q) * q^d
                let val: i128 = c
                    .iter()
                    .enumerate()
                    .map(|(i, &ci)| {
                        ci as i128 * (s as i128).pow(i as u32) * (q as i128).pow((d - i) as u32)
                    })
                    .sum();
                if val == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Integer polynomial product on coefficient vectors.
pub fn mul_coeffs(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// A random product of elementary integer matrices.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = rng.gen_range(-2..=2);
                let src = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(src) {
                    *x += k * y;
                }
            }
            1 => m.swap(i, j),
            _ => m[i].iter_mut().for_each(|x| *x = -*x),
        }
    }
    m
}

/// Raw terms `(numerators, common denominator, basis index)` of a random
/// perturbed element with denominator at most 12, and the basis size. Some
/// terms are nudged off the common coset and some repeated.
pub fn random_perturbed_terms<R: Rng>(
    rng: &mut R,
    dim: usize,
) -> (usize, Vec<(Vec<i64>, i64, usize)>) {
    let den = rng.gen_range(1..=12);
    let shift: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..den)).collect();
    let basis = rng.gen_range(1..=3);
    let mut raw = Vec::new();
    for _ in 0..rng.gen_range(0..=6) {
        let mut nums: Vec<i64> = shift
            .iter()
            .map(|s| s + den * rng.gen_range(-3..=3))
            .collect();
        if rng.gen_bool(0.3) {
            let k = rng.gen_range(0..dim);
            nums[k] += rng.gen_range(1..den.max(2));
        }
        raw.push((nums, den, rng.gen_range(0..basis)));
    }
    if !raw.is_empty() && rng.gen_bool(0.3) {
        let t = raw[rng.gen_range(0..raw.len())].clone();
        raw.push(t);
    }
    (basis, raw)
}
