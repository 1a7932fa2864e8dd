//! Factorization over Q: Yun squarefree decomposition, then Zassenhaus on
//! each primitive squarefree part (factor mod a good prime, Hensel lift,
//! recombine subsets).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modp::{self, FpPoly};

type ZPoly = Vec<BigInt>;
type QPoly = Vec<BigRational>;

const CANDIDATE_PRIMES: usize = 6;

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn deg<T>(v: &[T]) -> usize {
    v.len().saturating_sub(1)
}

// ---- rational polynomials -------------------------------------------------

fn q_monic(f: &QPoly) -> QPoly {
    let lc = f.last().expect("nonzero").clone();
    f.iter().map(|c| c / &lc).collect()
}

fn q_div_rem(f: &QPoly, d: &QPoly) -> (QPoly, QPoly) {
    let dd = deg(d);
    let lc = d.last().expect("nonzero divisor").clone();
    let mut r = f.clone();
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - dd];
    for i in (dd..r.len()).rev() {
        let c = &r[i] / &lc;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            r[i - dd + j] -= &c * dj;
        }
        q[i - dd] = c;
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

/// Monic gcd over Q, computed as a primitive remainder sequence over Z so
/// that coefficients stay small.
fn q_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if b.is_empty() {
        return if a.is_empty() { Vec::new() } else { q_monic(a) };
    }
    if a.is_empty() {
        return q_monic(b);
    }
    let (mut a, mut b) = (primitive_from_q(a), primitive_from_q(b));
    while !b.is_empty() {
        let r = z_prem_primitive(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    q_monic(&a.into_iter().map(BigRational::from_integer).collect())
}

/// Pseudo-remainder of `a` by `b` (`lc(b)^k a mod b` over Z), made primitive.
fn z_prem_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let lc = b.last().expect("nonzero divisor");
    let db = deg(b);
    let mut r = a.clone();
    while !r.is_empty() && deg(&r) >= db {
        let k = deg(&r) - db;
        let c = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        trim(&mut r);
    }
    if r.is_empty() {
        r
    } else {
        primitive(&r)
    }
}

/// Whether `f` reduces to a squarefree polynomial of the same degree modulo
/// one of a few small primes, which proves it squarefree over Q.
fn squarefree_mod_some_prime(f: &QPoly) -> bool {
    let z = primitive_from_q(f);
    let lc = z.last().unwrap().clone();
    small_primes()
        .filter(|&p| !(&lc % BigInt::from(p)).is_zero())
        .take(CANDIDATE_PRIMES)
        .any(|p| {
            let fp = to_fp(&z, p);
            fp.gcd(&fp.derivative()).degree() == Some(0)
        })
}

fn q_derivative(f: &QPoly) -> QPoly {
    let mut d: QPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut d);
    d
}

/// Yun's algorithm over a field of characteristic zero, for monic `f`.
fn q_squarefree(f: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    if deg(f) == 0 {
        return out;
    }
    if squarefree_mod_some_prime(f) {
        return vec![(f.clone(), 1)];
    }
    let df = q_derivative(f);
    let a0 = q_gcd(f, &df);
    let mut b = q_div_rem(f, &a0).0;
    let mut c = q_div_rem(&df, &a0).0;
    let mut d = sub_q(&c, &q_derivative(&b));
    let mut i = 1;
    while deg(&b) > 0 {
        let a = q_gcd(&b, &d);
        b = q_div_rem(&b, &a).0;
        c = q_div_rem(&d, &a).0;
        if deg(&a) > 0 {
            out.push((q_monic(&a), i));
        }
        i += 1;
        d = sub_q(&c, &q_derivative(&b));
    }
    out
}

fn sub_q(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

// ---- integer polynomials --------------------------------------------------

fn content(f: &ZPoly) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive integer polynomial with positive leading coefficient,
/// proportional to `f`.
fn primitive_from_q(f: &QPoly) -> ZPoly {
    let den = f.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z: ZPoly = f
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    primitive(&z)
}

fn primitive(f: &ZPoly) -> ZPoly {
    let mut g = content(f);
    if f.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    f.iter().map(|c| c / &g).collect()
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division over Z; `None` if `d` does not divide `f`.
fn z_div_exact(f: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let dd = deg(d);
    let lc = d.last()?;
    let mut r = f.clone();
    if r.len() <= dd {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (dd..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rem) = r[i].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, dj) in d.iter().enumerate() {
            r[i - dd + j] -= &c * dj;
        }
        q[i - dd] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

fn to_fp(f: &ZPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(
        p,
        f.iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                r.to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect(),
    )
}

fn from_fp(f: &FpPoly) -> ZPoly {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce_mod(f: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = f.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

fn symmetric_mod(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m >> 1u32;
    let mut out: ZPoly = f
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn z_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out: ZPoly = (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(BigInt::zero)
                - b.get(i).cloned().unwrap_or_else(BigInt::zero)
        })
        .collect();
    trim(&mut out);
    out
}

fn z_add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out: ZPoly = (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(BigInt::zero)
                + b.get(i).cloned().unwrap_or_else(BigInt::zero)
        })
        .collect();
    trim(&mut out);
    out
}

/// Extended gcd over GF(p): `s a + t b = 1` for coprime `a`, `b`.
fn ext_gcd(a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
    let p = a.modulus();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
    let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    // r0 is a nonzero constant for coprime inputs
    let k = modp::inv_mod(r0.coeffs()[0], p);
    (s0.scale(k), t0.scale(k))
}

/// Two-factor linear Hensel lifting: from `f = g h (mod p)`, `h` monic,
/// produce `G`, `H` with `f = G H (mod p^k)`, `H` monic and
/// `G = g`, `H = h (mod p)`.
fn hensel_lift(f: &ZPoly, g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (s, t) = ext_gcd(g, h);
    let pb = BigInt::from(p);
    let mut big_g = from_fp(g);
    let mut big_h = from_fp(h);
    // G carries the leading coefficient of f exactly
    let lc = f.last().unwrap().clone();
    *big_g.last_mut().unwrap() = lc;
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = z_sub(f, &z_mul(&big_g, &big_h));
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        debug_assert!(diff.iter().all(|c| (c % &pj).is_zero()));
        let e = to_fp(&e, p);
        let (q, dh) = e.mul(&s).div_rem(h);
        let dg = e.mul(&t).add(&q.mul(g));
        let scale = |v: &FpPoly| -> ZPoly { from_fp(v).iter().map(|c| c * &pj).collect() };
        big_g = z_add(&big_g, &scale(&dg));
        big_h = z_add(&big_h, &scale(&dh));
        pj *= &pb;
        big_g = reduce_mod_keep_lead(&big_g, &pj);
        big_h = reduce_mod(&big_h, &pj);
    }
    (big_g, big_h)
}

fn reduce_mod_keep_lead(f: &ZPoly, m: &BigInt) -> ZPoly {
    let lead = f.last().cloned();
    let mut out: ZPoly = f.iter().map(|c| c.mod_floor(m)).collect();
    if let (Some(l), Some(slot)) = (lead, out.last_mut()) {
        *slot = l;
    }
    out
}

/// Lifts `f = lc * prod(factors) (mod p)` to monic factors mod `p^k`.
fn multifactor_lift(f: &ZPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(k);
    let mut out = Vec::with_capacity(factors.len());
    let mut target = f.clone();
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            // remaining target is lc * last factor; make monic
            out.push(make_monic_mod(&target, &modulus));
            break;
        }
        let g = factors[i].clone();
        let h = factors[i + 1..]
            .iter()
            .fold(FpPoly::one(p), |a, b| a.mul(b));
        // lift target = (lc g) * h with h monic
        let lc = target.last().unwrap().clone();
        let lc_mod = to_fp(&[lc].to_vec(), p)
            .coeffs()
            .first()
            .copied()
            .unwrap_or(0);
        let g_lc = g.scale(lc_mod);
        let (big_g, big_h) = hensel_lift(&target, &g_lc, &h, p, k);
        out.push(make_monic_mod(&big_g, &modulus));
        target = big_h;
    }
    out
}

fn make_monic_mod(f: &ZPoly, m: &BigInt) -> ZPoly {
    let lc = f.last().unwrap().mod_floor(m);
    let inv = mod_inverse(&lc, m).expect("leading coefficient coprime to p");
    reduce_mod(&f.iter().map(|c| c * &inv).collect(), m)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Coefficient bound for any factor of `lc(f) * f`-scaled candidates.
fn coefficient_bound(f: &ZPoly) -> BigInt {
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let lc = f.last().unwrap().abs();
    (BigInt::one() << deg(f)) * norm1 * lc
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Irreducible factors of a primitive squarefree integer polynomial with
/// positive leading coefficient and degree >= 1.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    if deg(f) == 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    // pick the good prime (of a few candidates) with fewest modular factors
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if fp.degree() != Some(deg(f)) || fp.gcd(&fp.derivative()).degree() != Some(0) {
            continue;
        }
        let fs = modp::berlekamp(&fp.monic());
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried == CANDIDATE_PRIMES || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("some prime is good for a squarefree polynomial");
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let bound = coefficient_bound(f) * 2u32;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let mut lifted = multifactor_lift(f, &modular, p, k);
    recombine(f.clone(), &mut lifted, &pk)
}

fn recombine(mut f: ZPoly, lifted: &mut Vec<ZPoly>, pk: &BigInt) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in Subsets::new(lifted.len(), size) {
            let lc = f.last().unwrap().clone();
            let mut cand = vec![lc];
            for &i in &subset {
                cand = reduce_mod(&z_mul(&cand, &lifted[i]), pk);
            }
            let cand = primitive(&symmetric_mod(&cand, pk));
            if let Some(q) = z_div_exact(&f, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                f = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if deg(&f) > 0 {
        found.push(primitive(&f));
    }
    found
}

/// k-subsets of 0..n in lexicographic order.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Factors a nonzero ordinary polynomial over Q (coefficients low to high)
/// into monic irreducibles with multiplicity. The leading coefficient is
/// the remaining unit.
pub(crate) fn factor_rational(f: &[BigRational]) -> Vec<(QPoly, u32)> {
    let f: QPoly = f.to_vec();
    let mut out = Vec::new();
    for (part, m) in q_squarefree(&q_monic(&f)) {
        let z = primitive_from_q(&part);
        for g in zassenhaus(&z) {
            let q: QPoly = g
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect();
            out.push((q_monic(&q), m));
        }
    }
    out.sort_by(|a, b| cmp_qpoly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    out
}

pub(crate) fn cmp_qpoly(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> ZPoly {
        c.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn qp(c: &[i64]) -> QPoly {
        c.iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect()
    }

    fn count(f: &[i64]) -> u32 {
        factor_rational(&qp(f)).iter().map(|(_, m)| m).sum()
    }

    #[test]
    fn difference_of_squares() {
        let fs = factor_rational(&qp(&[-1, 0, 1]));
        assert_eq!(fs, vec![(qp(&[-1, 1]), 1), (qp(&[1, 1]), 1)]);
    }

    #[test]
    fn x4_plus_1_stays_irreducible() {
        // reducible modulo every prime, so recombination must glue it back
        assert_eq!(count(&[1, 0, 0, 0, 1]), 1);
    }

    #[test]
    fn cyclotomic_product() {
        // x^12 - 1 = prod_{d | 12} Phi_d: 6 irreducible factors
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        assert_eq!(count(&c), 6);
    }

    #[test]
    fn non_monic_factors() {
        // (2x + 3)(3x^2 - 5) = 6x^3 + 9x^2 - 10x - 15
        let fs = factor_rational(&qp(&[-15, -10, 9, 6]));
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn repeated_factors() {
        // (x^2 - 3x + 1)^2 (x + 2)^3
        let a = zp(&[1, -3, 1]);
        let b = zp(&[2, 1]);
        let f = z_mul(&z_mul(&a, &a), &z_mul(&b, &z_mul(&b, &b)));
        let fs = factor_rational(
            &f.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect::<Vec<_>>(),
        );
        assert_eq!(fs, vec![(qp(&[2, 1]), 3), (qp(&[1, -3, 1]), 2)]);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 (minimal polynomial of sqrt2 + sqrt3)
        assert_eq!(count(&[1, 0, -10, 0, 1]), 1);
    }

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(Subsets::new(5, 2).count(), 10);
        assert_eq!(Subsets::new(4, 0).count(), 1);
        assert_eq!(Subsets::new(2, 3).count(), 0);
    }
}
