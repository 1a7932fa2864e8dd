//! Alexander polynomials of braid closures (reduced Burau) and of Seifert
//! matrices, symmetric normalization, connected sums and factor counts.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::polyalg::{omega_ring, LaurentPoly, OmegaValue, PolyError, Ring, MAX_FACTOR_DEGREE};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("closure has {components} components, not a knot")]
    NotAKnot { components: usize },
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifertMatrix(String),
    #[error("polynomial is not normalized (symmetric with value 1 at t = 1): {0}")]
    NotNormalized(String),
    #[error("inexact division while normalizing (internal error)")]
    InexactDivision,
    #[error("degree span {span} exceeds the cap {cap}")]
    DegreeTooLarge { span: u64, cap: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<BraidError> for AlexanderError {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::NotAKnot { components } => AlexanderError::NotAKnot { components },
            other => AlexanderError::InvalidSeifertMatrix(other.to_string()),
        }
    }
}

type Matrix = Vec<Vec<LaurentPoly>>;

fn constant(c: i64) -> LaurentPoly {
    LaurentPoly::from_coeffs(Ring::Int, 0, &[c])
}

fn monomial(c: i64, e: i64) -> LaurentPoly {
    LaurentPoly::monomial(Ring::Int, vec![e], c)
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| constant(i64::from(i == j))).collect())
        .collect()
}

/// Reduced Burau matrix, `(n-1) x (n-1)`, of `σ_i^{±1}` (1-based `i`).
///
/// The generator acts on the 3x3 window at rows `i-2..=i` by
/// `[[1, t, 0], [0, -t, 0], [0, 1, 1]]` (inverse
/// `[[1, 1, 0], [0, -t^-1, 0], [0, t^-1, 1]]`), clipped to the matrix.
pub fn burau_generator(n: usize, letter: i64) -> Vec<Vec<LaurentPoly>> {
    let m = n - 1;
    let i = letter.unsigned_abs() as i64;
    let block: [[LaurentPoly; 3]; 3] = if letter > 0 {
        [
            [constant(1), monomial(1, 1), constant(0)],
            [constant(0), monomial(-1, 1), constant(0)],
            [constant(0), constant(1), constant(1)],
        ]
    } else {
        [
            [constant(1), constant(1), constant(0)],
            [constant(0), monomial(-1, -1), constant(0)],
            [constant(0), monomial(1, -1), constant(1)],
        ]
    };
    let mut out = identity(m);
    let base = i - 2;
    for (bi, row) in block.iter().enumerate() {
        for (bj, v) in row.iter().enumerate() {
            let (r, c) = (base + bi as i64, base + bj as i64);
            if (0..m as i64).contains(&r) && (0..m as i64).contains(&c) {
                out[r as usize][c as usize] = v.clone();
            }
        }
    }
    out
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(constant(0), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// The reduced Burau image of a braid word.
pub fn burau_matrix(b: &BraidWord) -> Vec<Vec<LaurentPoly>> {
    let m = b.strands() - 1;
    b.letters().iter().fold(identity(m), |acc, &g| {
        mat_mul(&acc, &burau_generator(b.strands(), g))
    })
}

/// Determinant over `Z[t, t^-1]` by fraction-free elimination.
pub fn determinant(a: &[Vec<LaurentPoly>]) -> Result<LaurentPoly, AlexanderError> {
    let n = a.len();
    if n == 0 {
        return Ok(constant(1));
    }
    let mut a: Matrix = a.to_vec();
    let mut negate = false;
    let mut prev = constant(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(constant(0)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .ok_or(AlexanderError::InexactDivision)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// Shifts to a symmetric polynomial and fixes the sign so that `p(1) = 1`.
pub fn normalize(p: &LaurentPoly) -> Result<LaurentPoly, AlexanderError> {
    let c = p
        .centered()
        .ok_or_else(|| AlexanderError::NotNormalized(format!("{p} has odd span")))?;
    let at_one = c.eval(1);
    let c = if at_one == -BigRational::one() {
        -&c
    } else if at_one.is_one() {
        c
    } else {
        return Err(AlexanderError::NotNormalized(format!(
            "{p} has |p(1)| = {}",
            at_one.abs()
        )));
    };
    if !c.is_symmetric() {
        return Err(AlexanderError::NotNormalized(format!(
            "{p} is not symmetric"
        )));
    }
    check_cap(&c)?;
    Ok(c)
}

fn check_cap(p: &LaurentPoly) -> Result<(), AlexanderError> {
    let span = p.span().unwrap_or(0);
    if span > MAX_FACTOR_DEGREE {
        return Err(AlexanderError::DegreeTooLarge {
            span,
            cap: MAX_FACTOR_DEGREE,
        });
    }
    Ok(())
}

/// Whether `p` is symmetric with `p(1) = 1`.
pub fn is_normalized(p: &LaurentPoly) -> bool {
    p.is_univariate() && p.is_symmetric() && p.eval(1).is_one()
}

/// `Δ(t) ≐ det(I - ρ(b)) (1 - t) / (1 - t^n)`, normalized.
pub fn alexander_from_braid(b: &BraidWord) -> Result<LaurentPoly, AlexanderError> {
    b.require_knot()?;
    let m = b.strands() - 1;
    let rho = burau_matrix(b);
    let diff: Matrix = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| &constant(i64::from(i == j)) - &rho[i][j])
                .collect()
        })
        .collect();
    let det = determinant(&diff)?;
    let num = &det * &LaurentPoly::from_coeffs(Ring::Int, 0, &[1, -1]);
    let mut den = vec![0i64; b.strands() + 1];
    den[0] = 1;
    den[b.strands()] = -1;
    let den = LaurentPoly::from_coeffs(Ring::Int, 0, &den);
    let q = num.div_exact(&den).ok_or(AlexanderError::InexactDivision)?;
    normalize(&q)
}

/// `det(V - t V^T)`, normalized. `V` must be square of even size with
/// `det(V - V^T) = ±1`.
pub fn alexander_from_seifert(v: &[Vec<i64>]) -> Result<LaurentPoly, AlexanderError> {
    let n = v.len();
    if v.iter().any(|r| r.len() != n) {
        return Err(AlexanderError::InvalidSeifertMatrix(
            "matrix is not square".into(),
        ));
    }
    if !n.is_multiple_of(2) {
        return Err(AlexanderError::InvalidSeifertMatrix(format!(
            "odd size {n}"
        )));
    }
    let skew: Matrix = (0..n)
        .map(|i| (0..n).map(|j| constant(v[i][j] - v[j][i])).collect())
        .collect();
    let d = determinant(&skew)?;
    if !(d == constant(1) || d == constant(-1)) {
        return Err(AlexanderError::InvalidSeifertMatrix(format!(
            "det(V - V^T) = {d}, expected ±1"
        )));
    }
    let m: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = constant(v[i][j]);
                    let b = monomial(v[j][i], 1);
                    if v[j][i] == 0 {
                        a
                    } else {
                        &a - &b
                    }
                })
                .collect()
        })
        .collect();
    normalize(&determinant(&m)?)
}

/// Product of normalized Alexander polynomials, renormalized.
pub fn connected_sum_alexander(ps: &[LaurentPoly]) -> Result<LaurentPoly, AlexanderError> {
    let mut acc = constant(1);
    for p in ps {
        if !is_normalized(p) {
            return Err(AlexanderError::NotNormalized(p.to_string()));
        }
        let p = p.to_ring(Ring::Int)?;
        acc = &acc * &p;
        check_cap(&acc)?;
    }
    normalize(&acc)
}

/// Number of irreducible factors after reducing the coefficients into
/// GF(2) or Q.
pub fn irr_count(delta: &LaurentPoly, ring: Ring) -> Result<OmegaValue, AlexanderError> {
    if !delta.is_univariate() {
        return Err(PolyError::DimensionMismatch {
            expected: 1,
            found: delta.dim(),
        }
        .into());
    }
    Ok(omega_ring(&delta.to_ring(ring)?)?)
}

/// Factor counts in both fields, as reported side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrCounts {
    pub f2: OmegaValue,
    pub q: OmegaValue,
}

pub fn irr_counts(delta: &LaurentPoly) -> Result<IrrCounts, AlexanderError> {
    Ok(IrrCounts {
        f2: irr_count(delta, Ring::Gf2)?,
        q: irr_count(delta, Ring::Rat)?,
    })
}

/// `|Δ(-1)|`, the knot determinant.
pub fn knot_determinant(delta: &LaurentPoly) -> BigRational {
    let v = delta.eval(-1);
    if v < BigRational::zero() {
        -v
    } else {
        v
    }
}
