use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::PolyError;

/// An invertible integer matrix (determinant ±1), acting on exponent
/// vectors by `a -> M a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct UnimodularMap {
    rows: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for UnimodularMap {
    type Error = PolyError;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        Self::new(rows)
    }
}

impl From<UnimodularMap> for Vec<Vec<i64>> {
    fn from(m: UnimodularMap) -> Self {
        m.rows
    }
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub(crate) fn determinant(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl UnimodularMap {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, PolyError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(PolyError::NotUnimodular(
                "matrix must be square and nonempty".into(),
            ));
        }
        let det = determinant(&rows);
        if !det.abs().is_one() {
            return Err(PolyError::NotUnimodular(format!("determinant is {det}")));
        }
        Ok(Self { rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn determinant(&self) -> i64 {
        if determinant(&self.rows).is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn apply(&self, a: &[i64]) -> Vec<i64> {
        assert_eq!(a.len(), self.dim());
        self.rows
            .iter()
            .map(|r| r.iter().zip(a).map(|(x, y)| x * y).sum())
            .collect()
    }

    pub fn apply_rational(&self, a: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(a.len(), self.dim());
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(a)
                    .map(|(&x, y)| y * BigRational::from_integer(x.into()))
                    .fold(BigRational::zero(), |s, v| s + v)
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.dim();
        assert_eq!(n, other.dim());
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.rows[i][k] * other.rows[k][j]).sum())
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        // Gauss-Jordan over Q; the result is integral because det = ±1.
        let mut a: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .chain((0..n).map(|j| BigRational::from_integer(i64::from(i == j).into())))
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&i| !a[i][col].is_zero())
                .expect("unimodular matrices are invertible");
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut() {
                *v *= &inv;
            }
            for i in 0..n {
                if i != col && !a[i][col].is_zero() {
                    let k = a[i][col].clone();
                    let pivot_row = a[col].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= &k * y;
                    }
                }
            }
        }
        let rows = a
            .into_iter()
            .map(|r| {
                r[n..]
                    .iter()
                    .map(|v| {
                        debug_assert!(v.is_integer());
                        i64::try_from(v.to_integer()).expect("entries fit in i64")
                    })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    /// Elementary matrix `I + k e_i e_j^T` (`i != j`).
    pub fn elementary_add(n: usize, i: usize, j: usize, k: i64) -> Self {
        assert!(i != j && i < n && j < n);
        let mut m = Self::identity(n);
        m.rows[i][j] = k;
        m
    }

    pub fn elementary_swap(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(n);
        m.rows.swap(i, j);
        m
    }

    pub fn elementary_negate(n: usize, i: usize) -> Self {
        let mut m = Self::identity(n);
        m.rows[i][i] = -1;
        m
    }

    /// For a primitive vector `v`, returns `U` with `U v = e_1`. The inverse
    /// `U^-1` is a unimodular matrix whose first column is `v`, i.e. an
    /// extension of `v` to a basis of `Z^n`.
    pub fn reducing_primitive(v: &[i64]) -> Result<Self, PolyError> {
        let n = v.len();
        if n == 0 || vector_gcd(v) != 1 {
            return Err(PolyError::NonPrimitiveVector(v.to_vec()));
        }
        let mut w = v.to_vec();
        let mut u = Self::identity(n);
        // Euclid on the entries, recording row operations in `u`.
        loop {
            let nonzero: Vec<usize> = (0..n).filter(|&i| w[i] != 0).collect();
            if nonzero.len() == 1 {
                break;
            }
            let k = *nonzero.iter().min_by_key(|&&i| w[i].abs()).unwrap();
            for &i in &nonzero {
                if i != k {
                    let q = Integer::div_floor(&w[i], &w[k]);
                    w[i] -= q * w[k];
                    row_add(&mut u.rows, i, k, -q);
                }
            }
        }
        let k = (0..n).find(|&i| w[i] != 0).unwrap();
        if k != 0 {
            w.swap(0, k);
            u.rows.swap(0, k);
        }
        if w[0] < 0 {
            w[0] = -w[0];
            for x in u.rows[0].iter_mut() {
                *x = -*x;
            }
        }
        debug_assert_eq!(u.apply(v)[0], 1);
        Ok(u)
    }
}

fn row_add(rows: &mut [Vec<i64>], target: usize, src: usize, k: i64) {
    let src_row = rows[src].clone();
    for (x, y) in rows[target].iter_mut().zip(src_row) {
        *x += k * y;
    }
}

/// Nonnegative gcd of the entries (0 for the zero vector).
pub fn vector_gcd(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}
