use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::coeff::Ring;
use super::laurent::LaurentPoly;
use super::omega::{omega_module, OmegaValue};
use super::unimodular::UnimodularMap;
use super::PolyError;

/// An exponent vector with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(pub Vec<BigRational>);

impl Serialize for ExponentVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|x| x.to_string()))
    }
}

impl ExponentVector {
    pub fn zero(dim: usize) -> Self {
        Self(vec![BigRational::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self(
            v.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    /// From `(numerator, denominator)` pairs.
    pub fn from_ratios(v: &[(i64, i64)]) -> Self {
        Self(
            v.iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Componentwise `x - floor(x)`, each in `[0, 1)`.
    pub fn fractional_part(&self) -> Self {
        Self(self.0.iter().map(|x| x - x.floor()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| {
                x.is_integer()
                    .then(|| i64::try_from(x.to_integer()).ok())
                    .flatten()
            })
            .collect()
    }
}

/// A GF(2)-linear combination of `monomial ⊗ basis vector` with rational
/// exponents; presence of a pair means coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerturbedElement {
    dim: usize,
    basis_size: usize,
    terms: BTreeSet<(ExponentVector, usize)>,
}

impl PerturbedElement {
    pub fn zero(dim: usize, basis_size: usize) -> Self {
        Self {
            dim,
            basis_size,
            terms: BTreeSet::new(),
        }
    }

    /// Builds an element by summing terms over GF(2) (repeated pairs cancel).
    pub fn from_terms<I>(dim: usize, basis_size: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (ExponentVector, usize)>,
    {
        let mut x = Self::zero(dim, basis_size);
        for (e, i) in terms {
            x.add_term(e, i)?;
        }
        Ok(x)
    }

    pub fn add_term(&mut self, exp: ExponentVector, index: usize) -> Result<(), PolyError> {
        if exp.dim() != self.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                found: exp.dim(),
            });
        }
        if index >= self.basis_size {
            return Err(PolyError::BasisIndexOutOfRange {
                index,
                size: self.basis_size,
            });
        }
        let key = (exp, index);
        if !self.terms.remove(&key) {
            self.terms.insert(key);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_size(&self) -> usize {
        self.basis_size
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &(ExponentVector, usize)> + '_ {
        self.terms.iter()
    }

    /// Coordinates of `e^{-a} x` in `M0 ⊗ F[Z^n]`, one polynomial per basis
    /// vector. Fails if some exponent of `e^{-a} x` is not integral.
    pub fn integral_coordinates(&self, a: &ExponentVector) -> Result<Vec<LaurentPoly>, PolyError> {
        let mut coords = vec![Vec::new(); self.basis_size];
        for (e, i) in &self.terms {
            let shifted = e
                .sub(a)
                .to_integers()
                .ok_or(PolyError::NotProjectivelyIntegral)?;
            coords[*i].push((shifted, BigRational::one()));
        }
        coords
            .into_iter()
            .map(|terms| LaurentPoly::from_terms(Ring::Gf2, self.dim, terms))
            .collect()
    }

    /// The image under `phi ⊗ f`, where `phi` is an invertible GF(2) matrix
    /// on the basis (`phi[j][i]` = coefficient of `e_j` in `phi(e_i)`) and `f`
    /// acts on exponents.
    pub fn transform(&self, phi: &[Vec<u8>], f: &UnimodularMap) -> Result<Self, PolyError> {
        if f.dim() != self.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                found: f.dim(),
            });
        }
        if phi.len() != self.basis_size || phi.iter().any(|r| r.len() != self.basis_size) {
            return Err(PolyError::DimensionMismatch {
                expected: self.basis_size,
                found: phi.len(),
            });
        }
        if !gf2_invertible(phi) {
            return Err(PolyError::NotInvertible);
        }
        let mut out = Self::zero(self.dim, self.basis_size);
        for (e, i) in &self.terms {
            let fe = ExponentVector(f.apply_rational(&e.0));
            for (j, row) in phi.iter().enumerate() {
                if row[*i] & 1 == 1 {
                    out.add_term(fe.clone(), j)?;
                }
            }
        }
        Ok(out)
    }
}

fn gf2_invertible(m: &[Vec<u8>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<u8>> = m
        .iter()
        .map(|r| r.iter().map(|v| v & 1).collect())
        .collect();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| a[i][col] == 1) else {
            return false;
        };
        a.swap(col, piv);
        for i in 0..n {
            if i != col && a[i][col] == 1 {
                let pivot_row = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x ^= y;
                }
            }
        }
    }
    true
}

/// A witness `a` such that `e^{-a} x` has integral exponents, if one exists.
/// Such an `a` exists iff all exponents of `x` have the same fractional
/// parts; the common fractional part is returned.
pub fn is_projectively_integral(x: &PerturbedElement) -> Option<ExponentVector> {
    let mut it = x.terms.iter();
    let Some((first, _)) = it.next() else {
        return Some(ExponentVector::zero(x.dim));
    };
    let frac = first.fractional_part();
    it.all(|(e, _)| e.fractional_part() == frac).then_some(frac)
}

/// Ω of a projectively integral element: Ω of its integral coordinates.
pub fn omega_perturbed(x: &PerturbedElement) -> Result<OmegaValue, PolyError> {
    if x.is_zero() {
        return Ok(OmegaValue::NegInfinity);
    }
    let a = is_projectively_integral(x).ok_or(PolyError::NotProjectivelyIntegral)?;
    omega_module(&x.integral_coordinates(&a)?)
}
