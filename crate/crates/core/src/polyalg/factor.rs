use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::coeff::Ring;
use super::laurent::LaurentPoly;
use super::modp::{self, FpPoly};
use super::zassenhaus;
use super::PolyError;

/// Largest ordinary degree the factorization engine accepts.
pub const MAX_FACTOR_DEGREE: u64 = 64;

/// `p = unit * prod(factor^multiplicity)`, with every factor a monic
/// ordinary polynomial with nonzero constant term, in canonical order
/// (by degree, then coefficients from the top).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub unit: LaurentPoly,
    pub factors: Vec<(LaurentPoly, u32)>,
}

impl Factorization {
    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.factors.iter().map(|(_, m)| u64::from(*m)).sum()
    }

    pub fn expand(&self) -> LaurentPoly {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

pub(crate) fn check_field_univariate(p: &LaurentPoly) -> Result<(), PolyError> {
    if !p.is_univariate() {
        return Err(PolyError::UnsupportedRing(format!(
            "expected a univariate polynomial, got {} variables",
            p.dim()
        )));
    }
    if !p.ring().is_field() {
        return Err(PolyError::UnsupportedRing(format!(
            "factorization needs a field coefficient ring, got {}",
            p.ring()
        )));
    }
    Ok(())
}

/// Factors a nonzero univariate Laurent polynomial over GF(2) or Q.
pub fn factor(p: &LaurentPoly) -> Result<Factorization, PolyError> {
    check_field_univariate(p)?;
    let (lo, hi) = p.degree_range().ok_or(PolyError::ZeroPolynomial)?;
    let degree = (hi - lo) as u64;
    if degree > MAX_FACTOR_DEGREE {
        return Err(PolyError::DegreeTooLarge {
            degree,
            cap: MAX_FACTOR_DEGREE,
        });
    }
    let ring = p.ring();
    let mut dense = vec![BigRational::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        dense[(e[0] - lo) as usize] = c.clone();
    }
    let lead = dense.last().unwrap().clone();
    let unit = LaurentPoly::from_terms(ring, 1, [(vec![lo], lead)])?;

    let mut factors: Vec<(LaurentPoly, u32)> = match ring {
        Ring::Gf2 => {
            let bits = dense.iter().map(|c| u64::from(!c.is_zero())).collect();
            modp::factor(&FpPoly::new(2, bits))
                .into_iter()
                .map(|(g, m)| {
                    let coeffs: Vec<i64> = g.coeffs().iter().map(|&c| c as i64).collect();
                    (LaurentPoly::from_coeffs(Ring::Gf2, 0, &coeffs), m)
                })
                .collect()
        }
        Ring::Rat => zassenhaus::factor_rational(&dense)
            .into_iter()
            .map(|(g, m)| {
                let poly = LaurentPoly::from_terms(
                    Ring::Rat,
                    1,
                    g.into_iter().enumerate().map(|(i, c)| (vec![i as i64], c)),
                )
                .expect("rational coefficients");
                (poly, m)
            })
            .collect(),
        Ring::Int => unreachable!("checked above"),
    };
    factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { unit, factors })
}

/// Orders univariate polynomials by degree, then by coefficients from the
/// top down.
pub(crate) fn canonical_cmp(a: &LaurentPoly, b: &LaurentPoly) -> std::cmp::Ordering {
    let dense = |p: &LaurentPoly| -> Vec<BigRational> {
        let Some((lo, hi)) = p.degree_range() else {
            return Vec::new();
        };
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in p.terms() {
            v[(e[0] - lo) as usize] = c.clone();
        }
        v
    };
    let (da, db) = (dense(a), dense(b));
    da.len()
        .cmp(&db.len())
        .then_with(|| da.iter().rev().cmp(db.iter().rev()))
}
