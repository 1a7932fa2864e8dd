use std::fmt;
use std::ops::Add;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeff::Ring;
use super::factor::{check_field_univariate, factor};
use super::laurent::LaurentPoly;
use super::unimodular::{vector_gcd, UnimodularMap};
use super::PolyError;

/// A value in `Z>=0 ∪ {-inf}`. `-inf` absorbs addition and sorts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaValue {
    NegInfinity,
    Finite(u64),
}

impl OmegaValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            OmegaValue::Finite(n) => Some(n),
            OmegaValue::NegInfinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, OmegaValue::Finite(_))
    }
}

impl Add for OmegaValue {
    type Output = OmegaValue;

    fn add(self, rhs: OmegaValue) -> OmegaValue {
        match (self, rhs) {
            (OmegaValue::Finite(a), OmegaValue::Finite(b)) => OmegaValue::Finite(a + b),
            _ => OmegaValue::NegInfinity,
        }
    }
}

impl fmt::Display for OmegaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaValue::NegInfinity => f.write_str("-inf"),
            OmegaValue::Finite(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for OmegaValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OmegaValue::NegInfinity => s.serialize_str("-inf"),
            OmegaValue::Finite(n) => s.serialize_u64(*n),
        }
    }
}

impl<'de> Deserialize<'de> for OmegaValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(OmegaValue::Finite(n)),
            Raw::S(s) if s == "-inf" => Ok(OmegaValue::NegInfinity),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad omega value `{s}`"))),
        }
    }
}

/// A polynomial `z^offset * q(z^direction)` brought to univariate form by a
/// unimodular change of variables sending `direction` to `e_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineReduction {
    pub direction: Vec<i64>,
    /// `U` with `U * direction = e_1`.
    pub reducer: UnimodularMap,
    /// `U^-1`: a basis of `Z^n` whose first vector is `direction`.
    pub extension: UnimodularMap,
    /// The reduced polynomial as a univariate polynomial in `z_1` (the
    /// monomial factor in the other variables is dropped, being a unit).
    pub univariate: LaurentPoly,
}

/// Primitive direction of a set of integer difference vectors, if they are
/// all collinear. `Ok(None)` when every difference is zero.
fn common_direction(diffs: &[Vec<i64>]) -> Option<Option<Vec<i64>>> {
    let Some(first) = diffs.iter().find(|d| d.iter().any(|&x| x != 0)) else {
        return Some(None);
    };
    let g = vector_gcd(first);
    let mut dir: Vec<i64> = first.iter().map(|x| x / g).collect();
    if dir.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        dir.iter_mut().for_each(|x| *x = -*x);
    }
    let pivot = dir.iter().position(|&x| x != 0).unwrap();
    for d in diffs {
        if d[pivot] % dir[pivot] != 0 {
            return None;
        }
        let k = d[pivot] / dir[pivot];
        if d.iter().zip(&dir).any(|(a, b)| *a != k * b) {
            return None;
        }
    }
    Some(Some(dir))
}

fn support_differences(p: &LaurentPoly) -> Vec<Vec<i64>> {
    let mut it = p.terms().map(|(e, _)| e);
    let Some(base) = it.next() else {
        return Vec::new();
    };
    it.map(|e| e.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect()
}

fn reduce_along(p: &LaurentPoly, direction: Vec<i64>) -> Result<LineReduction, PolyError> {
    let reducer = UnimodularMap::reducing_primitive(&direction)?;
    let moved = apply_unimodular(p, &reducer)?;
    // every exponent of `moved` agrees outside the first coordinate
    let rest: Option<&[i64]> = moved.terms().next().map(|(e, _)| &e[1..]);
    let univariate = LaurentPoly::from_terms(
        p.ring(),
        1,
        moved.terms().map(|(e, c)| {
            debug_assert_eq!(Some(&e[1..]), rest);
            (vec![e[0]], c.clone())
        }),
    )?;
    Ok(LineReduction {
        extension: reducer.inverse(),
        direction,
        reducer,
        univariate,
    })
}

/// Recognizes a multivariate polynomial of the form `z^a * q(z^v)` with `v`
/// primitive and reduces it to `q` by a unimodular change of variables.
pub fn reduce_to_univariate(p: &LaurentPoly) -> Result<LineReduction, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut e1 = vec![0; p.dim()];
    e1[0] = 1;
    let direction = match common_direction(&support_differences(p)) {
        Some(Some(dir)) => dir,
        Some(None) => e1,
        None => {
            return Err(PolyError::UnsupportedRing(
                "multivariate polynomial is not a monomial substitution of a univariate one".into(),
            ))
        }
    };
    reduce_along(p, direction)
}

/// Number of irreducible non-unit factors with multiplicity; `-inf` for 0.
pub fn omega_ring(p: &LaurentPoly) -> Result<OmegaValue, PolyError> {
    if !p.ring().is_field() {
        return Err(PolyError::UnsupportedRing(format!(
            "Ω is computed over GF(2) or Q, got {}",
            p.ring()
        )));
    }
    if p.is_zero() {
        return Ok(OmegaValue::NegInfinity);
    }
    if p.is_univariate() {
        return Ok(OmegaValue::Finite(factor(p)?.count()));
    }
    let red = reduce_to_univariate(p)?;
    omega_ring(&red.univariate)
}

/// Ω of the module element with coordinates `coords` in a free basis:
/// Ω of the gcd of the coordinates.
pub fn omega_module(coords: &[LaurentPoly]) -> Result<OmegaValue, PolyError> {
    let Some(first) = coords.first() else {
        return Ok(OmegaValue::NegInfinity);
    };
    for c in coords {
        if c.ring() != first.ring() {
            return Err(PolyError::MixedRings(first.ring(), c.ring()));
        }
        if c.dim() != first.dim() {
            return Err(PolyError::DimensionMismatch {
                expected: first.dim(),
                found: c.dim(),
            });
        }
    }
    let nonzero: Vec<&LaurentPoly> = coords.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(OmegaValue::NegInfinity);
    }
    if !first.ring().is_field() {
        return Err(PolyError::UnsupportedRing(format!(
            "Ω is computed over GF(2) or Q, got {}",
            first.ring()
        )));
    }
    let univariates: Vec<LaurentPoly> = if first.is_univariate() {
        nonzero.into_iter().cloned().collect()
    } else {
        // all coordinates must live on one common line of exponents
        let diffs: Vec<Vec<i64>> = nonzero
            .iter()
            .flat_map(|c| support_differences(c))
            .collect();
        let mut e1 = vec![0; first.dim()];
        e1[0] = 1;
        let direction = match common_direction(&diffs) {
            Some(Some(dir)) => dir,
            Some(None) => e1,
            None => {
                return Err(PolyError::UnsupportedRing(
                    "coordinates do not share a monomial substitution".into(),
                ))
            }
        };
        nonzero
            .into_iter()
            .map(|c| reduce_along(c, direction.clone()).map(|r| r.univariate))
            .collect::<Result<_, _>>()?
    };
    let g = univariates
        .iter()
        .skip(1)
        .try_fold(univariates[0].clone(), |g, c| poly_gcd(&g, c))?;
    omega_ring(&g)
}

/// gcd of univariate polynomials over a field, up to units.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    check_field_univariate(a)?;
    check_field_univariate(b)?;
    if a.ring() != b.ring() {
        return Err(PolyError::MixedRings(a.ring(), b.ring()));
    }
    let ring = a.ring();
    let mut x = ordinary_dense(a);
    let mut y = ordinary_dense(b);
    while !y.is_empty() {
        let r = dense_rem(ring, &x, &y)?;
        x = y;
        y = r;
    }
    if x.is_empty() {
        return Ok(LaurentPoly::zero(ring, 1));
    }
    let lc = x.last().unwrap().clone();
    LaurentPoly::from_terms(
        ring,
        1,
        x.into_iter()
            .enumerate()
            .map(|(i, c)| (vec![i as i64], c / &lc)),
    )
}

fn ordinary_dense(p: &LaurentPoly) -> Vec<BigRational> {
    let Some((lo, hi)) = p.degree_range() else {
        return Vec::new();
    };
    let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        v[(e[0] - lo) as usize] = c.clone();
    }
    v
}

fn dense_rem(
    ring: Ring,
    f: &[BigRational],
    d: &[BigRational],
) -> Result<Vec<BigRational>, PolyError> {
    let norm = |v: BigRational| -> Result<BigRational, PolyError> {
        Ok(ring.normalize(v)?.unwrap_or_else(BigRational::zero))
    };
    let dd = d.len() - 1;
    let inv = d[dd].recip();
    let mut r = f.to_vec();
    while r.len() > dd {
        let top = r.len() - 1;
        let c = norm(&r[top] * &inv)?;
        if !c.is_zero() {
            for (j, dj) in d.iter().enumerate() {
                let k = top - dd + j;
                r[k] = norm(&r[k] - &c * dj)?;
            }
        }
        r.pop();
        while r.last().is_some_and(|v| v.is_zero()) {
            r.pop();
        }
    }
    Ok(r)
}

/// `p(z^v)`: each term `c t^k` becomes `c z^(k v)`.
pub fn substitute_monomial(p: &LaurentPoly, v: &[i64]) -> Result<LaurentPoly, PolyError> {
    if !p.is_univariate() {
        return Err(PolyError::DimensionMismatch {
            expected: 1,
            found: p.dim(),
        });
    }
    if v.is_empty() {
        return Err(PolyError::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    LaurentPoly::from_terms(
        p.ring(),
        v.len(),
        p.terms()
            .map(|(e, c)| (v.iter().map(|x| x * e[0]).collect(), c.clone())),
    )
}

/// The induced ring map `z^a -> z^(f a)`.
pub fn apply_unimodular(p: &LaurentPoly, f: &UnimodularMap) -> Result<LaurentPoly, PolyError> {
    if p.dim() != f.dim() {
        return Err(PolyError::DimensionMismatch {
            expected: f.dim(),
            found: p.dim(),
        });
    }
    LaurentPoly::from_terms(
        p.ring(),
        p.dim(),
        p.terms().map(|(e, c)| (f.apply(e), c.clone())),
    )
}

/// Ω of `p(z^v)` for primitive `v`, computed by substituting, moving `v` to
/// `e_1` with a unimodular map, and factoring the resulting univariate
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutedOmega {
    pub value: OmegaValue,
    pub substituted: LaurentPoly,
    pub reduction: LineReduction,
}

pub fn omega_substituted(p: &LaurentPoly, v: &[i64]) -> Result<SubstitutedOmega, PolyError> {
    if v.is_empty() || vector_gcd(v) != 1 {
        return Err(PolyError::NonPrimitiveVector(v.to_vec()));
    }
    let substituted = substitute_monomial(p, v)?;
    let reduction = reduce_along(&substituted, v.to_vec())?;
    let value = omega_ring(&reduction.univariate)?;
    Ok(SubstitutedOmega {
        value,
        substituted,
        reduction,
    })
}

/// Whether `p = u q` for a unit monomial `u` of the coefficient ring.
pub fn monomial_equivalent(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    if p.ring() != q.ring() || p.dim() != q.dim() {
        return false;
    }
    match (p.leading_term(), q.leading_term()) {
        (None, None) => true,
        (Some((ep, cp)), Some((eq, cq))) => {
            if p.len() != q.len() {
                return false;
            }
            let c = cp / cq;
            if !p.ring().is_unit(&c) && !(p.ring() == Ring::Gf2 && c.is_one()) {
                return false;
            }
            let shift: Vec<i64> = ep.iter().zip(eq).map(|(a, b)| a - b).collect();
            match q.shift(&shift).scale(&c) {
                Ok(moved) => moved == *p,
                Err(_) => false,
            }
        }
        _ => false,
    }
}
