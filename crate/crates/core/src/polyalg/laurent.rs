use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeff::{parse_rational, Coefficient, Ring};
use super::PolyError;

/// Exponent of a ring monomial `z1^a1 ... zn^an`.
pub type Exponent = Vec<i64>;

/// Laurent polynomial in `dim` variables with exact coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration is in lexicographic
/// exponent order and equality is structural. Zero coefficients are never
/// stored; the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ring: Ring,
    dim: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl LaurentPoly {
    pub fn zero(ring: Ring, dim: usize) -> Self {
        assert!(dim >= 1, "polynomials need at least one variable");
        Self {
            ring,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring, dim: usize) -> Self {
        Self::monomial(ring, vec![0; dim], 1)
    }

    /// `c * z^exp`; `c` is reduced into the ring.
    pub fn monomial(ring: Ring, exp: Exponent, c: i64) -> Self {
        let dim = exp.len();
        Self::from_terms(ring, dim, [(exp, BigRational::from_integer(c.into()))])
            .expect("integer coefficients are valid in every ring")
    }

    /// The univariate variable `t`.
    pub fn t(ring: Ring) -> Self {
        Self::monomial(ring, vec![1], 1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(ring: Ring, dim: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut acc: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (exp, c) in terms {
            if exp.len() != dim {
                return Err(PolyError::DimensionMismatch {
                    expected: dim,
                    found: exp.len(),
                });
            }
            *acc.entry(exp).or_insert_with(BigRational::zero) += c;
        }
        let mut out = Self::zero(ring, dim);
        for (exp, c) in acc {
            if let Some(c) = ring.normalize(c)? {
                out.terms.insert(exp, c);
            }
        }
        Ok(out)
    }

    /// Univariate polynomial from integer coefficients, `coeffs[i]` being the
    /// coefficient of `t^(low + i)`.
    pub fn from_coeffs(ring: Ring, low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            ring,
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (vec![low + i as i64], BigRational::from_integer(c.into()))),
        )
        .expect("integer coefficients are valid in every ring")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_univariate(&self) -> bool {
        self.dim == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Coefficient {
        match self.terms.get(exp) {
            Some(c) => Coefficient::from_normalized(self.ring, c),
            None => Coefficient::from_normalized(self.ring, &BigRational::zero()),
        }
    }

    /// Whether the polynomial is `c * z^a` with `c` invertible in its ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .values()
                .next()
                .is_some_and(|c| self.ring.is_unit(c))
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Smallest and largest exponent of a nonzero univariate polynomial.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        debug_assert!(self.is_univariate());
        let lo = self.terms.keys().next()?[0];
        let hi = self.terms.keys().next_back()?[0];
        Some((lo, hi))
    }

    /// Width of the support of a univariate polynomial (its ordinary degree
    /// after clearing the lowest power of `t`).
    pub fn span(&self) -> Option<u64> {
        self.degree_range().map(|(lo, hi)| (hi - lo) as u64)
    }

    /// Multiplies by the monomial `z^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.dim);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        Self {
            ring: self.ring,
            dim: self.dim,
            terms,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Result<Self, PolyError> {
        Self::from_terms(
            self.ring,
            self.dim,
            self.terms.iter().map(|(e, v)| (e.clone(), v * c)),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.ring, self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Reinterprets the coefficients in another ring: reduction mod 2 into
    /// GF(2), inclusion into Q, and a checked inclusion into Z.
    pub fn to_ring(&self, ring: Ring) -> Result<Self, PolyError> {
        Self::from_terms(
            ring,
            self.dim,
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Substitutes `t -> t^-1` in every variable.
    pub fn mirror(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|a| -a).collect(), c.clone()))
            .collect();
        Self {
            ring: self.ring,
            dim: self.dim,
            terms,
        }
    }

    /// Evaluates a univariate polynomial at an integer; negative powers are
    /// allowed when `x` is a unit (`x = ±1`) or the result is rational.
    pub fn eval(&self, x: i64) -> BigRational {
        assert!(self.is_univariate());
        let x = BigRational::from_integer(x.into());
        self.terms
            .iter()
            .map(|(e, c)| {
                let p = if e[0] >= 0 {
                    num_traits::pow(x.clone(), e[0] as usize)
                } else {
                    num_traits::pow(x.recip(), (-e[0]) as usize)
                };
                c * p
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// A univariate polynomial is symmetric when `p(t) = p(t^-1)`.
    pub fn is_symmetric(&self) -> bool {
        self.is_univariate() && *self == self.mirror()
    }

    /// Shifts a univariate polynomial so that its support is centered on 0.
    /// Returns `None` when the span is odd.
    pub fn centered(&self) -> Option<Self> {
        let (lo, hi) = match self.degree_range() {
            Some(r) => r,
            None => return Some(self.clone()),
        };
        if (lo + hi) % 2 != 0 {
            return None;
        }
        Some(self.shift(&[-(lo + hi) / 2]))
    }

    /// Exact division of univariate polynomials; `None` when `divisor` does
    /// not divide `self` in the Laurent ring.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(self.is_univariate() && divisor.is_univariate());
        assert_eq!(self.ring, divisor.ring);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (dlo, dhi) = divisor.degree_range()?;
        let dlead = divisor.terms[&vec![dhi]].clone();
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((hi, _)) = rem.degree_range().map(|(_, hi)| (hi, ())) {
            let (lo, _) = rem.degree_range()?;
            if hi - lo < dhi - dlo {
                return None;
            }
            let c = rem.terms[&vec![hi]].clone() / &dlead;
            let c = self.ring.normalize(c).ok()??;
            let e = hi - dhi;
            let term = Self {
                ring: self.ring,
                dim: 1,
                terms: BTreeMap::from([(vec![e], c.clone())]),
            };
            rem = &rem - &(&term * divisor);
            quot.insert(vec![e], c);
        }
        Some(Self {
            ring: self.ring,
            dim: 1,
            terms: quot,
        })
    }

    /// Parses the textual form `c*z1^a1*z2^a2 + ...`; `t` abbreviates `z1`.
    /// The dimension is the largest variable index that occurs (at least 1).
    pub fn parse(text: &str, ring: Ring) -> Result<Self, PolyError> {
        let parsed = Parser::new(text).parse()?;
        let dim = parsed
            .iter()
            .map(|(e, _)| e.len())
            .max()
            .unwrap_or(1)
            .max(1);
        Self::parse_into(parsed, ring, dim)
    }

    /// Like [`parse`](Self::parse) with an explicit dimension.
    pub fn parse_with_dim(text: &str, ring: Ring, dim: usize) -> Result<Self, PolyError> {
        let parsed = Parser::new(text).parse()?;
        if let Some(found) = parsed.iter().map(|(e, _)| e.len()).find(|&l| l > dim) {
            return Err(PolyError::DimensionMismatch {
                expected: dim,
                found,
            });
        }
        Self::parse_into(parsed, ring, dim)
    }

    fn parse_into(
        parsed: Vec<(Vec<i64>, BigRational)>,
        ring: Ring,
        dim: usize,
    ) -> Result<Self, PolyError> {
        Self::from_terms(
            ring,
            dim,
            parsed.into_iter().map(|(mut e, c)| {
                e.resize(dim, 0);
                (e, c)
            }),
        )
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            let sum = match out.terms.remove(e) {
                Some(v) => v + c,
                None => c.clone(),
            };
            if let Some(v) = self.ring.normalize(sum).expect("closed under addition") {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        if self.ring == Ring::Gf2 {
            return self.clone();
        }
        LaurentPoly {
            ring: self.ring,
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut acc: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        let mut out = LaurentPoly::zero(self.ring, self.dim);
        for (e, c) in acc {
            if let Some(c) = self.ring.normalize(c).expect("closed under products") {
                out.terms.insert(e, c);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    /// Terms in ascending exponent order joined by ` + `; negative
    /// coefficients are written with a leading `-` (`t^-1 + -1 + t`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| {
                    let name = if self.dim == 1 {
                        "t".to_string()
                    } else {
                        format!("z{}", i + 1)
                    };
                    if a == 1 {
                        name
                    } else {
                        format!("{name}^{a}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else {
                if (-c).is_one() {
                    f.write_str("-")?;
                } else if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                f.write_str(&vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i64>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    ring: Ring,
    dim: usize,
    terms: Vec<TermJson>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            ring: self.ring,
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PolyJson::deserialize(d)?;
        if raw.dim == 0 {
            return Err(D::Error::custom("dim must be at least 1"));
        }
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c = parse_rational(&t.coeff)
                .ok_or_else(|| D::Error::custom(format!("bad coefficient `{}`", t.coeff)))?;
            terms.push((t.exp, c));
        }
        LaurentPoly::from_terms(raw.ring, raw.dim, terms).map_err(D::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Vec<(Vec<i64>, BigRational)>, PolyError> {
        let mut out = Vec::new();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut sign = self.signs();
        loop {
            let (e, c) = self.term()?;
            out.push((e, if sign { -c } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') | Some(b'-') => sign = self.signs(),
                Some(ch) => return Err(self.err(format!("unexpected `{}`", ch as char))),
            }
        }
        Ok(out)
    }

    /// Consumes a run of `+`/`-` and returns whether the net sign is negative.
    fn signs(&mut self) -> bool {
        let mut neg = false;
        while let Some(ch) = self.peek() {
            match ch {
                b'+' => {}
                b'-' => neg = !neg,
                _ => break,
            }
            self.pos += 1;
        }
        neg
    }

    fn term(&mut self) -> Result<(Vec<i64>, BigRational), PolyError> {
        let mut coeff = BigRational::one();
        let mut exp: Vec<i64> = Vec::new();
        loop {
            match self.peek() {
                Some(ch) if ch.is_ascii_digit() => coeff *= self.number()?,
                Some(b't') | Some(b'z') => {
                    let (var, power) = self.variable()?;
                    if exp.len() <= var {
                        exp.resize(var + 1, 0);
                    }
                    exp[var] += power;
                }
                _ => return Err(self.err("expected a coefficient or a variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((exp, coeff))
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<BigRational, PolyError> {
        let num: BigInt = self.digits().parse().map_err(|_| self.err("bad number"))?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den: BigInt = self
                .digits()
                .parse()
                .map_err(|_| self.err("bad denominator"))?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    fn variable(&mut self) -> Result<(usize, i64), PolyError> {
        let var = if self.bytes[self.pos] == b't' {
            self.pos += 1;
            0
        } else {
            self.pos += 1;
            let idx: usize = self
                .digits()
                .parse()
                .map_err(|_| self.err("expected variable index after `z`"))?;
            if idx == 0 {
                return Err(self.err("variables are numbered from z1"));
            }
            idx - 1
        };
        let mut power = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            self.skip_ws();
            let mag: i64 = self
                .digits()
                .parse()
                .map_err(|_| self.err("expected an integer exponent"))?;
            power = if neg { -mag } else { mag };
        }
        Ok((var, power))
    }
}
