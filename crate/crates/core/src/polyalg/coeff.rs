use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::PolyError;

/// Coefficient ring of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    /// The field with two elements.
    #[serde(rename = "f2")]
    Gf2,
    /// The integers.
    #[serde(rename = "z")]
    Int,
    /// The rationals.
    #[serde(rename = "q")]
    Rat,
}

impl Ring {
    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Int)
    }

    pub fn name(self) -> &'static str {
        match self {
            Ring::Gf2 => "f2",
            Ring::Int => "z",
            Ring::Rat => "q",
        }
    }

    /// Brings an exact rational into canonical form for this ring.
    /// `Ok(None)` means the value is zero in the ring.
    pub(crate) fn normalize(self, value: BigRational) -> Result<Option<BigRational>, PolyError> {
        match self {
            Ring::Gf2 => {
                if !value.is_integer() {
                    return Err(PolyError::NotInRing {
                        value: value.to_string(),
                        ring: self,
                    });
                }
                if value.to_integer().is_odd() {
                    Ok(Some(BigRational::one()))
                } else {
                    Ok(None)
                }
            }
            Ring::Int => {
                if !value.is_integer() {
                    return Err(PolyError::NotInRing {
                        value: value.to_string(),
                        ring: self,
                    });
                }
                Ok((!value.is_zero()).then_some(value))
            }
            Ring::Rat => Ok((!value.is_zero()).then_some(value)),
        }
    }

    /// Whether `value` (assumed normalized) is a unit of the ring.
    pub(crate) fn is_unit(self, value: &BigRational) -> bool {
        match self {
            Ring::Gf2 | Ring::Rat => !value.is_zero(),
            Ring::Int => value.abs().is_one(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ring {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "f2" | "gf2" => Ok(Ring::Gf2),
            "z" | "int" => Ok(Ring::Int),
            "q" | "rat" => Ok(Ring::Rat),
            _ => Err(PolyError::Parse {
                pos: 0,
                msg: format!("unknown ring `{s}` (expected f2, z or q)"),
            }),
        }
    }
}

/// A single coefficient tagged with its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Gf2(u8),
    Int(BigInt),
    Rat(BigRational),
}

impl Coefficient {
    pub(crate) fn from_normalized(ring: Ring, value: &BigRational) -> Self {
        match ring {
            Ring::Gf2 => Coefficient::Gf2(u8::from(!value.is_zero())),
            Ring::Int => Coefficient::Int(value.to_integer()),
            Ring::Rat => Coefficient::Rat(value.clone()),
        }
    }

    pub fn ring(&self) -> Ring {
        match self {
            Coefficient::Gf2(_) => Ring::Gf2,
            Coefficient::Int(_) => Ring::Int,
            Coefficient::Rat(_) => Ring::Rat,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Gf2(b) => *b == 0,
            Coefficient::Int(v) => v.is_zero(),
            Coefficient::Rat(v) => v.is_zero(),
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Coefficient::Gf2(b) => BigRational::from_integer(BigInt::from(*b)),
            Coefficient::Int(v) => BigRational::from_integer(v.clone()),
            Coefficient::Rat(v) => v.clone(),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Gf2(b) => write!(f, "{b}"),
            Coefficient::Int(v) => write!(f, "{v}"),
            Coefficient::Rat(v) => write!(f, "{v}"),
        }
    }
}

pub(crate) fn parse_rational(text: &str) -> Option<BigRational> {
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(text.trim().parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gf2_reduces_mod_two() {
        assert_eq!(Ring::Gf2.normalize(q(3, 1)).unwrap(), Some(q(1, 1)));
        assert_eq!(Ring::Gf2.normalize(q(-4, 1)).unwrap(), None);
        assert!(Ring::Gf2.normalize(q(1, 2)).is_err());
    }

    #[test]
    fn rationals_are_lowest_terms() {
        let v = Ring::Rat.normalize(q(6, -4)).unwrap().unwrap();
        assert_eq!(v.numer(), &BigInt::from(-3));
        assert_eq!(v.denom(), &BigInt::from(2));
    }

    #[test]
    fn units() {
        assert!(Ring::Int.is_unit(&q(-1, 1)));
        assert!(!Ring::Int.is_unit(&q(2, 1)));
        assert!(Ring::Rat.is_unit(&q(2, 3)));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("-3/6"), Some(q(-1, 2)));
        assert_eq!(parse_rational("7"), Some(q(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
