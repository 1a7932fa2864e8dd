use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::GridError;
use crate::polyalg::{LaurentPoly, Ring};

/// Positive ranks indexed by `(Maslov, Alexander)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedRanks {
    ranks: BTreeMap<(i64, i64), u64>,
}

impl BigradedRanks {
    pub fn new() -> Self {
        Self::default()
    }

    /// Zero entries are dropped.
    pub fn from_map(mut ranks: BTreeMap<(i64, i64), u64>) -> Self {
        ranks.retain(|_, r| *r > 0);
        Self { ranks }
    }

    pub fn from_entries<I: IntoIterator<Item = ((i64, i64), u64)>>(entries: I) -> Self {
        let mut map = BTreeMap::new();
        for (k, r) in entries {
            *map.entry(k).or_insert(0) += r;
        }
        Self::from_map(map)
    }

    pub fn get(&self, maslov: i64, alexander: i64) -> u64 {
        self.ranks.get(&(maslov, alexander)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.ranks.iter().map(|(k, v)| (*k, *v))
    }

    pub fn total(&self) -> u64 {
        self.ranks.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Total rank in each Alexander grading.
    pub fn by_alexander(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for ((_, a), r) in self.iter() {
            *out.entry(a).or_insert(0) += r;
        }
        out
    }

    /// `sum (-1)^M rank t^A` over the integers.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        for ((m, a), r) in self.iter() {
            let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
            *acc.entry(a).or_insert(0) += sign * r as i64;
        }
        LaurentPoly::from_terms(
            Ring::Int,
            1,
            acc.into_iter()
                .map(|(a, c)| (vec![a], BigRational::from_integer(c.into()))),
        )
        .expect("integer coefficients")
    }

    /// Tensor product with `k` copies of the two-dimensional space
    /// supported in bigradings `(0, 0)` and `(-1, -1)`.
    pub fn tensor_w(&self, k: usize) -> Self {
        let mut cur = self.ranks.clone();
        for _ in 0..k {
            let mut next = cur.clone();
            for (&(m, a), &r) in &cur {
                *next.entry((m - 1, a - 1)).or_insert(0) += r;
            }
            cur = next;
        }
        Self::from_map(cur)
    }
}

impl Serialize for BigradedRanks {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            maslov: i64,
            alexander: i64,
            rank: u64,
        }
        let mut seq = s.serialize_seq(Some(self.ranks.len()))?;
        for ((maslov, alexander), rank) in self.iter() {
            seq.serialize_element(&Entry {
                maslov,
                alexander,
                rank,
            })?;
        }
        seq.end()
    }
}

/// Divides out the `2^(n-1)` stabilization factor: returns the unique `R`
/// with `ranks = R ⊗ W^(n-1)`, or `InexactDivision`.
pub fn deconvolve(ranks: &BigradedRanks, n: usize) -> Result<BigradedRanks, GridError> {
    if n == 0 {
        return Err(GridError::InexactDivision);
    }
    let mut cur = ranks.ranks.clone();
    for _ in 1..n {
        cur = divide_w(&cur)?;
    }
    Ok(BigradedRanks::from_map(cur))
}

/// One division by `1 + q^-1 a^-1`. Along each diagonal `M - A = d` the
/// coefficients satisfy `f(A) = R(A) + R(A + 1)`; solve from the top.
fn divide_w(f: &BTreeMap<(i64, i64), u64>) -> Result<BTreeMap<(i64, i64), u64>, GridError> {
    let diagonals: BTreeSet<i64> = f.keys().map(|(m, a)| m - a).collect();
    let mut out = BTreeMap::new();
    for d in diagonals {
        let column: BTreeMap<i64, i64> = f
            .iter()
            .filter(|((m, a), _)| m - a == d)
            .map(|((_, a), r)| (*a, *r as i64))
            .collect();
        let lo = *column.keys().next().unwrap();
        let hi = *column.keys().next_back().unwrap();
        let mut above = 0i64;
        for a in (lo - 1..=hi).rev() {
            let r = column.get(&a).copied().unwrap_or(0) - above;
            if r < 0 {
                return Err(GridError::InexactDivision);
            }
            if a == lo - 1 {
                if r != 0 {
                    return Err(GridError::InexactDivision);
                }
            } else if r > 0 {
                out.insert((a + d, a), r as u64);
            }
            above = r;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divides_w_itself() {
        let w = BigradedRanks::from_entries([((0, 0), 1), ((-1, -1), 1)]);
        let r = deconvolve(&w, 2).unwrap();
        assert_eq!(r, BigradedRanks::from_entries([((0, 0), 1)]));
    }

    #[test]
    fn inexact_division_detected() {
        let bad = BigradedRanks::from_entries([((0, 0), 1)]);
        assert_eq!(deconvolve(&bad, 2), Err(GridError::InexactDivision));
        let bad = BigradedRanks::from_entries([((0, 0), 1), ((-1, -1), 2)]);
        assert_eq!(deconvolve(&bad, 2), Err(GridError::InexactDivision));
    }

    #[test]
    fn roundtrip() {
        let r = BigradedRanks::from_entries([((0, 1), 1), ((-1, 0), 1), ((-2, -1), 1)]);
        assert_eq!(deconvolve(&r.tensor_w(4), 5).unwrap(), r);
        assert_eq!(r.tensor_w(4).total(), 48);
    }

    #[test]
    fn euler_characteristic_of_trefoil_ranks() {
        let r = BigradedRanks::from_entries([((0, 1), 1), ((-1, 0), 1), ((-2, -1), 1)]);
        assert_eq!(
            r.euler_characteristic(),
            LaurentPoly::parse("t - 1 + t^-1", Ring::Int).unwrap()
        );
    }
}
