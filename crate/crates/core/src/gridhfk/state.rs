use std::fmt;

use serde::{Serialize, Serializer};

use super::GridError;

/// A grid generator: one lattice point `(i, x(i))` per column, packed four
/// bits per entry with column 0 in the high nibble, so integer order is
/// lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridState {
    n: u8,
    packed: u64,
}

impl GridState {
    pub fn new(rows: &[usize]) -> Result<Self, GridError> {
        let n = rows.len();
        if n == 0 || n > 16 {
            return Err(GridError::InvalidGrid(format!(
                "state size {n} out of range"
            )));
        }
        let mut seen = 0u32;
        let mut packed = 0u64;
        for &r in rows {
            if r >= n || seen & (1 << r) != 0 {
                return Err(GridError::InvalidGrid("state is not a permutation".into()));
            }
            seen |= 1 << r;
            packed = (packed << 4) | r as u64;
        }
        Ok(Self { n: n as u8, packed })
    }

    pub fn size(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize) -> usize {
        ((self.packed >> (4 * (self.size() - 1 - i))) & 0xf) as usize
    }

    pub fn rows(&self) -> Vec<usize> {
        (0..self.size()).map(|i| self.get(i)).collect()
    }

    /// Fills `buf[..n]` with the rows.
    #[inline]
    pub(crate) fn unpack_into(&self, buf: &mut [u8; 16]) {
        let n = self.size();
        let mut p = self.packed;
        for i in (0..n).rev() {
            buf[i] = (p & 0xf) as u8;
            p >>= 4;
        }
    }

    #[inline]
    pub(crate) fn swapped(&self, i: usize, j: usize) -> Self {
        let n = self.size();
        let (si, sj) = (4 * (n - 1 - i), 4 * (n - 1 - j));
        let (a, b) = ((self.packed >> si) & 0xf, (self.packed >> sj) & 0xf);
        let cleared = self.packed & !((0xf << si) | (0xf << sj));
        Self {
            n: self.n,
            packed: cleared | (b << si) | (a << sj),
        }
    }

    /// Position in the lexicographic order of permutations (Lehmer code).
    pub fn rank(&self) -> usize {
        let n = self.size();
        let mut used = 0u32;
        let mut r = 0usize;
        for i in 0..n {
            let v = self.get(i);
            let smaller_unused = (v as u32 - (used & ((1 << v) - 1)).count_ones()) as usize;
            r = r * (n - i) + smaller_unused;
            used |= 1 << v;
        }
        r
    }

    /// Inverse of [`GridState::rank`].
    pub fn unrank(n: usize, mut r: usize) -> Self {
        let mut digits = vec![0usize; n];
        for (k, d) in digits.iter_mut().enumerate().rev() {
            let base = n - k;
            *d = r % base;
            r /= base;
        }
        let mut free: Vec<usize> = (0..n).collect();
        let rows: Vec<usize> = digits.into_iter().map(|d| free.remove(d)).collect();
        Self::new(&rows).expect("unrank yields a permutation")
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl fmt::Debug for GridState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridState{:?}", self.rows())
    }
}

impl fmt::Display for GridState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows().iter().map(|r| (r + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl Serialize for GridState {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_unrank_roundtrip() {
        for n in 1..=5 {
            for r in 0..factorial(n) {
                let s = GridState::unrank(n, r);
                assert_eq!(s.rank(), r);
            }
        }
    }

    #[test]
    fn rank_follows_lexicographic_order() {
        let n = 4;
        let states: Vec<GridState> = (0..factorial(n)).map(|r| GridState::unrank(n, r)).collect();
        assert!(states.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(states[0].rows(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn swapping() {
        let s = GridState::new(&[2, 0, 1]).unwrap();
        assert_eq!(s.swapped(0, 2).rows(), vec![1, 0, 2]);
        assert!(GridState::new(&[0, 0]).is_err());
    }
}
