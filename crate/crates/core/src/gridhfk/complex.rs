use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;
use rayon::prelude::*;

use super::diagram::GridDiagram;
use super::ranks::BigradedRanks;
use super::state::{factorial, GridState};
use super::GridError;

/// Environment variable overriding the default grid-size cap.
pub const GRID_CAP_ENV: &str = "RIMSURF_GRID_CAP";
pub const DEFAULT_GRID_CAP: usize = 8;

/// The grid-size cap: `RIMSURF_GRID_CAP` if set to a number, else 8.
pub fn default_cap() -> usize {
    std::env::var(GRID_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GRID_CAP)
}

/// Precomputed marker data for grading computations.
pub(crate) struct Grader {
    n: usize,
    xs: [u8; 16],
    os: [u8; 16],
    xx: i64,
    oo: i64,
}

fn inversions_up(p: &[u8]) -> i64 {
    let mut count = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] < p[j] {
                count += 1;
            }
        }
    }
    count
}

impl Grader {
    pub(crate) fn new(g: &GridDiagram) -> Self {
        let n = g.size();
        let mut xs = [0u8; 16];
        let mut os = [0u8; 16];
        for i in 0..n {
            xs[i] = g.x_rows()[i] as u8;
            os[i] = g.o_rows()[i] as u8;
        }
        Self {
            n,
            xx: inversions_up(&xs[..n]),
            oo: inversions_up(&os[..n]),
            xs,
            os,
        }
    }

    /// `I(x,x) - I(x,P) - I(P,x) + I(P,P) + 1` for the markers `P`.
    fn m(&self, rows: &[u8], markers: &[u8], pp: i64, xx: i64) -> i64 {
        let n = self.n;
        let mut cross = 0i64;
        for (i, &r) in rows.iter().enumerate().take(n) {
            for (k, &p) in markers.iter().enumerate().take(n) {
                // lattice point (i, r) is SW of the center (k+1/2, p+1/2)
                // iff i <= k and r <= p; the center is SW of it iff k < i and p < r
                if (i <= k && r <= p) || (k < i && p < r) {
                    cross += 1;
                }
            }
        }
        xx - cross + pp + 1
    }

    /// `(M, 2A)`.
    pub(crate) fn grade(&self, rows: &[u8]) -> (i64, i64) {
        let xx = inversions_up(&rows[..self.n]);
        let mo = self.m(rows, &self.os[..self.n], self.oo, xx);
        let mx = self.m(rows, &self.xs[..self.n], self.xx, xx);
        (mo, mo - mx - (self.n as i64 - 1))
    }

    /// Rectangle with lower-left corner `(l, b)`, width `w` and height `h`
    /// (on the torus) avoids all markers and all points of `rows`.
    fn empty(&self, rows: &[u8], l: usize, w: usize, b: usize, h: usize) -> bool {
        let n = self.n;
        let off = |r: u8| (r as usize + n - b) % n;
        for dc in 0..w {
            let c = (l + dc) % n;
            if off(self.xs[c]) < h || off(self.os[c]) < h {
                return false;
            }
            if dc > 0 {
                let d = off(rows[c]);
                if d > 0 && d < h {
                    return false;
                }
            }
        }
        true
    }

    /// Column pairs `(i, j)` whose swap is counted an odd number of times
    /// by the tilde differential.
    pub(crate) fn boundary_pairs(&self, rows: &[u8], out: &mut Vec<(usize, usize)>) {
        let n = self.n;
        out.clear();
        for i in 0..n {
            for j in i + 1..n {
                let (ri, rj) = (rows[i] as usize, rows[j] as usize);
                let a = self.empty(rows, i, j - i, ri, (rj + n - ri) % n);
                let b = self.empty(rows, j, n - (j - i), rj, (ri + n - rj) % n);
                if a != b {
                    out.push((i, j));
                }
            }
        }
    }
}

fn check_size(x: &GridState, g: &GridDiagram) -> Result<(), GridError> {
    if x.size() != g.size() {
        return Err(GridError::SizeMismatch {
            expected: g.size(),
            found: x.size(),
        });
    }
    Ok(())
}

/// Maslov and Alexander gradings of a state. The Alexander grading is a
/// half-integer in general and an integer for knots.
pub fn gradings(x: &GridState, g: &GridDiagram) -> Result<(i64, Rational64), GridError> {
    check_size(x, g)?;
    let mut buf = [0u8; 16];
    x.unpack_into(&mut buf);
    let (m, a2) = Grader::new(g).grade(&buf);
    Ok((m, Rational64::new(a2, 2)))
}

/// States reached from `x` by one empty rectangle, counted mod 2, sorted.
pub fn differential_tilde(x: &GridState, g: &GridDiagram) -> Result<Vec<GridState>, GridError> {
    check_size(x, g)?;
    let grader = Grader::new(g);
    let mut buf = [0u8; 16];
    x.unpack_into(&mut buf);
    let mut pairs = Vec::new();
    grader.boundary_pairs(&buf, &mut pairs);
    let mut out: Vec<GridState> = pairs.into_iter().map(|(i, j)| x.swapped(i, j)).collect();
    out.sort();
    Ok(out)
}

/// All states of a grid grouped by bigrading `(M, 2A)`.
pub(crate) struct GradedStates {
    pub(crate) n: usize,
    pub(crate) grader: Grader,
    /// Bigrading of each state, indexed by rank.
    pub(crate) grade: Vec<(i64, i64)>,
    /// Ranks of the states in each bigrading, ascending.
    pub(crate) pieces: BTreeMap<(i64, i64), Vec<u32>>,
    /// Position of each state within its piece.
    pub(crate) local: Vec<u32>,
}

impl GradedStates {
    pub(crate) fn build(g: &GridDiagram) -> Self {
        let n = g.size();
        let grader = Grader::new(g);
        let grade: Vec<(i64, i64)> = (0..factorial(n))
            .into_par_iter()
            .map(|r| {
                let mut buf = [0u8; 16];
                GridState::unrank(n, r).unpack_into(&mut buf);
                grader.grade(&buf)
            })
            .collect();
        let mut pieces: BTreeMap<(i64, i64), Vec<u32>> = BTreeMap::new();
        let mut local = vec![0u32; grade.len()];
        for (r, gr) in grade.iter().enumerate() {
            let piece = pieces.entry(*gr).or_default();
            local[r] = piece.len() as u32;
            piece.push(r as u32);
        }
        Self {
            n,
            grader,
            grade,
            pieces,
            local,
        }
    }

    /// Columns of the differential out of the piece `gr`, each listing
    /// local indices in the piece `(M-1, 2A)`.
    pub(crate) fn boundary_columns(&self, gr: (i64, i64)) -> Vec<Vec<u32>> {
        let Some(sources) = self.pieces.get(&gr) else {
            return Vec::new();
        };
        sources
            .par_iter()
            .map_init(
                || (Vec::new(), [0u8; 16]),
                |(pairs, buf), &r| {
                    let x = GridState::unrank(self.n, r as usize);
                    x.unpack_into(buf);
                    self.grader.boundary_pairs(&buf[..], pairs);
                    let mut col: Vec<u32> = pairs
                        .iter()
                        .map(|&(i, j)| {
                            let y = x.swapped(i, j).rank();
                            debug_assert_eq!(self.grade[y], (gr.0 - 1, gr.1));
                            self.local[y]
                        })
                        .collect();
                    col.sort_unstable();
                    col
                },
            )
            .collect()
    }
}

/// Sparse GF(2) column reduction keyed by the largest row index.
#[derive(Default)]
pub(crate) struct Reducer {
    pivots: HashMap<u32, Vec<u32>>,
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Reducer {
    pub(crate) fn reduce(&self, mut col: Vec<u32>) -> Vec<u32> {
        while let Some(p) = col.last() {
            match self.pivots.get(p) {
                Some(c) => col = xor_sorted(&col, c),
                None => break,
            }
        }
        col
    }

    /// Adds a column; returns whether it was independent of the others.
    pub(crate) fn insert(&mut self, col: Vec<u32>) -> bool {
        let col = self.reduce(col);
        match col.last() {
            Some(&p) => {
                self.pivots.insert(p, col);
                true
            }
            None => false,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn boundary_rank(states: &GradedStates, gr: (i64, i64)) -> usize {
    let mut red = Reducer::default();
    for col in states.boundary_columns(gr) {
        red.insert(col);
    }
    red.rank()
}

fn check_knot(g: &GridDiagram) -> Result<(), GridError> {
    let k = g.component_count();
    if k != 1 {
        return Err(GridError::NotAKnot { components: k });
    }
    Ok(())
}

fn check_cap(g: &GridDiagram, cap: usize) -> Result<(), GridError> {
    if g.size() > cap {
        return Err(GridError::TooLarge {
            size: g.size(),
            cap,
        });
    }
    Ok(())
}

/// Bigraded GF(2) homology of the tilde complex, with the default size cap.
pub fn homology(g: &GridDiagram) -> Result<BigradedRanks, GridError> {
    homology_with_cap(g, default_cap())
}

pub fn homology_with_cap(g: &GridDiagram, cap: usize) -> Result<BigradedRanks, GridError> {
    check_knot(g)?;
    check_cap(g, cap)?;
    let states = GradedStates::build(g);
    let keys: Vec<(i64, i64)> = states.pieces.keys().copied().collect();
    let ranks: HashMap<(i64, i64), usize> = keys
        .par_iter()
        .map(|&gr| (gr, boundary_rank(&states, gr)))
        .collect();
    let mut out = BTreeMap::new();
    for (&(m, a2), piece) in &states.pieces {
        let out_rank = ranks[&(m, a2)];
        let in_rank = ranks.get(&(m + 1, a2)).copied().unwrap_or(0);
        let h = piece.len() - out_rank - in_rank;
        if h > 0 {
            debug_assert!(a2 % 2 == 0);
            out.insert((m, a2 / 2), h as u64);
        }
    }
    Ok(BigradedRanks::from_map(out))
}
