use std::fmt;

use serde::Serialize;

use super::GridError;

/// A toroidal grid: column `i` carries an X in row `xs[i]` and an O in row
/// `os[i]`. Markers sit at cell centers `(i + 1/2, row + 1/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GridDiagram {
    xs: Vec<usize>,
    os: Vec<usize>,
}

fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    v.iter()
        .all(|&r| r < v.len() && !std::mem::replace(&mut seen[r], true))
}

impl GridDiagram {
    pub fn new(xs: Vec<usize>, os: Vec<usize>) -> Result<Self, GridError> {
        let n = xs.len();
        if n < 2 {
            return Err(GridError::InvalidGrid(format!("size {n} is below 2")));
        }
        if os.len() != n {
            return Err(GridError::SizeMismatch {
                expected: n,
                found: os.len(),
            });
        }
        if !is_permutation(&xs) || !is_permutation(&os) {
            return Err(GridError::InvalidGrid(
                "marker rows must form permutations".into(),
            ));
        }
        if let Some(i) = (0..n).find(|&i| xs[i] == os[i]) {
            return Err(GridError::InvalidGrid(format!(
                "column {} has X and O in the same cell",
                i + 1
            )));
        }
        Ok(Self { xs, os })
    }

    /// Parses the two-line format `X: x1 .. xn` / `O: o1 .. on` (1-indexed
    /// rows). Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, GridError> {
        let mut xs = None;
        let mut os = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| GridError::Parse {
                line: lineno + 1,
                msg,
            };
            let (tag, rest) = line
                .split_once(':')
                .ok_or_else(|| err("expected `X:` or `O:`".into()))?;
            let rows = rest
                .split_whitespace()
                .map(|tok| match tok.parse::<usize>() {
                    Ok(r) if r >= 1 => Ok(r - 1),
                    _ => Err(err(format!("bad row `{tok}`"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let slot = match tag.trim() {
                "X" | "x" => &mut xs,
                "O" | "o" => &mut os,
                other => return Err(err(format!("unknown marker line `{other}`"))),
            };
            if slot.replace(rows).is_some() {
                return Err(err(format!("duplicate `{}` line", tag.trim())));
            }
        }
        match (xs, os) {
            (Some(xs), Some(os)) => Self::new(xs, os),
            _ => Err(GridError::Parse {
                line: 0,
                msg: "need both an X line and an O line".into(),
            }),
        }
    }

    pub fn size(&self) -> usize {
        self.xs.len()
    }

    pub fn x_rows(&self) -> &[usize] {
        &self.xs
    }

    pub fn o_rows(&self) -> &[usize] {
        &self.os
    }

    /// Column of the O in each row.
    fn o_columns(&self) -> Vec<usize> {
        let mut inv = vec![0; self.size()];
        for (c, &r) in self.os.iter().enumerate() {
            inv[r] = c;
        }
        inv
    }

    /// Components of the associated link, each as the list of columns it
    /// visits (starting from its smallest column).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let o_col = self.o_columns();
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                cycle.push(c);
                c = o_col[self.xs[c]];
            }
            out.push(cycle);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Moves column 0 to the far right `k` times.
    pub fn rotate_columns(&self, k: usize) -> Self {
        let mut xs = self.xs.clone();
        let mut os = self.os.clone();
        xs.rotate_left(k % self.size());
        os.rotate_left(k % self.size());
        Self { xs, os }
    }

    /// Moves row 0 to the top `k` times.
    pub fn rotate_rows(&self, k: usize) -> Self {
        let n = self.size();
        let shift = |r: &usize| (r + n - k % n) % n;
        Self {
            xs: self.xs.iter().map(shift).collect(),
            os: self.os.iter().map(shift).collect(),
        }
    }

    /// Rotation of the torus by a half turn; presents the same knot.
    pub fn rotate_half_turn(&self) -> Self {
        let n = self.size();
        let flip = |v: &[usize]| v.iter().rev().map(|r| n - 1 - r).collect();
        Self {
            xs: flip(&self.xs),
            os: flip(&self.os),
        }
    }

    /// Swaps columns `c` and `c + 1`; allowed when their marker intervals
    /// are nested or disjoint.
    pub fn commute_columns(&self, c: usize) -> Result<Self, GridError> {
        let n = self.size();
        if c + 1 >= n {
            return Err(GridError::IllegalMove(format!("no column after {c}")));
        }
        let span = |i: usize| {
            let (a, b) = (self.xs[i], self.os[i]);
            (a.min(b), a.max(b))
        };
        if interleaved(span(c), span(c + 1)) {
            return Err(GridError::IllegalMove(format!(
                "columns {c} and {} interleave",
                c + 1
            )));
        }
        let mut g = self.clone();
        g.xs.swap(c, c + 1);
        g.os.swap(c, c + 1);
        Ok(g)
    }

    /// Swaps rows `r` and `r + 1` under the same condition.
    pub fn commute_rows(&self, r: usize) -> Result<Self, GridError> {
        self.transpose().commute_columns(r).map(|g| g.transpose())
    }

    /// Reflection in the main diagonal (rows become columns).
    fn transpose(&self) -> Self {
        let n = self.size();
        let mut xs = vec![0; n];
        let mut os = vec![0; n];
        for c in 0..n {
            xs[self.xs[c]] = c;
            os[self.os[c]] = c;
        }
        Self { xs, os }
    }

    /// Stabilization at the X of column `c`: a column and a row are inserted
    /// after `c` and after its X row `r`, and the X cell becomes the block
    /// with X at `(c, r+1)` and `(c+1, r)` and O at `(c+1, r+1)`.
    pub fn stabilize(&self, c: usize) -> Result<Self, GridError> {
        let n = self.size();
        if c >= n {
            return Err(GridError::IllegalMove(format!("no column {c}")));
        }
        let r = self.xs[c];
        let bump = |row: usize| if row > r { row + 1 } else { row };
        let mut xs = Vec::with_capacity(n + 1);
        let mut os = Vec::with_capacity(n + 1);
        for i in 0..n {
            if i == c {
                xs.push(r + 1);
                os.push(bump(self.os[i]));
                xs.push(r);
                os.push(r + 1);
            } else {
                xs.push(bump(self.xs[i]));
                os.push(bump(self.os[i]));
            }
        }
        Self::new(xs, os)
    }
}

/// Intervals that overlap without nesting, or share an endpoint.
fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |p: usize, s: (usize, usize)| s.0 < p && p < s.1;
    let touching = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    touching || inside(b.0, a) != inside(b.1, a)
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |v: &[usize]| {
            v.iter()
                .map(|r| (r + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "X: {}", line(&self.xs))?;
        writeln!(f, "O: {}", line(&self.os))
    }
}
