//! Braid words, band and quasipositive factorizations, closure data and the
//! conversion of a braid closure to a grid diagram.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::gridhfk::{GridDiagram, GridError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("generator {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i64, strands: usize },
    #[error("band ({i},{j}) invalid for {strands} strands")]
    InvalidBand { i: usize, j: usize, strands: usize },
    #[error("conjugator has {found} strands, expected {expected}")]
    StrandMismatch { expected: usize, found: usize },
    #[error("closure has {components} components, not a knot")]
    NotAKnot { components: usize },
    #[error("surface Euler characteristic {chi} is inconsistent with a knot closure")]
    NegativeGenus { chi: i64 },
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// A word in the Artin generators; `g > 0` is `σ_g`, `g < 0` is `σ_{-g}^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::Parse {
                pos: 0,
                msg: "strand count must be at least 1".into(),
            });
        }
        if let Some(&g) = letters
            .iter()
            .find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands)
        {
            return Err(BraidError::IndexOutOfRange { index: g, strands });
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        Self {
            strands: strands.max(1),
            letters: Vec::new(),
        }
    }

    /// Parses `n: g1 g2 ...`.
    pub fn parse(text: &str) -> Result<Self, BraidError> {
        let (strands, body, offset) = split_header(text)?;
        let mut letters = Vec::new();
        for (pos, tok) in tokens(body) {
            let g: i64 = tok.parse().map_err(|_| BraidError::Parse {
                pos: offset + pos,
                msg: format!("expected a nonzero integer, found `{tok}`"),
            })?;
            if g == 0 {
                return Err(BraidError::Parse {
                    pos: offset + pos,
                    msg: "generator index 0".into(),
                });
            }
            letters.push(g);
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Result<Self, BraidError> {
        if other.strands != self.strands {
            return Err(BraidError::StrandMismatch {
                expected: self.strands,
                found: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    /// Every crossing reversed; its closure is the mirror knot.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|g| -g).collect(),
        }
    }

    /// Cancels adjacent `g, -g` pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i64> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            if out.last() == Some(&-g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Self {
            strands: self.strands,
            letters: out,
        }
    }

    /// The same word on one more strand with `σ_n` appended.
    pub fn positive_stabilization(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.push(self.strands as i64);
        Self {
            strands: self.strands + 1,
            letters,
        }
    }

    /// `perm[p]` is the bottom position of the strand ending at top
    /// position `p`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        at
    }

    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for s in 0..perm.len() {
            if !seen[s] {
                cycles += 1;
                let mut c = s;
                while !seen[c] {
                    seen[c] = true;
                    c = perm[c];
                }
            }
        }
        cycles
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|g| g.signum()).sum()
    }

    /// `writhe - n` of the transverse braid closure.
    pub fn self_linking(&self) -> Result<i64, BraidError> {
        self.require_knot()?;
        Ok(self.writhe() - self.strands as i64)
    }

    pub(crate) fn require_knot(&self) -> Result<(), BraidError> {
        match self.closure_components() {
            1 => Ok(()),
            components => Err(BraidError::NotAKnot { components }),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for g in &self.letters {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

/// A product of band generators `σ_{i,j}`, `1 <= i < j <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BandWord {
    strands: usize,
    bands: Vec<(usize, usize)>,
}

impl BandWord {
    pub fn new(strands: usize, bands: Vec<(usize, usize)>) -> Result<Self, BraidError> {
        if let Some(&(i, j)) = bands
            .iter()
            .find(|&&(i, j)| !(1 <= i && i < j && j <= strands))
        {
            return Err(BraidError::InvalidBand { i, j, strands });
        }
        Ok(Self { strands, bands })
    }

    /// Parses `n: (i,j)(i,j)...`.
    pub fn parse(text: &str) -> Result<Self, BraidError> {
        let (strands, body, offset) = split_header(text)?;
        let mut sc = Scanner::new(body, offset);
        let mut bands = Vec::new();
        while sc.skip_ws() {
            sc.expect('(')?;
            let i = sc.unsigned()?;
            sc.expect(',')?;
            let j = sc.unsigned()?;
            sc.expect(')')?;
            bands.push((i, j));
        }
        Self::new(strands, bands)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn bands(&self) -> &[(usize, usize)] {
        &self.bands
    }

    /// Each band `(i, j)` as the factor `(σ_i ⋯ σ_{j-2}) σ_{j-1} (⋯)^{-1}`.
    pub fn to_quasipositive(&self) -> QuasipositiveWord {
        let factors = self
            .bands
            .iter()
            .map(|&(i, j)| {
                let conj = (i..j - 1).map(|g| g as i64).collect();
                (
                    BraidWord {
                        strands: self.strands,
                        letters: conj,
                    },
                    j - 1,
                )
            })
            .collect();
        QuasipositiveWord {
            strands: self.strands,
            factors,
        }
    }
}

impl fmt::Display for BandWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for (i, j) in &self.bands {
            write!(f, " ({i},{j})")?;
        }
        Ok(())
    }
}

/// A product of conjugates `w σ_j w^{-1}` of positive generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuasipositiveWord {
    strands: usize,
    factors: Vec<(BraidWord, usize)>,
}

impl QuasipositiveWord {
    pub fn new(strands: usize, factors: Vec<(BraidWord, usize)>) -> Result<Self, BraidError> {
        for (w, j) in &factors {
            if w.strands != strands {
                return Err(BraidError::StrandMismatch {
                    expected: strands,
                    found: w.strands,
                });
            }
            if *j == 0 || *j >= strands {
                return Err(BraidError::IndexOutOfRange {
                    index: *j as i64,
                    strands,
                });
            }
        }
        Ok(Self { strands, factors })
    }

    /// Parses `n: [w|j][w|j]...` where `w` is a space-separated conjugator
    /// (possibly empty) and `j` a positive generator index.
    pub fn parse(text: &str) -> Result<Self, BraidError> {
        let (strands, body, offset) = split_header(text)?;
        let mut sc = Scanner::new(body, offset);
        let mut factors = Vec::new();
        while sc.skip_ws() {
            sc.expect('[')?;
            let mut conj = Vec::new();
            loop {
                sc.skip_ws();
                if sc.peek() == Some('|') {
                    sc.bump();
                    break;
                }
                conj.push(sc.signed()?);
            }
            sc.skip_ws();
            let j = sc.unsigned()?;
            sc.skip_ws();
            sc.expect(']')?;
            factors.push((BraidWord::new(strands, conj)?, j));
        }
        Self::new(strands, factors)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[(BraidWord, usize)] {
        &self.factors
    }

    pub fn band_count(&self) -> usize {
        self.factors.len()
    }

    /// Euler characteristic `n - k` of the surface built from `n` disks
    /// and `k` bands.
    pub fn surface_chi(&self) -> i64 {
        self.strands as i64 - self.factors.len() as i64
    }

    pub fn surface_genus(&self) -> Result<u64, BraidError> {
        expand_quasipositive(self).require_knot()?;
        let chi = self.surface_chi();
        if chi > 1 || (1 - chi) % 2 != 0 {
            return Err(BraidError::NegativeGenus { chi });
        }
        Ok(((1 - chi) / 2) as u64)
    }
}

impl fmt::Display for QuasipositiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for (w, j) in &self.factors {
            let conj: Vec<String> = w.letters.iter().map(|g| g.to_string()).collect();
            write!(f, " [{}|{}]", conj.join(" "), j)?;
        }
        Ok(())
    }
}

pub fn parse_braid(text: &str) -> Result<BraidWord, BraidError> {
    BraidWord::parse(text)
}

pub fn expand_band(word: &BandWord) -> BraidWord {
    expand_quasipositive(&word.to_quasipositive())
}

pub fn expand_quasipositive(word: &QuasipositiveWord) -> BraidWord {
    let mut letters = Vec::new();
    for (w, j) in &word.factors {
        letters.extend_from_slice(&w.letters);
        letters.push(*j as i64);
        letters.extend(w.letters.iter().rev().map(|g| -g));
    }
    BraidWord {
        strands: word.strands,
        letters,
    }
}

pub fn closure_components(b: &BraidWord) -> usize {
    b.closure_components()
}

pub fn writhe(b: &BraidWord) -> i64 {
    b.writhe()
}

pub fn self_linking(b: &BraidWord) -> Result<i64, BraidError> {
    b.self_linking()
}

pub fn quasipositive_surface_chi(word: &QuasipositiveWord) -> i64 {
    word.surface_chi()
}

pub fn quasipositive_surface_genus(word: &QuasipositiveWord) -> Result<u64, BraidError> {
    word.surface_genus()
}

fn split_header(text: &str) -> Result<(usize, &str, usize), BraidError> {
    let colon = text.find(':').ok_or(BraidError::Parse {
        pos: 0,
        msg: "expected `n:` header".into(),
    })?;
    let head = &text[..colon];
    let lead = head.len() - head.trim_start().len();
    let strands: usize = head.trim().parse().map_err(|_| BraidError::Parse {
        pos: lead,
        msg: format!("bad strand count `{}`", head.trim()),
    })?;
    if strands == 0 {
        return Err(BraidError::Parse {
            pos: lead,
            msg: "strand count must be at least 1".into(),
        });
    }
    Ok((strands, &text[colon + 1..], colon + 1))
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - s.as_ptr() as usize, tok))
}

struct Scanner<'a> {
    s: &'a str,
    pos: usize,
    offset: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str, offset: usize) -> Self {
        Self { s, pos: 0, offset }
    }

    fn peek(&self) -> Option<char> {
        self.s[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    /// Skips whitespace; returns whether input remains.
    fn skip_ws(&mut self) -> bool {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
        self.pos < self.s.len()
    }

    fn error(&self, msg: String) -> BraidError {
        BraidError::Parse {
            pos: self.offset + self.pos,
            msg,
        }
    }

    fn expect(&mut self, want: char) -> Result<(), BraidError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        &self.s[start..self.pos]
    }

    fn unsigned(&mut self) -> Result<usize, BraidError> {
        self.skip_ws();
        let d = self.digits();
        d.parse()
            .map_err(|_| self.error("expected a positive integer".into()))
    }

    fn signed(&mut self) -> Result<i64, BraidError> {
        self.skip_ws();
        let neg = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let d = self.digits();
        let v: i64 = d
            .parse()
            .map_err(|_| self.error("expected a generator index".into()))?;
        Ok(if neg { -v } else { v })
    }
}

/// A grid diagram of the braid closure.
///
/// Strands run upward and every vertical segment lives in its own column.
/// Each letter is one horizontal jog into a fresh column: for `σ_i` the
/// strand at position `i + 1` jogs left just past the vertical of the strand
/// at position `i`, passing under it; for `σ_i^{-1}` the strand at position
/// `i` jogs right under the strand at `i + 1`. Strands that never jog get one
/// jog into an adjacent column first. At the top each strand jogs back to
/// its starting column, whose vertical wraps around the torus; these jogs
/// are ordered so that none of them crosses a vertical. The grid has size
/// `n + letters + idle strands`.
pub fn braid_to_grid(b: &BraidWord) -> Result<GridDiagram, BraidError> {
    let n = b.strands;
    let mut jogs_per_strand = vec![0usize; n];
    {
        let mut at: Vec<usize> = (0..n).collect();
        for &g in &b.letters {
            let i = g.unsigned_abs() as usize - 1;
            let mover = if g > 0 { i + 1 } else { i };
            jogs_per_strand[at[mover]] += 1;
            at.swap(i, i + 1);
        }
    }

    // column ids in left-to-right order; entry = O row, exit = X row
    let mut order: Vec<usize> = (0..n).collect();
    let mut entry: Vec<Option<usize>> = vec![None; n];
    let mut exit: Vec<Option<usize>> = vec![None; n];
    let mut cur: Vec<usize> = (0..n).collect();
    let mut row = 0usize;

    let fresh = |order: &mut Vec<usize>,
                 entry: &mut Vec<Option<usize>>,
                 exit: &mut Vec<Option<usize>>,
                 slot: usize,
                 r: usize| {
        let id = entry.len();
        entry.push(Some(r));
        exit.push(None);
        order.insert(slot, id);
        id
    };
    let index_of = |order: &[usize], id: usize| order.iter().position(|&c| c == id).unwrap();

    for p in 0..n {
        if jogs_per_strand[p] == 0 {
            let slot = index_of(&order, cur[p]) + 1;
            exit[cur[p]] = Some(row);
            cur[p] = fresh(&mut order, &mut entry, &mut exit, slot, row);
            row += 1;
        }
    }
    for &g in &b.letters {
        let i = g.unsigned_abs() as usize - 1;
        let (mover, slot) = if g > 0 {
            (i + 1, index_of(&order, cur[i]))
        } else {
            (i, index_of(&order, cur[i + 1]) + 1)
        };
        exit[cur[mover]] = Some(row);
        cur[mover] = fresh(&mut order, &mut entry, &mut exit, slot, row);
        cur.swap(i, i + 1);
        row += 1;
    }
    let right_movers: Vec<usize> = (0..n)
        .rev()
        .filter(|&k| index_of(&order, k) > index_of(&order, cur[k]))
        .collect();
    let left_movers: Vec<usize> = (0..n)
        .filter(|&k| index_of(&order, k) < index_of(&order, cur[k]))
        .collect();
    for k in right_movers.into_iter().chain(left_movers) {
        exit[cur[k]] = Some(row);
        entry[k] = Some(row);
        row += 1;
    }

    debug_assert_eq!(row, order.len());
    let xs = order
        .iter()
        .map(|&c| exit[c].expect("every column exits"))
        .collect();
    let os = order
        .iter()
        .map(|&c| entry[c].expect("every column is entered"))
        .collect();
    Ok(GridDiagram::new(xs, os)?)
}

/// The grid carrying the transverse invariant of the closure of `b`.
///
/// The canonical states of a grid live in the homology of the knot the grid
/// presents, while the invariant of a transverse knot lives in the homology
/// of its mirror, so this is the grid of the mirrored word. It is turned by
/// a half turn so that the northeast-corner state, rather than the
/// southwest one, is the invariant of the positive push-off.
pub fn transverse_grid(b: &BraidWord) -> Result<GridDiagram, BraidError> {
    Ok(braid_to_grid(&b.mirror())?.rotate_half_turn())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let b = parse_braid("2: 1 1 1").unwrap();
        assert_eq!((b.strands(), b.letters()), (2, &[1, 1, 1][..]));
        let b = parse_braid("3: 1 -2 1 -2").unwrap();
        assert_eq!(b.letters(), &[1, -2, 1, -2]);
        assert_eq!(
            parse_braid("2: 3"),
            Err(BraidError::IndexOutOfRange {
                index: 3,
                strands: 2
            })
        );
        assert!(matches!(
            parse_braid("2: 1 x"),
            Err(BraidError::Parse { pos: 5, .. })
        ));
        assert!(matches!(parse_braid("1 1"), Err(BraidError::Parse { .. })));
        assert_eq!(parse_braid("1:").unwrap(), BraidWord::identity(1));
    }

    #[test]
    fn band_expansion() {
        let w = BandWord::parse("2: (1,2)").unwrap();
        assert_eq!(expand_band(&w).letters(), &[1]);
        let w = BandWord::parse("3: (1,3)").unwrap();
        assert_eq!(expand_band(&w).letters(), &[1, 2, -1]);
        let w = BandWord::parse("4: (2,4)").unwrap();
        assert_eq!(expand_band(&w).letters(), &[2, 3, -2]);
        assert!(BandWord::parse("3: (2,2)").is_err());
        assert!(BandWord::parse("3: (1,4)").is_err());
        assert!(matches!(
            BandWord::parse("3: (1 2)"),
            Err(BraidError::Parse { .. })
        ));
    }

    #[test]
    fn quasipositive_expansion() {
        let w = QuasipositiveWord::parse("2: [|1]").unwrap();
        assert_eq!(expand_quasipositive(&w).letters(), &[1]);
        let w = QuasipositiveWord::parse("3: [2|1]").unwrap();
        assert_eq!(expand_quasipositive(&w).letters(), &[2, 1, -2]);
        let w = QuasipositiveWord::parse("4: [1 -3|2][ |3]").unwrap();
        assert_eq!(expand_quasipositive(&w).letters(), &[1, -3, 2, 3, -1, 3]);
        assert_eq!(QuasipositiveWord::parse(&w.to_string()).unwrap(), w);
        assert!(QuasipositiveWord::parse("2: [|2]").is_err());
    }

    #[test]
    fn closure_data() {
        let tref = parse_braid("2: 1 1 1").unwrap();
        assert_eq!(closure_components(&tref), 1);
        assert_eq!(closure_components(&BraidWord::identity(3)), 3);
        assert_eq!(closure_components(&parse_braid("2: 1 1").unwrap()), 2);
        assert_eq!((writhe(&tref), self_linking(&tref)), (3, Ok(1)));
        assert_eq!(self_linking(&BraidWord::identity(1)), Ok(-1));
        assert_eq!(writhe(&parse_braid("3: 1 -2 1 -2").unwrap()), 0);
        assert_eq!(
            self_linking(&parse_braid("2: 1 1").unwrap()),
            Err(BraidError::NotAKnot { components: 2 })
        );
    }

    #[test]
    fn surface_data() {
        let disk = QuasipositiveWord::parse("2: [|1]").unwrap();
        assert_eq!((disk.surface_chi(), disk.surface_genus()), (1, Ok(0)));
        let tref = BandWord::parse("2: (1,2)(1,2)(1,2)")
            .unwrap()
            .to_quasipositive();
        assert_eq!((tref.surface_chi(), tref.surface_genus()), (-1, Ok(1)));
        let w = BandWord::parse("4: (1,2)(2,3)(3,4)(1,2)(2,3)")
            .unwrap()
            .to_quasipositive();
        assert_eq!(expand_quasipositive(&w).closure_components(), 1);
        assert_eq!((w.surface_chi(), w.surface_genus()), (-1, Ok(1)));
        let link = QuasipositiveWord::parse("2: [|1][|1]").unwrap();
        assert!(matches!(
            link.surface_genus(),
            Err(BraidError::NotAKnot { .. })
        ));
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(braid_to_grid(&BraidWord::identity(1)).unwrap().size(), 2);
        let g = braid_to_grid(&parse_braid("2: 1 1 1").unwrap()).unwrap();
        assert_eq!(g.size(), 5);
        assert!(g.is_knot());
        // the idle strand gets its own row
        let g = braid_to_grid(&parse_braid("2: 1").unwrap()).unwrap();
        assert_eq!(g.size(), 4);
        let g = braid_to_grid(&parse_braid("3: 1 -2 1 -2").unwrap()).unwrap();
        assert!(g.is_knot());
        assert_eq!(g.size(), 7);
    }

    #[test]
    fn grid_components_match_closure() {
        for text in ["2: 1 1", "3:", "3: 1", "4: 1 2 -3 1", "3: 1 2 1 2"] {
            let b = parse_braid(text).unwrap();
            assert_eq!(
                braid_to_grid(&b).unwrap().component_count(),
                b.closure_components(),
                "{text}"
            );
        }
    }
}
