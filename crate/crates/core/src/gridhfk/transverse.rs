use serde::Serialize;

use super::complex::{default_cap, GradedStates, Grader, Reducer};
use super::diagram::GridDiagram;
use super::state::GridState;
use super::GridError;

/// Which canonical generator to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransverseVariant {
    /// Northeast corners of the X cells.
    Plus,
    /// Southwest corners of the X cells.
    Minus,
}

/// A homogeneous GF(2) chain: a set of states with a common bigrading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleClass {
    pub states: Vec<GridState>,
    pub maslov: i64,
    pub alexander: i64,
}

impl CycleClass {
    /// Builds a chain from states (repeats cancel in pairs) and checks that
    /// it is homogeneous with an integral Alexander grading.
    pub fn new(states: Vec<GridState>, g: &GridDiagram) -> Result<Self, GridError> {
        let mut states = states;
        states.sort();
        let mut dedup: Vec<GridState> = Vec::with_capacity(states.len());
        for s in states {
            if dedup.last() == Some(&s) {
                dedup.pop();
            } else {
                dedup.push(s);
            }
        }
        let grader = Grader::new(g);
        let mut grade = None;
        let mut buf = [0u8; 16];
        for s in &dedup {
            if s.size() != g.size() {
                return Err(GridError::SizeMismatch {
                    expected: g.size(),
                    found: s.size(),
                });
            }
            s.unpack_into(&mut buf);
            let gr = grader.grade(&buf);
            if *grade.get_or_insert(gr) != gr {
                return Err(GridError::GradingMismatch);
            }
        }
        let (maslov, a2) = grade.unwrap_or((0, 0));
        if a2 % 2 != 0 {
            return Err(GridError::GradingMismatch);
        }
        Ok(Self {
            states: dedup,
            maslov,
            alexander: a2 / 2,
        })
    }

    /// The zero chain placed in a given bigrading.
    pub fn zero(maslov: i64, alexander: i64) -> Self {
        Self {
            states: Vec::new(),
            maslov,
            alexander,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.states.is_empty()
    }
}

/// The canonical cycle of a knot grid: for `Plus`, the state whose point in
/// column `i + 1` sits at row `x(i) + 1` (mod n); for `Minus`, the state at
/// the lower-left corners of the X cells.
pub fn transverse_state(
    g: &GridDiagram,
    variant: TransverseVariant,
) -> Result<CycleClass, GridError> {
    let k = g.component_count();
    if k != 1 {
        return Err(GridError::NotAKnot { components: k });
    }
    let n = g.size();
    let mut rows = vec![0; n];
    for (i, &r) in g.x_rows().iter().enumerate() {
        match variant {
            TransverseVariant::Plus => rows[(i + 1) % n] = (r + 1) % n,
            TransverseVariant::Minus => rows[i] = r,
        }
    }
    CycleClass::new(vec![GridState::new(&rows)?], g)
}

/// Whether a homogeneous cycle is nonzero in homology, decided by
/// reducing it against the boundaries out of bigrading `(M + 1, A)`.
pub fn is_nonzero_class(c: &CycleClass, g: &GridDiagram) -> Result<bool, GridError> {
    is_nonzero_class_with_cap(c, g, default_cap())
}

pub fn is_nonzero_class_with_cap(
    c: &CycleClass,
    g: &GridDiagram,
    cap: usize,
) -> Result<bool, GridError> {
    if c.is_zero() {
        return Ok(false);
    }
    // recheck homogeneity against this diagram
    let checked = CycleClass::new(c.states.clone(), g)?;
    if (checked.maslov, checked.alexander) != (c.maslov, c.alexander) {
        return Err(GridError::GradingMismatch);
    }
    if g.size() > cap {
        return Err(GridError::TooLarge {
            size: g.size(),
            cap,
        });
    }
    let states = GradedStates::build(g);
    let gr = (c.maslov, 2 * c.alexander);
    let mut chain: Vec<u32> = c.states.iter().map(|s| states.local[s.rank()]).collect();
    chain.sort_unstable();

    let mut image = Vec::new();
    let mut pairs = Vec::new();
    let mut buf = [0u8; 16];
    for s in &c.states {
        s.unpack_into(&mut buf);
        states.grader.boundary_pairs(&buf, &mut pairs);
        image.extend(pairs.iter().map(|&(i, j)| s.swapped(i, j)));
    }
    image.sort();
    let mut i = 0;
    while i < image.len() {
        let run = image[i..].iter().take_while(|s| **s == image[i]).count();
        if run % 2 == 1 {
            return Err(GridError::NotACycle);
        }
        i += run;
    }

    let mut red = Reducer::default();
    for col in states.boundary_columns((gr.0 + 1, gr.1)) {
        red.insert(col);
    }
    Ok(!red.reduce(chain).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_plus_state_is_nonzero() {
        let g = GridDiagram::new(vec![0, 1], vec![1, 0]).unwrap();
        let c = transverse_state(&g, TransverseVariant::Plus).unwrap();
        assert_eq!(c.states[0].rows(), vec![0, 1]);
        assert!(is_nonzero_class(&c, &g).unwrap());
        assert!(!is_nonzero_class(&CycleClass::zero(0, 0), &g).unwrap());
    }

    #[test]
    fn inhomogeneous_chain_rejected() {
        let g = GridDiagram::new(vec![0, 1], vec![1, 0]).unwrap();
        let states = vec![
            GridState::new(&[0, 1]).unwrap(),
            GridState::new(&[1, 0]).unwrap(),
        ];
        assert_eq!(CycleClass::new(states, &g), Err(GridError::GradingMismatch));
    }
}
