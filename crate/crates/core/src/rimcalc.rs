//! Ω of quasipositive surfaces and certificates of pairwise distinctness for
//! 1-twist rim-surgery families.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::alexander::{connected_sum_alexander, is_normalized, AlexanderError};
use crate::braid::{expand_quasipositive, transverse_grid, BraidError, QuasipositiveWord};
use crate::gridhfk::{
    default_cap, is_nonzero_class_with_cap, transverse_state, GridError, TransverseVariant,
};
use crate::polyalg::{
    omega_ring, omega_substituted, vector_gcd, LaurentPoly, OmegaValue, PolyError, Ring,
    UnimodularMap,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RimError {
    #[error("closure has {components} components, not a knot")]
    NotAKnot { components: usize },
    #[error("surface has genus 0; Ω needs positive genus")]
    GenusZero,
    #[error("curve class {0:?} is not primitive")]
    NonPrimitiveCurve(Vec<i64>),
    #[error("base surface has Ω = -inf")]
    NegativeBase,
    #[error("pattern polynomial is not normalized: {0}")]
    NotNormalized(String),
    #[error("invalid family: {0}")]
    InvalidSpec(String),
    #[error("grid of size {size} exceeds the cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error(transparent)]
    Braid(BraidError),
    #[error(transparent)]
    Alexander(AlexanderError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Grid(GridError),
}

impl From<BraidError> for RimError {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::NotAKnot { components } => RimError::NotAKnot { components },
            BraidError::Grid(g) => g.into(),
            other => RimError::Braid(other),
        }
    }
}

impl From<GridError> for RimError {
    fn from(e: GridError) -> Self {
        match e {
            GridError::TooLarge { size, cap } => RimError::TooLarge { size, cap },
            GridError::NotAKnot { components } => RimError::NotAKnot { components },
            other => RimError::Grid(other),
        }
    }
}

impl From<AlexanderError> for RimError {
    fn from(e: AlexanderError) -> Self {
        match e {
            AlexanderError::NotNormalized(s) => RimError::NotNormalized(s),
            AlexanderError::NotAKnot { components } => RimError::NotAKnot { components },
            AlexanderError::Poly(p) => RimError::Poly(p),
            other => RimError::Alexander(other),
        }
    }
}

/// Ω of the surface bounded by a quasipositive closure, with the data that
/// justifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasipositiveOmega {
    pub value: OmegaValue,
    pub word: String,
    pub genus: u64,
}

/// The surface of a quasipositive factorization has Ω = 0.
pub fn omega_quasipositive(word: &QuasipositiveWord) -> Result<QuasipositiveOmega, RimError> {
    let genus = word.surface_genus()?;
    if genus == 0 {
        return Err(RimError::GenusZero);
    }
    Ok(QuasipositiveOmega {
        value: OmegaValue::Finite(0),
        word: word.to_string(),
        genus,
    })
}

/// Lefschetz polynomial of the 1-twist self-concordance of `#_n J`: `Δ_J^n`.
pub fn lefschetz_of_twist(delta: &LaurentPoly, n: u32) -> Result<LaurentPoly, RimError> {
    if n == 0 {
        return Err(RimError::InvalidSpec("twist count must be positive".into()));
    }
    if !is_normalized(delta) {
        return Err(RimError::NotNormalized(delta.to_string()));
    }
    Ok(connected_sum_alexander(&vec![delta.clone(); n as usize])?)
}

/// Whether the transverse class of the closure is nonzero, decided on a
/// grid of the closure. Errors with `TooLarge` past the grid cap.
pub fn verify_nonvanishing(word: &QuasipositiveWord) -> Result<bool, RimError> {
    verify_nonvanishing_with_cap(word, default_cap())
}

pub fn verify_nonvanishing_with_cap(
    word: &QuasipositiveWord,
    cap: usize,
) -> Result<bool, RimError> {
    let b = expand_quasipositive(word);
    b.require_knot()?;
    let g = transverse_grid(&b)?;
    if g.size() > cap {
        return Err(RimError::TooLarge {
            size: g.size(),
            cap,
        });
    }
    let c = transverse_state(&g, TransverseVariant::Plus)?;
    Ok(is_nonzero_class_with_cap(&c, &g, cap)?)
}

/// Where the base value Ω(S) came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseProvenance {
    /// Not supplied; 0 assumed.
    Default,
    UserAsserted,
    Quasipositive {
        word: String,
        genus: u64,
        /// `Some(verdict)` when the transverse class was checked on a grid,
        /// `None` when the grid was over the cap.
        nonvanishing_checked: Option<bool>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub genus: u32,
    pub curve: Vec<i64>,
    pub pattern: LaurentPoly,
    pub base_omega: OmegaValue,
    pub base_provenance: BaseProvenance,
    pub indices: Vec<u32>,
    pub ring: Ring,
}

impl FamilySpec {
    /// A family over a base with Ω(S) = 0 by default.
    pub fn new(genus: u32, curve: Vec<i64>, pattern: LaurentPoly, indices: Vec<u32>) -> Self {
        Self {
            genus,
            curve,
            pattern,
            base_omega: OmegaValue::Finite(0),
            base_provenance: BaseProvenance::Default,
            indices,
            ring: Ring::Gf2,
        }
    }

    pub fn with_ring(mut self, ring: Ring) -> Self {
        self.ring = ring;
        self
    }

    pub fn with_base(mut self, omega: OmegaValue) -> Self {
        self.base_omega = omega;
        self.base_provenance = BaseProvenance::UserAsserted;
        self
    }

    /// Takes the base from a quasipositive factorization, checking the
    /// transverse class when the grid fits under `cap`.
    pub fn with_quasipositive_base(
        mut self,
        word: &QuasipositiveWord,
        cap: usize,
    ) -> Result<Self, RimError> {
        let q = omega_quasipositive(word)?;
        let checked = match verify_nonvanishing_with_cap(word, cap) {
            Ok(v) => Some(v),
            Err(RimError::TooLarge { .. }) => None,
            Err(e) => return Err(e),
        };
        self.base_omega = q.value;
        self.base_provenance = BaseProvenance::Quasipositive {
            word: q.word,
            genus: q.genus,
            nonvanishing_checked: checked,
        };
        Ok(self)
    }

    fn validate(&self) -> Result<(), RimError> {
        if self.genus == 0 {
            return Err(RimError::InvalidSpec(
                "surface genus must be at least 1".into(),
            ));
        }
        if self.curve.len() != 2 * self.genus as usize {
            return Err(RimError::InvalidSpec(format!(
                "curve class has length {}, expected {}",
                self.curve.len(),
                2 * self.genus
            )));
        }
        if self.curve.iter().all(|&c| c == 0) || vector_gcd(&self.curve) != 1 {
            return Err(RimError::NonPrimitiveCurve(self.curve.clone()));
        }
        if self.indices.is_empty() || self.indices.contains(&0) {
            return Err(RimError::InvalidSpec("indices must be positive".into()));
        }
        if self.indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(RimError::InvalidSpec(
                "indices must be strictly increasing".into(),
            ));
        }
        if !self.ring.is_field() {
            return Err(RimError::InvalidSpec(
                "Ω needs GF(2) or Q coefficients".into(),
            ));
        }
        if !is_normalized(&self.pattern) {
            return Err(RimError::NotNormalized(self.pattern.to_string()));
        }
        if self.base_omega == OmegaValue::NegInfinity {
            return Err(RimError::NegativeBase);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRow {
    pub n: u32,
    pub lef_poly: String,
    pub omega_f2: OmegaValue,
    pub omega_q: OmegaValue,
}

impl CertificateRow {
    pub fn omega(&self, ring: Ring) -> OmegaValue {
        match ring {
            Ring::Gf2 => self.omega_f2,
            _ => self.omega_q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub version: &'static str,
    pub spec: FamilySpec,
    pub rows: Vec<CertificateRow>,
    pub curve_gcd: i64,
    /// Unimodular map sending the curve class to the first basis vector.
    pub reduction: UnimodularMap,
    pub verdict: bool,
    pub hypothesis_log: Vec<String>,
}

fn row(spec: &FamilySpec, n: u32) -> Result<(CertificateRow, UnimodularMap), RimError> {
    let lef = lefschetz_of_twist(&spec.pattern, n)?;
    let mut reduction = None;
    let mut omega = |ring: Ring| -> Result<OmegaValue, RimError> {
        let sub = omega_substituted(&lef.to_ring(ring)?, &spec.curve)?;
        reduction.get_or_insert(sub.reduction.reducer);
        Ok(spec.base_omega + sub.value)
    };
    let omega_f2 = omega(Ring::Gf2)?;
    let omega_q = omega(Ring::Rat)?;
    let row = CertificateRow {
        n,
        lef_poly: lef.to_string(),
        omega_f2,
        omega_q,
    };
    Ok((row, reduction.expect("reduction recorded")))
}

/// Runs every family member through substitution and factoring and decides
/// whether the Ω values are pairwise distinct.
pub fn certify_family(spec: &FamilySpec) -> Result<Certificate, RimError> {
    spec.validate()?;
    let mut log = vec![
        format!("curve {:?} is primitive (gcd 1)", spec.curve),
        format!(
            "pattern {} is symmetric with value 1 at t = 1",
            spec.pattern
        ),
    ];
    log.push(match &spec.base_provenance {
        BaseProvenance::Default => format!("base Ω(S) = {} (default)", spec.base_omega),
        BaseProvenance::UserAsserted => format!("base Ω(S) = {} (user-asserted)", spec.base_omega),
        BaseProvenance::Quasipositive {
            word,
            genus,
            nonvanishing_checked,
        } => format!(
            "base Ω(S) = {} from quasipositive word {word} (genus {genus}); transverse class {}",
            spec.base_omega,
            match nonvanishing_checked {
                Some(true) => "nonzero, checked on a grid",
                Some(false) => "ZERO on a grid",
                None => "not checked (grid over cap), nonvanishing asserted",
            }
        ),
    });

    let irr = omega_ring(&spec.pattern.to_ring(spec.ring)?)?;
    let trivial = irr == OmegaValue::Finite(0);
    log.push(format!("Irr(Δ_J) over {} = {irr}", spec.ring));
    if trivial {
        log.push(
            "trivial pattern: Lefschetz polynomial has no irreducible factor, family not certified"
                .into(),
        );
    }

    let computed: Vec<(CertificateRow, UnimodularMap)> = spec
        .indices
        .par_iter()
        .map(|&n| row(spec, n))
        .collect::<Result<_, _>>()?;
    let reduction = computed[0].1.clone();
    let rows: Vec<CertificateRow> = computed.into_iter().map(|(r, _)| r).collect();

    let closed_form_agrees = rows.iter().all(|r| {
        let expected = irr
            .finite()
            .map(|k| spec.base_omega + OmegaValue::Finite(k * u64::from(r.n)));
        Some(r.omega(spec.ring)) == expected
    });
    log.push(format!(
        "pipeline values {} the closed form Ω(S) + n·Irr(Δ_J)",
        if closed_form_agrees {
            "match"
        } else {
            "DIFFER FROM"
        }
    ));

    let mut values: Vec<OmegaValue> = rows.iter().map(|r| r.omega(spec.ring)).collect();
    values.sort();
    let distinct = values.windows(2).all(|w| w[0] != w[1]);
    let verdict = !trivial && distinct;
    log.push(format!(
        "Ω values over {} are {}pairwise distinct",
        spec.ring,
        if distinct { "" } else { "not " }
    ));

    Ok(Certificate {
        version: env!("CARGO_PKG_VERSION"),
        spec: spec.clone(),
        rows,
        curve_gcd: vector_gcd(&spec.curve),
        reduction,
        verdict,
        hypothesis_log: log,
    })
}

/// Link Floer homology of the two-component link `L_2 ⊂ S^1 × S^2`, as
/// `((gr_w, gr_z), rank)`. A recorded constant; nothing here computes it.
pub const HFL_S1_S2_L2: [((i64, i64), u64); 3] = [((1, -1), 1), ((0, 0), 2), ((-1, 1), 1)];

pub fn hfl_s1_s2_l2_rank() -> u64 {
    HFL_S1_S2_L2.iter().map(|(_, r)| r).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BandWord;

    fn trefoil() -> LaurentPoly {
        LaurentPoly::parse("t - 1 + t^-1", Ring::Int).unwrap()
    }

    #[test]
    fn quasipositive_base() {
        let w = BandWord::parse("2: (1,2)(1,2)(1,2)")
            .unwrap()
            .to_quasipositive();
        let q = omega_quasipositive(&w).unwrap();
        assert_eq!((q.value, q.genus), (OmegaValue::Finite(0), 1));
        let disk = QuasipositiveWord::parse("2: [|1]").unwrap();
        assert_eq!(omega_quasipositive(&disk), Err(RimError::GenusZero));
        let link = QuasipositiveWord::parse("2: [|1][|1]").unwrap();
        assert_eq!(
            omega_quasipositive(&link),
            Err(RimError::NotAKnot { components: 2 })
        );
    }

    #[test]
    fn twist_polynomials() {
        let one = LaurentPoly::one(Ring::Int, 1);
        assert_eq!(lefschetz_of_twist(&one, 7).unwrap(), one);
        assert_eq!(lefschetz_of_twist(&trefoil(), 1).unwrap(), trefoil());
        assert_eq!(
            lefschetz_of_twist(&trefoil(), 2).unwrap(),
            LaurentPoly::parse("t^2 - 2*t + 3 - 2*t^-1 + t^-2", Ring::Int).unwrap()
        );
        assert!(matches!(
            lefschetz_of_twist(&LaurentPoly::parse("t - 1", Ring::Int).unwrap(), 1),
            Err(RimError::NotNormalized(_))
        ));
    }

    #[test]
    fn trefoil_family() {
        let spec = FamilySpec::new(1, vec![1, 0], trefoil(), (1..=10).collect());
        let cert = certify_family(&spec).unwrap();
        assert!(cert.verdict);
        for r in &cert.rows {
            assert_eq!(r.omega_f2, OmegaValue::Finite(u64::from(r.n)));
            assert_eq!(r.omega_q, OmegaValue::Finite(u64::from(r.n)));
        }
    }

    #[test]
    fn guards() {
        let spec = FamilySpec::new(1, vec![2, 0], trefoil(), vec![1, 2]);
        assert_eq!(
            certify_family(&spec),
            Err(RimError::NonPrimitiveCurve(vec![2, 0]))
        );
        let spec = FamilySpec::new(1, vec![1, 0], LaurentPoly::one(Ring::Int, 1), vec![1, 2, 3]);
        let cert = certify_family(&spec).unwrap();
        assert!(!cert.verdict);
        assert!(cert
            .rows
            .iter()
            .all(|r| r.omega_f2 == OmegaValue::Finite(0)));
        let spec =
            FamilySpec::new(1, vec![1, 0], trefoil(), vec![1]).with_base(OmegaValue::NegInfinity);
        assert_eq!(certify_family(&spec), Err(RimError::NegativeBase));
        let spec = FamilySpec::new(0, vec![], trefoil(), vec![1]);
        assert!(matches!(
            certify_family(&spec),
            Err(RimError::InvalidSpec(_))
        ));
        let spec = FamilySpec::new(1, vec![1, 0], trefoil(), vec![2, 1]);
        assert!(matches!(
            certify_family(&spec),
            Err(RimError::InvalidSpec(_))
        ));
    }

    #[test]
    fn nonvanishing() {
        let w = QuasipositiveWord::parse("2: [|1][|1][|1]").unwrap();
        assert_eq!(verify_nonvanishing(&w), Ok(true));
        let unknot = QuasipositiveWord::parse("1:").unwrap();
        assert_eq!(verify_nonvanishing(&unknot), Ok(true));
        let long = QuasipositiveWord::parse(&format!("2: {}", "[|1]".repeat(41))).unwrap();
        assert!(matches!(
            verify_nonvanishing(&long),
            Err(RimError::TooLarge { .. })
        ));
    }

    #[test]
    fn recorded_rank_four_table() {
        assert_eq!(hfl_s1_s2_l2_rank(), 4);
    }
}
