mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rimsurf::polyalg::{LaurentPoly, OmegaValue, Ring, UnimodularMap};
use rimsurf::rimcalc::*;

fn z(text: &str) -> LaurentPoly {
    LaurentPoly::parse(text, Ring::Int).unwrap()
}

const PATTERNS: &[&str] = &[
    "t - 1 + t^-1",
    "-t + 3 - t^-1",
    "2*t - 3 + 2*t^-1",
    "t^2 - t + 1 - t^-1 + t^-2",
    "-2*t + 5 - 2*t^-1",
];

#[test]
fn pipeline_matches_closed_form() {
    for pattern in PATTERNS {
        for ring in [Ring::Gf2, Ring::Rat] {
            let delta = z(pattern);
            let irr = rimsurf::alexander::irr_count(&delta, ring)
                .unwrap()
                .finite()
                .unwrap();
            let spec = FamilySpec::new(2, vec![1, 2, 0, -3], delta, vec![1, 2, 4, 5])
                .with_ring(ring)
                .with_base(OmegaValue::Finite(3));
            let cert = certify_family(&spec).unwrap();
            for r in &cert.rows {
                assert_eq!(
                    r.omega(ring),
                    OmegaValue::Finite(3 + irr * u64::from(r.n)),
                    "{pattern}"
                );
            }
            for w in cert.rows.windows(2) {
                if irr >= 1 {
                    assert!(w[1].omega(ring) > w[0].omega(ring));
                }
            }
            assert_eq!(cert.verdict, irr >= 1);
        }
    }
}

#[test]
fn rings_can_disagree() {
    // 2t - 3 + 2t^-1 reduces to t mod 2, a unit
    let spec = FamilySpec::new(1, vec![0, 1], z("2*t - 3 + 2*t^-1"), vec![1, 2, 3]);
    let cert = certify_family(&spec).unwrap();
    assert!(!cert.verdict);
    assert!(cert
        .rows
        .iter()
        .all(|r| r.omega_f2 == OmegaValue::Finite(0)));
    assert_eq!(cert.rows[2].omega_q, OmegaValue::Finite(3));
    assert!(certify_family(&spec.with_ring(Ring::Rat)).unwrap().verdict);
}

#[test]
fn basis_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let base = FamilySpec::new(2, vec![1, 0, 2, 1], z(PATTERNS[3]), (1..=4).collect());
    let reference = certify_family(&base).unwrap();
    for _ in 0..100 {
        let steps = rng.gen_range(1..8);
        let u = UnimodularMap::new(common::random_unimodular(&mut rng, 4, steps)).unwrap();
        let mut spec = base.clone();
        spec.curve = u.apply(&base.curve);
        let cert = certify_family(&spec).unwrap();
        assert_eq!(cert.rows, reference.rows, "{:?}", spec.curve);
    }
}

#[test]
fn certificates_are_reproducible() {
    let spec = FamilySpec::new(1, vec![1, 0], z(PATTERNS[0]), (1..=10).collect());
    let a = serde_json::to_string(&certify_family(&spec).unwrap()).unwrap();
    let b = serde_json::to_string(&certify_family(&spec).unwrap()).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for key in ["spec", "rows", "hypothesis_log", "verdict"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["rows"][9]["omega_f2"], 10);
}

#[test]
fn quasipositive_base_is_checked() {
    let w = rimsurf::braid::BandWord::parse("2: (1,2)(1,2)(1,2)")
        .unwrap()
        .to_quasipositive();
    let spec = FamilySpec::new(1, vec![1, 0], z(PATTERNS[0]), vec![1, 2])
        .with_quasipositive_base(&w, 8)
        .unwrap();
    assert_eq!(
        spec.base_provenance,
        BaseProvenance::Quasipositive {
            word: "2: [|1] [|1] [|1]".into(),
            genus: 1,
            nonvanishing_checked: Some(true)
        }
    );
    let over = FamilySpec::new(1, vec![1, 0], z(PATTERNS[0]), vec![1])
        .with_quasipositive_base(&w, 4)
        .unwrap();
    assert!(matches!(
        over.base_provenance,
        BaseProvenance::Quasipositive {
            nonvanishing_checked: None,
            ..
        }
    ));
}
