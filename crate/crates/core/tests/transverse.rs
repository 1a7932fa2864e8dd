use std::fmt::Write;

use rimsurf::braid::*;
use rimsurf::gridhfk::*;

const CORPUS: &[&str] = &[
    "1:",
    "2: 1",
    "2: -1",
    "2: 1 1 1",
    "2: -1 -1 -1",
    "2: 1 1 -1",
    "2: 1 -1 -1",
    "2: 1 1 1 1 1",
    "2: 1 1 1 -1 1",
    "3: 1 2",
    "3: -1 -2",
    "3: 1 -2",
    "3: 2 1",
    "3: 1 -2 1 -2",
    "3: 1 1 2 -1",
    "3: 2 2 1 -2",
];

fn measure(text: &str) -> (i64, i64, i64, bool, bool) {
    let b = parse_braid(text).unwrap();
    let g = transverse_grid(&b).unwrap();
    let c = transverse_state(&g, TransverseVariant::Plus).unwrap();
    let m = transverse_state(&g, TransverseVariant::Minus).unwrap();
    (
        b.self_linking().unwrap(),
        c.maslov,
        c.alexander,
        is_nonzero_class(&c, &g).unwrap(),
        is_nonzero_class(&m, &g).unwrap(),
    )
}

#[test]
fn gradings_are_pinned() {
    let mut out = String::from("# braid | sl | M(x+) | A(x+) | x+ nonzero | x- nonzero\n");
    for text in CORPUS {
        let (sl, m, a, plus, minus) = measure(text);
        writeln!(out, "{text} | {sl} | {m} | {a} | {plus} | {minus}").unwrap();
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/transverse.txt");
    if std::env::var_os("RIMSURF_BLESS").is_some() {
        std::fs::write(path, &out).unwrap();
    }
    assert_eq!(out, std::fs::read_to_string(path).unwrap());
}

#[test]
fn plus_grading_is_half_of_sl_plus_one() {
    for text in CORPUS {
        let (sl, m, a, _, _) = measure(text);
        assert_eq!((m, 2 * a), (sl + 1, sl + 1), "{text}");
    }
}

#[test]
fn quasipositive_closures_have_nonzero_class() {
    for text in [
        "2: [|1][|1][|1]",
        "3: [|1][|2]",
        "3: [2|1][|2][1|2]",
        "3: [|1][|1][|1][|2]",
    ] {
        let w = QuasipositiveWord::parse(text).unwrap();
        let b = expand_quasipositive(&w);
        let g = transverse_grid(&b).unwrap();
        if g.size() > 8 {
            continue;
        }
        let c = transverse_state(&g, TransverseVariant::Plus).unwrap();
        assert!(is_nonzero_class(&c, &g).unwrap(), "{text}");
    }
}

#[test]
fn positive_stabilization_keeps_the_class() {
    for text in [
        "1:",
        "2: 1",
        "2: 1 1 1",
        "2: -1",
        "2: 1 1 -1",
        "3: 1 2",
        "3: 1 -2",
    ] {
        let b = parse_braid(text).unwrap();
        let s = b.positive_stabilization();
        let g = transverse_grid(&s).unwrap();
        if g.size() > 8 {
            continue;
        }
        let c = transverse_state(&g, TransverseVariant::Plus).unwrap();
        let (sl, m, a, nz, _) = measure(text);
        assert_eq!(s.self_linking().unwrap(), sl);
        assert_eq!(
            (c.maslov, c.alexander, is_nonzero_class(&c, &g).unwrap()),
            (m, a, nz),
            "{text}"
        );
    }
}

#[test]
fn trefoil_transverse_grid() {
    let g = transverse_grid(&parse_braid("2: 1 1 1").unwrap()).unwrap();
    assert_eq!(g.to_string(), "X: 1 2 3 4 5\nO: 3 4 5 1 2\n");
    let c = transverse_state(&g, TransverseVariant::Plus).unwrap();
    assert_eq!((c.maslov, c.alexander), (2, 1));
    assert!(is_nonzero_class(&c, &g).unwrap());
}
