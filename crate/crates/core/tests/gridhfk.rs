mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rimsurf::gridhfk::*;

/// Right-handed trefoil, the closure grid of σ₁³.
fn trefoil() -> GridDiagram {
    GridDiagram::parse("X: 5 4 3 2 1\nO: 3 2 1 5 4\n").unwrap()
}

fn left_trefoil() -> GridDiagram {
    GridDiagram::parse("X: 1 2 3 4 5\nO: 4 5 1 2 3\n").unwrap()
}

fn figure_eight() -> GridDiagram {
    GridDiagram::parse("X: 4 3 1 2 5 6\nO: 2 5 4 6 1 3\n").unwrap()
}

fn oracle_ranks(g: &GridDiagram) -> BigradedRanks {
    BigradedRanks::from_entries(
        common::dense_homology(g.x_rows(), g.o_rows())
            .into_iter()
            .map(|((m, a2), r)| ((m, a2 / 2), r)),
    )
}

#[test]
fn gradings_match_oracle_on_random_grids() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=6 {
        for _ in 0..5 {
            let (xs, os) = common::random_knot_grid(&mut rng, n);
            let g = GridDiagram::new(xs.clone(), os.clone()).unwrap();
            for rows in common::permutations(n).into_iter().step_by(7) {
                let s = GridState::new(&rows).unwrap();
                let (m, a) = gradings(&s, &g).unwrap();
                let (om, oa2) = common::grade(&xs, &os, &rows);
                assert_eq!((m, a * 2), (om, oa2.into()));
            }
        }
    }
}

#[test]
fn differential_matches_rectangle_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=6 {
        for _ in 0..5 {
            let (xs, os) = common::random_knot_grid(&mut rng, n);
            let g = GridDiagram::new(xs.clone(), os.clone()).unwrap();
            for rows in common::permutations(n).into_iter().step_by(5) {
                let got: Vec<Vec<usize>> = differential_tilde(&GridState::new(&rows).unwrap(), &g)
                    .unwrap()
                    .iter()
                    .map(|s| s.rows())
                    .collect();
                assert_eq!(got, common::boundary(&xs, &os, &rows), "{g}{rows:?}");
            }
        }
    }
}

#[test]
fn trefoil_homology() {
    let g = trefoil();
    let h = homology(&g).unwrap();
    assert_eq!(h, oracle_ranks(&g));
    assert_eq!(h.total(), 3 * 16);
    let hfk = deconvolve(&h, 5).unwrap();
    assert_eq!(
        hfk,
        BigradedRanks::from_entries([((0, 1), 1), ((-1, 0), 1), ((-2, -1), 1)])
    );
    let mirror = knot_floer_homology(&left_trefoil()).unwrap();
    assert_eq!(
        mirror,
        BigradedRanks::from_entries([((2, 1), 1), ((1, 0), 1), ((0, -1), 1)])
    );
    assert_eq!(mirror.euler_characteristic(), hfk.euler_characteristic());
}

#[test]
fn figure_eight_homology() {
    let g = figure_eight();
    let h = homology(&g).unwrap();
    assert_eq!(h, oracle_ranks(&g));
    let hfk = deconvolve(&h, 6).unwrap();
    assert_eq!(hfk.total(), 5);
    assert_eq!(
        hfk,
        BigradedRanks::from_entries([((1, 1), 1), ((0, 0), 3), ((-1, -1), 1)])
    );
}

#[test]
fn homology_matches_dense_oracle_on_random_grids() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 2..=6 {
        for _ in 0..4 {
            let (xs, os) = common::random_knot_grid(&mut rng, n);
            let g = GridDiagram::new(xs, os).unwrap();
            let h = homology(&g).unwrap();
            assert_eq!(h, oracle_ranks(&g), "{g}");
            assert!(deconvolve(&h, n).is_ok());
        }
    }
}

#[test]
fn grid_moves_preserve_homology() {
    for g in [trefoil(), figure_eight()] {
        let base = knot_floer_homology(&g).unwrap();
        let n = g.size();
        for k in 0..n {
            assert_eq!(knot_floer_homology(&g.rotate_columns(k)).unwrap(), base);
            assert_eq!(knot_floer_homology(&g.rotate_rows(k)).unwrap(), base);
        }
        for c in 0..n - 1 {
            if let Ok(h) = g.commute_columns(c) {
                assert_eq!(knot_floer_homology(&h).unwrap(), base);
            }
            if let Ok(h) = g.commute_rows(c) {
                assert_eq!(knot_floer_homology(&h).unwrap(), base);
            }
        }
        if n < 7 {
            let s = g.stabilize(0).unwrap();
            assert_eq!(knot_floer_homology(&s).unwrap(), base);
        }
    }
}

#[test]
fn plus_state_has_no_outgoing_rectangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for k in 0..50 {
        let n = 2 + k % 5;
        let (xs, os) = common::random_knot_grid(&mut rng, n);
        let g = GridDiagram::new(xs.clone(), os.clone()).unwrap();
        let c = transverse_state(&g, TransverseVariant::Plus).unwrap();
        assert!(differential_tilde(&c.states[0], &g).unwrap().is_empty());
        assert!(common::boundary(&xs, &os, &c.states[0].rows()).is_empty());
    }
}

#[test]
fn transverse_classes_on_small_grids() {
    let g = left_trefoil();
    for variant in [TransverseVariant::Plus, TransverseVariant::Minus] {
        let c = transverse_state(&g, variant).unwrap();
        assert_eq!((c.maslov, c.alexander), (2, 1));
        assert!(is_nonzero_class(&c, &g).unwrap());
    }
    assert_eq!(
        is_nonzero_class_with_cap(
            &transverse_state(&g, TransverseVariant::Plus).unwrap(),
            &g,
            4
        ),
        Err(GridError::TooLarge { size: 5, cap: 4 })
    );
    let link = GridDiagram::new(vec![0, 1, 2, 3], vec![1, 0, 3, 2]).unwrap();
    assert_eq!(
        transverse_state(&link, TransverseVariant::Plus),
        Err(GridError::NotAKnot { components: 2 })
    );
    assert_eq!(homology(&link), Err(GridError::NotAKnot { components: 2 }));
}

#[test]
fn non_cycles_are_rejected() {
    let g = left_trefoil();
    let plus = transverse_state(&g, TransverseVariant::Plus).unwrap();
    // any state with a nonempty boundary, alone in its grading piece of the chain
    let s = (0..120).map(|r| GridState::unrank(5, r)).find(|s| {
        let gr = gradings(s, &g).unwrap();
        gr.0 == plus.maslov && !differential_tilde(s, &g).unwrap().is_empty() && *gr.1.denom() == 1
    });
    let c = CycleClass::new(vec![s.expect("some state has a boundary")], &g).unwrap();
    assert_eq!(is_nonzero_class(&c, &g), Err(GridError::NotACycle));
}

fn arb_knot_grid() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (2usize..=6, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::random_knot_grid(&mut rng, n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclic_shift_of_domain_preserves_gradings((xs, os) in arb_knot_grid(), k in 0usize..6, seed in any::<u64>()) {
        let g = GridDiagram::new(xs, os).unwrap();
        let n = g.size();
        let k = k % n;
        let s = GridState::unrank(n, (seed % (1..=n as u64).product::<u64>()) as usize);
        let rows = s.rows();
        // move column 0 to the end; the state moves with it
        let mut shifted = rows.clone();
        shifted.rotate_left(k);
        prop_assert_eq!(
            gradings(&s, &g).unwrap(),
            gradings(&GridState::new(&shifted).unwrap(), &g.rotate_columns(k)).unwrap()
        );
        let up: Vec<usize> = rows.iter().map(|r| (r + n - k) % n).collect();
        prop_assert_eq!(
            gradings(&s, &g).unwrap(),
            gradings(&GridState::new(&up).unwrap(), &g.rotate_rows(k)).unwrap()
        );
    }

    #[test]
    fn differential_squares_to_zero_and_respects_gradings((xs, os) in arb_knot_grid(), seed in any::<u64>()) {
        let g = GridDiagram::new(xs, os).unwrap();
        let n = g.size();
        let s = GridState::unrank(n, (seed % (1..=n as u64).product::<u64>()) as usize);
        let (m, a) = gradings(&s, &g).unwrap();
        let mut twice = std::collections::BTreeMap::new();
        for y in differential_tilde(&s, &g).unwrap() {
            prop_assert_eq!(gradings(&y, &g).unwrap(), (m - 1, a));
            for z in differential_tilde(&y, &g).unwrap() {
                *twice.entry(z).or_insert(0u32) += 1;
            }
        }
        prop_assert!(twice.values().all(|c| c % 2 == 0));
    }

    #[test]
    fn deconvolve_inverts_tensoring(entries in prop::collection::vec(((-4i64..4, -4i64..4), 1u64..4), 1..6), k in 0usize..5) {
        let r = BigradedRanks::from_entries(entries);
        prop_assert_eq!(deconvolve(&r.tensor_w(k), k + 1).unwrap(), r);
    }
}
