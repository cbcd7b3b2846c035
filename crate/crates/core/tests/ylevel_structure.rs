use affine_top::bcurve::{b_enclosure, build_y};
use affine_top::{q, Params, Strategy};

fn pairs() -> Vec<Params> {
    [(2, 5, 9, 10), (9, 20, 3, 5), (1, 2, 3, 4), (3, 10, 19, 20), (19, 20, 24, 25)]
        .iter()
        .map(|&(a, b, c, d)| Params::new(q(a, b), q(c, d)).unwrap())
        .collect()
}

#[test]
fn structure_up_to_level_10() {
    for p in pairs() {
        let mut prev = build_y(&p, 0, Strategy::Parallel).unwrap();
        for n in 1..=10 {
            let y = build_y(&p, n, Strategy::Parallel).unwrap();
            assert_eq!(y.pieces.len(), 1 << n);
            assert!(y.overlapping_pairs().is_empty(), "{p:?} n={n}");
            assert!(y.order_violations().is_empty(), "{p:?} n={n}: {:?}", y.order_violations());
            assert!(y.nesting_violations(&prev).is_empty(), "{p:?} n={n}");
            assert!(y.symmetry_violations().is_empty(), "{p:?} n={n}");
            let h = y.vertex_histogram();
            assert_eq!(h.values().sum::<usize>(), 1 << n);
            assert!(!h.contains_key(&2), "segments never appear: {p:?} n={n}");
            prev = y;
        }
    }
}

#[test]
fn enclosure_width_decreases() {
    let p = Params::new(q(2, 5), q(9, 10)).unwrap();
    let mut last = None;
    for n in 4..=12 {
        let e = b_enclosure(&p, n, Strategy::Parallel).unwrap();
        if let Some(w) = last {
            assert!(e.width <= w, "n={n}");
        }
        eprintln!("n={n} width={}", affine_top::arith::to_f64(&e.width));
        last = Some(e.width);
    }
}
