use proptest::prelude::*;

use affine_top::arith::{int, to_f64};
use affine_top::bcurve::b_enclosure;
use affine_top::cover::{attractor_cover, Stop};
use affine_top::curve::{simplify_below, snap_below, upper_envelope, vertical_diff_range, within_linf, MonotoneCurve};
use affine_top::maps::{mirror_point, pt_of_word};
use affine_top::topcurve::{flat_steps, iterate_top, r_step, TopOptions};
use affine_top::{q, EpWord, Interval, Params, Point, Scalar, Word};
use affine_top::Strategy as Exec;

/// Monotone path from (0,0) to (1,1) on the 1/den grid.
fn curve() -> impl Strategy<Value = MonotoneCurve> {
    (prop::collection::btree_set(1i64..255, 0..12), prop::collection::vec(0i64..=256, 12)).prop_map(|(xs, mut ys)| {
        let xs: Vec<i64> = xs.into_iter().collect();
        ys.truncate(xs.len());
        ys.sort();
        let mut pts = vec![Point::new(int(0), int(0))];
        pts.extend(xs.iter().zip(&ys).map(|(&x, &y)| Point::new(q(x, 256), q(y, 256))));
        pts.push(Point::new(int(1), int(1)));
        MonotoneCurve::new(pts).expect("sorted vertices")
    })
}

fn params() -> impl Strategy<Value = Params> {
    (1i64..99, 1i64..99).prop_filter_map("outside the triangle", |(a, b)| Params::new(q(a.min(b), 100), q(a.max(b), 100)).ok())
}

fn word() -> impl Strategy<Value = Word> {
    "[01]{1,6}".prop_map(|s| s.parse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn envelope_is_pointwise_max(a in curve(), b in curve(), xs in prop::collection::vec(1i64..1000, 16)) {
        let env = upper_envelope(&a, &b).unwrap().unwrap();
        for x in xs {
            let x = q(x, 1000);
            let want = a.eval_upper(&x).unwrap().max(b.eval_upper(&x).unwrap());
            prop_assert_eq!(env.eval_upper(&x).unwrap(), want);
        }
    }

    #[test]
    fn r_keeps_endpoints(c in curve(), p in params()) {
        if let Ok(next) = r_step(&p, &c).unwrap() {
            prop_assert_eq!(next.start(), &Point::new(int(0), int(0)));
            prop_assert_eq!(next.end(), &Point::new(int(1), int(1)));
        }
    }

    #[test]
    fn mirror_is_an_involution(c in curve()) {
        prop_assert_eq!(c.mirror().mirror(), c);
    }

    #[test]
    fn simplified_curves_stay_below(c in curve(), tol in 1u32..8, bits in 4u32..12) {
        let s = simplify_below(&c, (-(tol as f64)).exp2());
        let (lo, hi) = vertical_diff_range(&s.curve, &c).unwrap();
        prop_assert!(hi <= Scalar::from_integer(0.into()));
        prop_assert!(-lo <= s.error);
        let g = snap_below(&s.curve, bits);
        let (_, hi) = vertical_diff_range(&g.curve, &s.curve).unwrap();
        prop_assert!(hi <= Scalar::from_integer(0.into()));
        // snapping moves vertices sideways too, so its error is an L∞ band
        prop_assert!(within_linf(&g.curve, &s.curve, &g.error) && within_linf(&s.curve, &g.curve, &g.error));
    }

    #[test]
    fn limit_points_commute_with_mirror(p in params(), u in word(), v in word()) {
        let a = EpWord::new(u, v).unwrap();
        let direct = pt_of_word(&p, &a.mirror()).unwrap();
        let one = int(1);
        // pt_{ā} = σ(pt_a) where σ(x, y) = (1 − y, 1 − x)
        let m = pt_of_word(&p, &a).unwrap();
        prop_assert_eq!(mirror_point(&m), direct.clone());
        prop_assert_eq!(direct.x, &one - &m.y);
    }

    #[test]
    fn interval_products_enclose(a in -50i64..50, w in 0i64..30, b in -50i64..50, v in 0i64..30, s in 0i64..=10, t in 0i64..=10) {
        let x = Interval::new(q(a, 7), q(a + w, 7)).unwrap();
        let y = Interval::new(q(b, 5), q(b + v, 5)).unwrap();
        let px = x.lo() + x.width() * q(s, 10);
        let py = y.lo() + y.width() * q(t, 10);
        prop_assert!((&x * &y).contains(&(&px * &py)));
        prop_assert!((&x + &y).contains(&(&px + &py)));
        prop_assert!((&x - &y).contains(&(&px - &py)));
    }
}

#[test]
fn iterates_below_staircase_and_strictly_increasing() {
    let p = Params::new(q(2, 5), q(9, 10)).unwrap();
    let start = b_enclosure(&p, 10, Exec::Parallel).unwrap().lower;
    let it = iterate_top(&p, &start, "lower n=10", 20, &TopOptions::default()).unwrap();
    assert!(it.is_complete());
    let cover = attractor_cover(&p, 10, Stop::Depth(18), Exec::Parallel).unwrap();
    let (stair, _) = cover.top_staircase().unwrap();
    let (_, above) = vertical_diff_range(&it.curve, &stair).unwrap();
    assert!(above <= q(1, 1024), "iterate exceeds the staircase by {}", to_f64(&above));
    let flats = flat_steps(&it.curve, 8);
    assert!(flats.is_empty(), "{} flat subintervals, first at {}", flats.len(), flats[0]);
}
