//! The operator `R(c) = ∂_top(T0(c) ∪ T1(c))` on monotone curves and its iteration
//! towards the top boundary of the attractor.

use num_traits::Zero;

use crate::arith::{q, Scalar};
use crate::curve::{first_below, hausdorff_linf, simplify_below, snap_below, upper_envelope, vertical_diff_range, EnvelopeDrop, MonotoneCurve};
use crate::error::{Error, Result};
use crate::maps::{map_for_symbol, DiagAffineMap, Params, Point, Symbol};

pub fn apply_map_to_curve(m: &DiagAffineMap, c: &MonotoneCurve) -> Result<MonotoneCurve> {
    c.apply_map(m)
}

fn check_endpoints(c: &MonotoneCurve) -> Result<()> {
    let o = Point::new(q(0, 1), q(0, 1));
    let e = Point::new(q(1, 1), q(1, 1));
    if c.start() != &o || c.end() != &e {
        return Err(Error::Curve("curve must run from (0, 0) to (1, 1)".into()));
    }
    Ok(())
}

/// One application of `R`. A top boundary that falls somewhere comes back as
/// `Ok(Err(drop))`.
pub fn r_step(p: &Params, c: &MonotoneCurve) -> Result<std::result::Result<MonotoneCurve, EnvelopeDrop>> {
    check_endpoints(c)?;
    let a = c.apply_map(&map_for_symbol(p, Symbol::Zero))?;
    let b = c.apply_map(&map_for_symbol(p, Symbol::One))?;
    upper_envelope(&a, &b)
}

#[derive(Clone, Debug)]
pub struct TopOptions {
    /// Per-step vertical simplification tolerance; `None` keeps every vertex.
    pub simplify_tol: Option<f64>,
    /// After simplifying, move vertices onto the `2^-bits` dyadic grid (from below).
    pub snap_bits: Option<u32>,
    /// Also record L∞ Hausdorff increments to this many bits.
    pub hausdorff_bits: Option<u32>,
}

impl Default for TopOptions {
    fn default() -> Self {
        Self {
            simplify_tol: Some((-12f64).exp2()),
            snap_bits: Some(24),
            hausdorff_bits: None,
        }
    }
}

/// Why an iteration stopped early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopDiagnostic {
    /// `R` of the current curve is not a monotone path.
    Drop { step: usize, drop: EnvelopeDrop },
    /// `R(c) < c` at abscissa `x`.
    NotMonotone { step: usize, x: Scalar, by: Scalar },
}

#[derive(Clone, Debug)]
pub struct CurveIterate {
    pub params: Params,
    /// Label of the start curve.
    pub start: String,
    /// Number of completed steps.
    pub n: usize,
    pub curve: MonotoneCurve,
    /// `sup (R(c_k) − c_k)` for every completed step.
    pub increments: Vec<Scalar>,
    /// L∞ Hausdorff distance between `c_k` and `R(c_k)`, when requested.
    pub hausdorff_increments: Vec<Scalar>,
    /// Sum of the simplification errors introduced (an additive Hausdorff budget).
    pub simplification_error: Scalar,
    pub vertex_counts: Vec<usize>,
    pub diagnostic: Option<TopDiagnostic>,
}

impl CurveIterate {
    pub fn is_complete(&self) -> bool {
        self.diagnostic.is_none()
    }
}

/// `n` steps of `R` from `start`, checking `R(c) ≥ c` exactly at every step.
///
/// The check compares the exact image with the curve actually fed into the step.
/// With simplification on, the image is simplified from below and floored by the
/// previous iterate before the next step.
pub fn iterate_top(p: &Params, start: &MonotoneCurve, label: &str, n: usize, opts: &TopOptions) -> Result<CurveIterate> {
    check_endpoints(start)?;
    let mut it = CurveIterate {
        params: p.clone(),
        start: label.to_string(),
        n: 0,
        curve: start.clone(),
        increments: Vec::new(),
        hausdorff_increments: Vec::new(),
        simplification_error: Scalar::zero(),
        vertex_counts: vec![start.len()],
        diagnostic: None,
    };
    for step in 1..=n {
        let next = match r_step(p, &it.curve)? {
            Ok(c) => c,
            Err(drop) => {
                it.diagnostic = Some(TopDiagnostic::Drop { step, drop });
                return Ok(it);
            }
        };
        if let Some((x, by)) = first_below(&next, &it.curve) {
            it.diagnostic = Some(TopDiagnostic::NotMonotone { step, x, by });
            return Ok(it);
        }
        let (_, inc) = vertical_diff_range(&next, &it.curve)?;
        it.increments.push(inc);
        if let Some(bits) = opts.hausdorff_bits {
            it.hausdorff_increments.push(hausdorff_linf(&it.curve, &next, bits));
        }
        it.curve = match opts.simplify_tol {
            // Simplify from below and keep the previous iterate as a floor, so
            // c_{k-1} ≤ c_k ≤ R(c_{k-1}) and hence R(c_k) ≥ c_k by monotonicity.
            Some(tol) => {
                let s = simplify_below(&next, tol);
                it.simplification_error += s.error;
                let s = match opts.snap_bits {
                    Some(bits) => {
                        let g = snap_below(&s.curve, bits);
                        it.simplification_error += g.error;
                        g.curve
                    }
                    None => s.curve,
                };
                match upper_envelope(&s, &it.curve)? {
                    Ok(c) => c,
                    Err(drop) => {
                        it.diagnostic = Some(TopDiagnostic::Drop { step, drop });
                        return Ok(it);
                    }
                }
            }
            None => next,
        };
        it.vertex_counts.push(it.curve.len());
        it.n = step;
    }
    Ok(it)
}

/// Grid points `k / 2^bits` where the curve fails to increase strictly over one grid step.
pub fn flat_steps(c: &MonotoneCurve, bits: u32) -> Vec<Scalar> {
    let n = 1i64 << bits;
    (0..n)
        .filter_map(|k| {
            let a = q(k, n);
            let b = q(k + 1, n);
            match (c.eval_upper(&a), c.eval_lower(&b)) {
                (Some(ya), Some(yb)) if yb > ya => None,
                _ => Some(a),
            }
        })
        .collect()
}

/// L∞ Hausdorff distance between a curve and its mirror image.
pub fn mirror_defect(c: &MonotoneCurve, bits: u32) -> Scalar {
    hausdorff_linf(c, &c.mirror(), bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::maps::DiagAffineMap;

    fn p() -> Params {
        Params::new(q(2, 5), q(9, 10)).unwrap()
    }

    fn diag() -> MonotoneCurve {
        MonotoneCurve::segment(Point::new(int(0), int(0)), Point::new(int(1), int(1))).unwrap()
    }

    #[test]
    fn maps_of_the_diagonal() {
        let t0 = apply_map_to_curve(&map_for_symbol(&p(), Symbol::Zero), &diag()).unwrap();
        assert_eq!(t0.vertices(), &[Point::new(int(0), int(0)), Point::new(q(2, 5), q(9, 10))]);
        let t1 = apply_map_to_curve(&map_for_symbol(&p(), Symbol::One), &diag()).unwrap();
        assert_eq!(t1.vertices(), &[Point::new(q(1, 10), q(3, 5)), Point::new(int(1), int(1))]);
        let id = apply_map_to_curve(&DiagAffineMap::identity(), &diag()).unwrap();
        assert_eq!(id, diag());
    }

    #[test]
    fn r_of_diagonal_drops() {
        // T1 takes over at x = 1/10 (a jump), T0 wins again after the crossing
        // 9x/4 = 4x/9 + 5/9 at x = 4/13, and ends at (2/5, 9/10) above T1.
        let d = r_step(&p(), &diag()).unwrap().unwrap_err();
        assert_eq!(d.x, q(2, 5));
        assert_eq!(d.at, q(9, 10));
        assert_eq!(d.after, q(11, 15));
        let a = diag().apply_map(&map_for_symbol(&p(), Symbol::Zero)).unwrap();
        let short_b = MonotoneCurve::segment(Point::new(q(1, 10), q(3, 5)), Point::new(q(4, 13), q(9, 13))).unwrap();
        let env = upper_envelope(&a, &short_b).unwrap().unwrap();
        assert!(env.vertices().contains(&Point::new(q(4, 13), q(9, 13))));
        assert_eq!(env.eval_upper(&q(1, 5)), Some(q(29, 45)));
    }

    #[test]
    fn iteration_from_start_curve() {
        let e = crate::bcurve::b_enclosure(&p(), 6, crate::exec::Strategy::Sequential).unwrap();
        let z = iterate_top(&p(), &e.lower, "lower", 0, &TopOptions::default()).unwrap();
        assert_eq!(z.curve, e.lower);
        let it = iterate_top(&p(), &e.lower, "lower", 6, &TopOptions::default()).unwrap();
        assert!(it.is_complete(), "{:?}", it.diagnostic);
        assert_eq!(it.increments.len(), 6);
        assert!(it.increments.iter().all(|d| d >= &Scalar::zero()));
        assert!(r_step(&p(), &MonotoneCurve::segment(Point::new(int(0), int(0)), Point::new(q(1, 2), int(1))).unwrap()).is_err());
    }

    #[test]
    fn first_below_finds_deficit() {
        let hi = MonotoneCurve::segment(Point::new(int(0), q(1, 4)), Point::new(int(1), int(1))).unwrap();
        assert_eq!(first_below(&diag(), &hi), Some((int(0), q(1, 4))));
        assert_eq!(first_below(&hi, &diag()), None);
    }

    #[test]
    fn flat_steps_of_staircase() {
        let c = MonotoneCurve::new(vec![
            Point::new(int(0), int(0)),
            Point::new(q(1, 2), int(0)),
            Point::new(int(1), int(1)),
        ])
        .unwrap();
        assert_eq!(flat_steps(&c, 2), vec![int(0), q(1, 4)]);
        assert!(flat_steps(&diag(), 4).is_empty());
        assert_eq!(mirror_defect(&diag(), 10), Scalar::zero());
    }
}
