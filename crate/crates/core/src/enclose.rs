//! Rigorous enclosures of rational functions of `(λ, μ)` over parameter rectangles.
//!
//! Plain interval evaluation loses all correlation between `λ` and `μ`; here it
//! is intersected with the mean-value form `f(c) + ∇f(R)·(R − c)`, whose
//! gradient enclosure comes from forward-mode dual numbers over intervals.

use num_traits::Zero;

use crate::arith::{ceil_dyadic, floor_dyadic, int, Interval, Scalar};
use crate::error::Result;
use crate::maps::{Num, ParamRect, ParamSet, Params};

/// A vector of functions of the parameters, written once for every number type.
pub trait MarginFn: Sync {
    fn eval<P: ParamSet>(&self, p: &P) -> Result<Vec<P::N>>;
}

/// Value with interval partial derivatives in `λ` and `μ`.
#[derive(Clone, Debug)]
pub struct Dual {
    pub v: Interval,
    pub dl: Interval,
    pub dm: Interval,
}

impl Dual {
    fn constant(v: Interval) -> Self {
        let z = Interval::point(<Scalar as Zero>::zero());
        Dual { v, dl: z.clone(), dm: z }
    }
}

impl Num for Dual {
    fn zero() -> Self {
        Dual::constant(Interval::point(<Scalar as Zero>::zero()))
    }
    fn one() -> Self {
        Dual::constant(Interval::point(int(1)))
    }
    fn add(&self, r: &Self) -> Self {
        Dual {
            v: &self.v + &r.v,
            dl: &self.dl + &r.dl,
            dm: &self.dm + &r.dm,
        }
    }
    fn sub(&self, r: &Self) -> Self {
        Dual {
            v: &self.v - &r.v,
            dl: &self.dl - &r.dl,
            dm: &self.dm - &r.dm,
        }
    }
    fn mul(&self, r: &Self) -> Self {
        Dual {
            v: &self.v * &r.v,
            dl: &(&self.dl * &r.v) + &(&self.v * &r.dl),
            dm: &(&self.dm * &r.v) + &(&self.v * &r.dm),
        }
    }
    fn div(&self, r: &Self) -> Result<Self> {
        let v = self.v.div(&r.v)?;
        let r2 = &r.v * &r.v;
        let dl = (&(&self.dl * &r.v) - &(&self.v * &r.dl)).div(&r2)?;
        let dm = (&(&self.dm * &r.v) - &(&self.v * &r.dm)).div(&r2)?;
        Ok(Dual { v, dl, dm })
    }
    fn from_scalar(x: &Scalar) -> Self {
        Dual::constant(Interval::point(x.clone()))
    }
    fn enclosure(&self) -> Interval {
        self.v.clone()
    }
}

struct DualRect<'a>(&'a ParamRect);

impl ParamSet for DualRect<'_> {
    type N = Dual;
    fn lambda_n(&self) -> Dual {
        Dual {
            v: self.0.lambda().clone(),
            dl: Interval::point(int(1)),
            dm: Interval::point(<Scalar as Zero>::zero()),
        }
    }
    fn mu_n(&self) -> Dual {
        Dual {
            v: self.0.mu().clone(),
            dl: Interval::point(<Scalar as Zero>::zero()),
            dm: Interval::point(int(1)),
        }
    }
}

/// Bits kept when rounding enclosure endpoints outward.
pub const ROUND_BITS: u32 = 96;

fn round_out(i: &Interval) -> Interval {
    Interval::new(floor_dyadic(i.lo(), ROUND_BITS), ceil_dyadic(i.hi(), ROUND_BITS)).unwrap()
}

fn intersect(a: &Interval, b: &Interval) -> Interval {
    let lo = a.lo().max(b.lo()).clone();
    let hi = a.hi().min(b.hi()).clone();
    Interval::new(lo, hi).expect("both intervals enclose the same range")
}

/// Enclosures of every component of `f` over the rectangle, with dyadic endpoints.
pub fn enclose_rect<F: MarginFn>(r: &ParamRect, f: &F) -> Result<Vec<Interval>> {
    let naive = f.eval(r)?;
    let c = r.center();
    let at_c = f.eval(&c)?;
    let duals = f.eval(&DualRect(r))?;
    let dl = r.lambda() - &Interval::point(c.lambda().clone());
    let dm = r.mu() - &Interval::point(c.mu().clone());
    Ok(naive
        .iter()
        .zip(at_c)
        .zip(duals)
        .map(|((nv, fc), d)| {
            let mv = &(&Interval::point(fc) + &(&d.dl * &dl)) + &(&d.dm * &dm);
            round_out(&intersect(nv, &mv))
        })
        .collect())
}

/// Exact values at a point, as degenerate intervals.
pub fn eval_point<F: MarginFn>(p: &Params, f: &F) -> Result<Vec<Interval>> {
    Ok(f.eval(p)?.into_iter().map(Interval::point).collect())
}

/// Parameters accepted by the checks: a single point or a rectangle.
pub trait Checkable: Sync {
    fn enclose<F: MarginFn>(&self, f: &F) -> Result<Vec<Interval>>;
    /// A representative point (the point itself, or the centre).
    fn center_point(&self) -> Params;
}

impl Checkable for Params {
    fn enclose<F: MarginFn>(&self, f: &F) -> Result<Vec<Interval>> {
        eval_point(self, f)
    }
    fn center_point(&self) -> Params {
        self.clone()
    }
}

impl Checkable for ParamRect {
    fn enclose<F: MarginFn>(&self, f: &F) -> Result<Vec<Interval>> {
        enclose_rect(self, f)
    }
    fn center_point(&self) -> Params {
        self.center()
    }
}
