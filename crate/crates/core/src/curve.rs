//! Monotone piecewise-linear curves with exact rational vertices.
//!
//! A [`MonotoneCurve`] is a path whose vertices are nondecreasing in both
//! coordinates. Two consecutive vertices may share an x-coordinate; the path
//! then has a vertical segment there (a jump of the underlying graph). A
//! strictly increasing curve has no vertical and no horizontal segments.
//!
//! At a jump `x` the curve has two values: [`MonotoneCurve::eval_lower`] is the
//! limit from the left and [`MonotoneCurve::eval_upper`] the limit from the right.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::arith::{ceil_dyadic, floor_dyadic, Scalar};
use crate::error::{Error, Result};
use crate::maps::{DiagAffineMap, Point};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneCurve {
    pts: Vec<Point>,
}

/// Where an upper envelope stops being a monotone path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeDrop {
    /// Abscissa of the drop.
    pub x: Scalar,
    /// Value of the envelope at `x`.
    pub at: Scalar,
    /// Limit of the envelope just right of `x` (smaller than `at`).
    pub after: Scalar,
}

fn cross(a: &Point, b: &Point, c: &Point) -> Scalar {
    (&b.x - &a.x) * (&c.y - &b.y) - (&b.y - &a.y) * (&c.x - &b.x)
}

impl MonotoneCurve {
    /// Validates monotonicity and normalizes the vertex list.
    pub fn new(pts: Vec<Point>) -> Result<Self> {
        if pts.is_empty() {
            return Err(Error::Curve("curve needs at least one vertex".into()));
        }
        for w in pts.windows(2) {
            if w[1].x < w[0].x || w[1].y < w[0].y {
                return Err(Error::Curve(format!(
                    "vertices not monotone: ({}, {}) then ({}, {})",
                    w[0].x, w[0].y, w[1].x, w[1].y
                )));
            }
        }
        Ok(Self::normalized(pts))
    }

    /// Straight segment between two points (which must be ordered).
    pub fn segment(a: Point, b: Point) -> Result<Self> {
        Self::new(vec![a, b])
    }

    /// Drops duplicates, collapses runs sharing an x to their two ends, merges collinear vertices.
    fn normalized(pts: Vec<Point>) -> Self {
        let mut out: Vec<Point> = Vec::with_capacity(pts.len());
        for p in pts {
            if out.last() == Some(&p) {
                continue;
            }
            let n = out.len();
            if n >= 2 && out[n - 1].x == p.x && out[n - 2].x == p.x {
                out[n - 1] = p;
                continue;
            }
            if n >= 2 && cross(&out[n - 2], &out[n - 1], &p).is_zero() {
                out[n - 1] = p;
                continue;
            }
            out.push(p);
        }
        Self { pts: out }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.pts
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn start(&self) -> &Point {
        &self.pts[0]
    }

    pub fn end(&self) -> &Point {
        self.pts.last().unwrap()
    }

    pub fn domain(&self) -> (&Scalar, &Scalar) {
        (&self.start().x, &self.end().x)
    }

    /// Strictly increasing graph: no vertical and no horizontal pieces.
    pub fn is_strict(&self) -> bool {
        self.pts.windows(2).all(|w| w[0].x < w[1].x && w[0].y < w[1].y)
    }

    /// Continuous graph: no vertical pieces.
    pub fn is_continuous(&self) -> bool {
        self.pts.windows(2).all(|w| w[0].x < w[1].x)
    }

    /// Largest vertical segment (zero for a continuous curve).
    pub fn max_jump(&self) -> Scalar {
        self.pts
            .windows(2)
            .filter(|w| w[0].x == w[1].x)
            .map(|w| &w[1].y - &w[0].y)
            .max()
            .unwrap_or_else(Scalar::zero)
    }

    /// Index range of vertices with abscissa `x`, or the segment index containing it.
    fn locate(&self, x: &Scalar) -> Option<Loc> {
        let mut hint = 0;
        self.locate_from(x, &mut hint)
    }

    /// [`Self::locate`] scanning forward from `hint`, which is left at the first
    /// vertex with abscissa `≥ x`. Cheap for nondecreasing queries.
    fn locate_from(&self, x: &Scalar, hint: &mut usize) -> Option<Loc> {
        let (x0, x1) = self.domain();
        if x < x0 || x > x1 {
            return None;
        }
        let n = self.pts.len();
        let mut first = (*hint).min(n);
        if first > 0 && &self.pts[first - 1].x >= x {
            first = self.pts.partition_point(|p| &p.x < x);
        } else {
            while first < n && &self.pts[first].x < x {
                first += 1;
            }
        }
        *hint = first;
        if first < n && &self.pts[first].x == x {
            let mut last = first;
            while last + 1 < n && &self.pts[last + 1].x == x {
                last += 1;
            }
            Some(Loc::Vertex(first, last))
        } else {
            Some(Loc::Inside(first - 1))
        }
    }

    fn interp(&self, i: usize, x: &Scalar) -> Scalar {
        let a = &self.pts[i];
        let b = &self.pts[i + 1];
        &a.y + (&b.y - &a.y) * (x - &a.x) / (&b.x - &a.x)
    }

    /// Smallest y on the curve above `x` (the left limit at a jump).
    pub fn eval_lower(&self, x: &Scalar) -> Option<Scalar> {
        match self.locate(x)? {
            Loc::Vertex(i, _) => Some(self.pts[i].y.clone()),
            Loc::Inside(i) => Some(self.interp(i, x)),
        }
    }

    /// Largest y on the curve above `x` (the right limit at a jump).
    pub fn eval_upper(&self, x: &Scalar) -> Option<Scalar> {
        match self.locate(x)? {
            Loc::Vertex(_, j) => Some(self.pts[j].y.clone()),
            Loc::Inside(i) => Some(self.interp(i, x)),
        }
    }

    /// Image under a diagonal map with positive scales.
    pub fn apply_map(&self, m: &DiagAffineMap) -> Result<Self> {
        if !m.ax.is_positive() || !m.dy.is_positive() {
            return Err(Error::Curve("map must have positive axis scales".into()));
        }
        Ok(Self {
            pts: self.pts.iter().map(|p| m.apply(p)).collect(),
        })
    }

    /// Image under `(x, y) ↦ (1 − y, 1 − x)`, traversed in increasing order again.
    pub fn mirror(&self) -> Self {
        let one = Scalar::one();
        Self {
            pts: self
                .pts
                .iter()
                .rev()
                .map(|p| Point::new(&one - &p.y, &one - &p.x))
                .collect(),
        }
    }

    /// Sorted, deduplicated abscissae of the vertices.
    pub fn breakpoints(&self) -> Vec<Scalar> {
        let mut xs: Vec<Scalar> = self.pts.iter().map(|p| p.x.clone()).collect();
        xs.dedup();
        xs
    }

    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        self.pts.iter().map(|p| p.to_f64()).collect()
    }

    /// `x,y` rows with a header, exact rationals.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,y\n");
        for p in &self.pts {
            let _ = writeln!(s, "{},{}", p.x, p.y);
        }
        s
    }

    /// Rough float evaluation for plotting and coarse comparisons.
    pub fn eval_upper_f64(&self, x: f64) -> Option<f64> {
        let pts = self.to_f64();
        eval_f64(&pts, x)
    }
}

fn eval_f64(pts: &[(f64, f64)], x: f64) -> Option<f64> {
    if pts.is_empty() || x < pts[0].0 || x > pts[pts.len() - 1].0 {
        return None;
    }
    let i = pts.partition_point(|p| p.0 <= x);
    if i == pts.len() {
        return Some(pts[pts.len() - 1].1);
    }
    if i == 0 {
        return Some(pts[0].1);
    }
    let (a, b) = (pts[i - 1], pts[i]);
    if b.0 == a.0 {
        return Some(b.1);
    }
    Some(a.1 + (b.1 - a.1) * (x - a.0) / (b.0 - a.0))
}

enum Loc {
    Vertex(usize, usize),
    Inside(usize),
}

/// Evaluates a curve at nondecreasing abscissae in amortized constant time.
struct Cursor<'a> {
    c: &'a MonotoneCurve,
    hint: usize,
}

impl<'a> Cursor<'a> {
    fn new(c: &'a MonotoneCurve) -> Self {
        Self { c, hint: 0 }
    }

    fn lower(&mut self, x: &Scalar) -> Option<Scalar> {
        match self.c.locate_from(x, &mut self.hint)? {
            Loc::Vertex(i, _) => Some(self.c.pts[i].y.clone()),
            Loc::Inside(i) => Some(self.c.interp(i, x)),
        }
    }

    fn upper(&mut self, x: &Scalar) -> Option<Scalar> {
        match self.c.locate_from(x, &mut self.hint)? {
            Loc::Vertex(_, j) => Some(self.c.pts[j].y.clone()),
            Loc::Inside(i) => Some(self.c.interp(i, x)),
        }
    }

    /// Left limit at `x`, if the curve is defined on some interval `(x − ε, x)`.
    fn left(&mut self, x: &Scalar) -> Option<Scalar> {
        let (x0, x1) = self.c.domain();
        if x0 < x && x <= x1 {
            self.lower(x)
        } else {
            None
        }
    }

    /// Right limit at `x`, if the curve is defined on some interval `(x, x + ε)`.
    fn right(&mut self, x: &Scalar) -> Option<Scalar> {
        let (x0, x1) = self.c.domain();
        if x0 <= x && x < x1 {
            self.upper(x)
        } else {
            None
        }
    }
}

fn merged_breakpoints(curves: &[&MonotoneCurve]) -> Vec<Scalar> {
    let mut xs: Vec<Scalar> = curves.iter().flat_map(|c| c.breakpoints()).collect();
    xs.sort();
    xs.dedup();
    xs
}

fn max_opt(a: Option<Scalar>, b: Option<Scalar>) -> Option<Scalar> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if a >= b { a } else { b }),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Top boundary of the union of two monotone curves.
///
/// The domains must overlap or touch. Returns `Ok(Err(drop))` when the top
/// boundary is not a monotone path (it falls at some abscissa).
pub fn upper_envelope(
    a: &MonotoneCurve,
    b: &MonotoneCurve,
) -> Result<std::result::Result<MonotoneCurve, EnvelopeDrop>> {
    let (a0, a1) = a.domain();
    let (b0, b1) = b.domain();
    if a0.max(b0) > a1.min(b1) {
        return Err(Error::Curve("union of curve domains is not an interval".into()));
    }
    let curves = [a, b];
    let xs = merged_breakpoints(&curves);
    let mut out: Vec<Point> = Vec::with_capacity(xs.len() * 2);
    let (mut ca, mut cb) = (Cursor::new(a), Cursor::new(b));
    for (k, x) in xs.iter().enumerate() {
        let (ra, rb) = (ca.right(x), cb.right(x));
        let left = max_opt(ca.left(x), cb.left(x));
        let right = max_opt(ra.clone(), rb.clone());
        let top = max_opt(ca.upper(x), cb.upper(x)).expect("x is a breakpoint");
        if let Some(r) = &right {
            if &top > r {
                return Ok(Err(EnvelopeDrop {
                    x: x.clone(),
                    at: top,
                    after: r.clone(),
                }));
            }
        }
        if let Some(l) = left {
            out.push(Point::new(x.clone(), l));
        }
        out.push(Point::new(x.clone(), top));
        if let Some(nx) = xs.get(k + 1) {
            // Crossing strictly inside (x, nx) when both curves live there.
            if let (Some(ra), Some(rb), Some(la), Some(lb)) = (ra, rb, ca.left(nx), cb.left(nx)) {
                let d0 = &ra - &rb;
                let d1 = &la - &lb;
                if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
                    let t = &d0 / (&d0 - &d1);
                    let cx = x + (nx - x) * &t;
                    let cy = &ra + (&la - &ra) * &t;
                    out.push(Point::new(cx, cy));
                }
            } else if right.is_none() {
                return Err(Error::Curve(format!("gap in union of domains after x = {x}")));
            }
        }
    }
    Ok(Ok(MonotoneCurve::new(out)?))
}

/// Range `(min, max)` of `a − b` over the common domain, taken over both
/// one-sided limits at every breakpoint (exact for piecewise-linear paths).
pub fn vertical_diff_range(a: &MonotoneCurve, b: &MonotoneCurve) -> Result<(Scalar, Scalar)> {
    let (a0, a1) = a.domain();
    let (b0, b1) = b.domain();
    let lo = a0.max(b0);
    let hi = a1.min(b1);
    if lo > hi {
        return Err(Error::Curve("curves have disjoint domains".into()));
    }
    let mut xs: Vec<Scalar> = merged_breakpoints(&[a, b])
        .into_iter()
        .filter(|x| x >= lo && x <= hi)
        .collect();
    if xs.first() != Some(lo) {
        xs.insert(0, lo.clone());
    }
    if xs.last() != Some(hi) {
        xs.push(hi.clone());
    }
    let mut mn: Option<Scalar> = None;
    let mut mx: Option<Scalar> = None;
    let (mut ca, mut cb) = (Cursor::new(a), Cursor::new(b));
    for x in &xs {
        for d in [
            ca.lower(x).unwrap() - cb.lower(x).unwrap(),
            ca.upper(x).unwrap() - cb.upper(x).unwrap(),
        ] {
            if mn.as_ref().map_or(true, |m| &d < m) {
                mn = Some(d.clone());
            }
            if mx.as_ref().map_or(true, |m| &d > m) {
                mx = Some(d);
            }
        }
    }
    Ok((mn.unwrap(), mx.unwrap()))
}

/// First abscissa where `a` is strictly below `b`, with the deficit.
pub fn first_below(a: &MonotoneCurve, b: &MonotoneCurve) -> Option<(Scalar, Scalar)> {
    let xs = merged_breakpoints(&[a, b]);
    let (mut ca, mut cb) = (Cursor::new(a), Cursor::new(b));
    for x in xs {
        for (va, vb) in [(ca.lower(&x), cb.lower(&x)), (ca.upper(&x), cb.upper(&x))] {
            if let (Some(va), Some(vb)) = (va, vb) {
                if va < vb {
                    return Some((x, vb - va));
                }
            }
        }
    }
    None
}

/// True if every point of `q` lies within L∞ distance `delta` of the path `p`.
///
/// For monotone paths the `delta`-neighbourhood of `p` is the region between `p`
/// shifted by `(+δ, −δ)` and `p` shifted by `(−δ, +δ)`, so the test reduces to
/// comparisons at the merged breakpoints.
pub fn within_linf(p: &MonotoneCurve, q: &MonotoneCurve, delta: &Scalar) -> bool {
    let (p0, p1) = (p.start(), p.end());
    let lo_x = &p0.x - delta;
    let hi_x = &p1.x + delta;
    let (q0, q1) = q.domain();
    if q0 < &lo_x || q1 > &hi_x {
        return false;
    }
    // upper band: p.(x + δ) + δ, capped by the endpoint square
    let band = |c: &mut Cursor, s: Scalar, lower: bool, sign: &Scalar| -> Scalar {
        let y = if s > p1.x {
            p1.y.clone()
        } else if s < p0.x {
            p0.y.clone()
        } else if lower {
            c.lower(&s).unwrap()
        } else {
            c.upper(&s).unwrap()
        };
        y + sign
    };
    let mut xs: Vec<Scalar> = q.breakpoints();
    for v in p.breakpoints() {
        for x in [&v - delta, &v + delta] {
            if &x >= q0 && &x <= q1 {
                xs.push(x);
            }
        }
    }
    xs.sort();
    xs.dedup();
    let neg = -delta.clone();
    let (mut up, mut down, mut cq) = (Cursor::new(p), Cursor::new(p), Cursor::new(q));
    xs.iter().all(|x| {
        let ql = cq.lower(x).unwrap();
        let qu = cq.upper(x).unwrap();
        ql <= band(&mut up, x + delta, true, delta)
            && qu <= band(&mut up, x + delta, false, delta)
            && ql >= band(&mut down, x - delta, true, &neg)
            && qu >= band(&mut down, x - delta, false, &neg)
    })
}

/// Symmetric L∞ Hausdorff distance, bracketed to `2^-bits` by bisection.
///
/// Returns a dyadic upper bound `d` such that both curves lie within `d` of each other.
pub fn hausdorff_linf(p: &MonotoneCurve, q: &MonotoneCurve, bits: u32) -> Scalar {
    let ok = |d: &Scalar| within_linf(p, q, d) && within_linf(q, p, d);
    let mut lo = Scalar::zero();
    let mut hi = Scalar::one();
    while !ok(&hi) {
        hi = &hi * Scalar::from_integer(2.into());
    }
    if ok(&lo) {
        return lo;
    }
    let step = ceil_dyadic(&(Scalar::one() / Scalar::from_integer((1u64 << bits).into())), bits);
    while &hi - &lo > step {
        let mid = ceil_dyadic(&((&lo + &hi) / Scalar::from_integer(2.into())), bits + 1);
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// L∞ distance from `v` to the chord `a → b` of a monotone path (`a ≤ v ≤ b`).
fn chord_deviation(a: &Point, b: &Point, v: &Point) -> Scalar {
    if a == b {
        return (&v.x - &a.x).abs().max((&v.y - &a.y).abs());
    }
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    // |(y_v − y_a)·dx − dy·(x_v − x_a)| / (dx + dy)
    let num = ((&v.y - &a.y) * &dx - &dy * (&v.x - &a.x)).abs();
    num / (dx + dy)
}

fn chord_deviation_f64(a: (f64, f64), b: (f64, f64), v: (f64, f64)) -> f64 {
    let dx = b.0 - a.0;
    let dy = b.1 - a.1;
    if dx + dy <= 0.0 {
        return (v.0 - a.0).abs().max((v.1 - a.1).abs());
    }
    ((v.1 - a.1) * dx - dy * (v.0 - a.0)).abs() / (dx + dy)
}

/// Result of [`simplify`]: the reduced curve and the exact L∞ deviation introduced.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub curve: MonotoneCurve,
    pub error: Scalar,
}

/// Douglas–Peucker vertex reduction with an L∞ tolerance.
///
/// Candidate vertices are chosen in floating point at half the tolerance; the
/// returned `error` is then recomputed exactly from the kept/removed vertices.
pub fn simplify(c: &MonotoneCurve, tol: f64) -> Simplified {
    let n = c.pts.len();
    if n <= 2 || tol <= 0.0 {
        return Simplified {
            curve: c.clone(),
            error: Scalar::zero(),
        };
    }
    let f = c.to_f64();
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;
    let mut stack = vec![(0, n - 1)];
    while let Some((i, j)) = stack.pop() {
        if j <= i + 1 {
            continue;
        }
        let mut best = (0.0f64, i);
        for k in i + 1..j {
            let d = chord_deviation_f64(f[i], f[j], f[k]);
            if d > best.0 {
                best = (d, k);
            }
        }
        if best.0 > tol * 0.5 {
            keep[best.1] = true;
            stack.push((i, best.1));
            stack.push((best.1, j));
        }
    }
    let mut error = Scalar::zero();
    let mut last = 0usize;
    for k in 1..n {
        if keep[k] {
            for r in last + 1..k {
                let d = chord_deviation(&c.pts[last], &c.pts[k], &c.pts[r]);
                if d > error {
                    error = d;
                }
            }
            last = k;
        }
    }
    let pts = c
        .pts
        .iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(p, _)| p.clone())
        .collect();
    Simplified {
        curve: MonotoneCurve::normalized(pts),
        error,
    }
}

/// Signed position of `v` relative to the chord `a → b`: positive above.
fn side_of_chord(a: &Point, b: &Point, v: &Point) -> Scalar {
    (&v.y - &a.y) * (&b.x - &a.x) - (&b.y - &a.y) * (&v.x - &a.x)
}

/// Vertical distance from `v` to the chord `a → b` (zero on a vertical chord).
fn vertical_deviation(a: &Point, b: &Point, v: &Point) -> Scalar {
    if a.x == b.x {
        return Scalar::zero();
    }
    let on = &a.y + (&b.y - &a.y) * (&v.x - &a.x) / (&b.x - &a.x);
    (&v.y - on).abs()
}

fn vertical_deviation_f64(a: (f64, f64), b: (f64, f64), v: (f64, f64)) -> f64 {
    let dx = b.0 - a.0;
    if dx <= 0.0 {
        return 0.0;
    }
    (v.1 - (a.1 + (b.1 - a.1) * (v.0 - a.0) / dx)).abs()
}

/// Douglas–Peucker with a vertical tolerance where every chord stays on or
/// below the curve, so the result is pointwise `≤ c`. `error` is the exact
/// vertical deviation introduced.
pub fn simplify_below(c: &MonotoneCurve, tol: f64) -> Simplified {
    let n = c.pts.len();
    if n <= 2 || tol <= 0.0 {
        return Simplified {
            curve: c.clone(),
            error: Scalar::zero(),
        };
    }
    let f = c.to_f64();
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;
    let mut stack = vec![(0, n - 1)];
    let zero = Scalar::zero();
    while let Some((i, j)) = stack.pop() {
        if j <= i + 1 {
            continue;
        }
        let mut best = (0.0f64, i);
        for k in i + 1..j {
            let d = vertical_deviation_f64(f[i], f[j], f[k]);
            if d > best.0 {
                best = (d, k);
            }
        }
        let split = if best.0 > tol * 0.5 {
            Some(best.1)
        } else {
            // exact: the first vertex strictly below the chord, if any
            (i + 1..j).find(|&k| side_of_chord(&c.pts[i], &c.pts[j], &c.pts[k]) < zero)
        };
        if let Some(k) = split {
            keep[k] = true;
            stack.push((i, k));
            stack.push((k, j));
        }
    }
    let mut error = Scalar::zero();
    let mut last = 0usize;
    for k in 1..n {
        if keep[k] {
            for r in last + 1..k {
                let d = vertical_deviation(&c.pts[last], &c.pts[k], &c.pts[r]);
                if d > error {
                    error = d;
                }
            }
            last = k;
        }
    }
    let pts = c
        .pts
        .iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(p, _)| p.clone())
        .collect();
    Simplified {
        curve: MonotoneCurve::normalized(pts),
        error,
    }
}

/// Move interior vertices right and down onto the `2^-bits` grid.
///
/// Each point of the new path is a point of the old one shifted right and
/// down, so for a nondecreasing path the result lies pointwise below `c`.
/// Vertices on vertical segments keep their abscissa, so jumps do not move,
/// and no vertex passes its right neighbour. The returned error bounds the shift.
pub fn snap_below(c: &MonotoneCurve, bits: u32) -> Simplified {
    let n = c.pts.len();
    let mut xs: Vec<Scalar> = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let p = &c.pts[k];
        let on_jump = (k > 0 && c.pts[k - 1].x == p.x) || (k + 1 < n && c.pts[k + 1].x == p.x);
        let x = if k == 0 || k + 1 == n || on_jump {
            p.x.clone()
        } else {
            let up = ceil_dyadic(&p.x, bits);
            match xs.last() {
                Some(next) if &up > next => next.clone(),
                _ => up,
            }
        };
        xs.push(x);
    }
    xs.reverse();
    let pts: Vec<Point> = c
        .pts
        .iter()
        .zip(xs)
        .enumerate()
        .map(|(k, (p, x))| {
            if k == 0 || k + 1 == n {
                p.clone()
            } else {
                Point::new(x, floor_dyadic(&p.y, bits))
            }
        })
        .collect();
    let error = Scalar::new(1.into(), num_bigint::BigInt::from(1u8) << bits);
    Simplified {
        curve: MonotoneCurve::normalized(pts),
        error,
    }
}

/// Pointwise comparison helper used in tests and diagnostics.
pub fn compare_at(a: &MonotoneCurve, b: &MonotoneCurve, x: &Scalar) -> Option<Ordering> {
    Some(a.eval_upper(x)?.cmp(&b.eval_upper(x)?))
}
