//! Grid covers of attractors of diagonal IFSs and box-counting estimates.
//!
//! Floating point is used throughout; nothing here is a certificate.

use crate::arith::Scalar;
use crate::bcurve::check_cap;
use crate::curve::MonotoneCurve;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::maps::{map_for_symbol, Params, Point, Symbol};

/// `(x, y) ↦ (ax·x + ex, dy·y + fy)` in floating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MapF {
    pub ax: f64,
    pub ex: f64,
    pub dy: f64,
    pub fy: f64,
}

impl MapF {
    pub fn new(ax: f64, ex: f64, dy: f64, fy: f64) -> Self {
        Self { ax, ex, dy, fy }
    }

    fn rect(&self, r: &Rect) -> Rect {
        let (x0, x1) = ordered(self.ax * r.x0 + self.ex, self.ax * r.x1 + self.ex);
        let (y0, y1) = ordered(self.dy * r.y0 + self.fy, self.dy * r.y1 + self.fy);
        Rect { x0, x1, y0, y1 }
    }
}

fn ordered(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The two maps of the family at `p`.
pub fn family_maps(p: &Params) -> [MapF; 2] {
    [Symbol::Zero, Symbol::One].map(|s| {
        let [ax, ex, dy, fy] = map_for_symbol(p, s).to_f64();
        MapF::new(ax, ex, dy, fy)
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn unit() -> Self {
        Rect {
            x0: 0.0,
            x1: 1.0,
            y0: 0.0,
            y1: 1.0,
        }
    }

    fn diameter(&self) -> f64 {
        (self.x1 - self.x0).max(self.y1 - self.y0)
    }
}

/// When to stop refining an image rectangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Stop {
    /// Fixed word length.
    Depth(u32),
    /// Side length (L∞ diameter) below the bound.
    Diameter(f64),
}

pub const COVER_DEPTH_CAP: u32 = 24;
/// Branches in diameter mode never go deeper than this.
const DIAMETER_DEPTH_LIMIT: u32 = 400;
/// The rectangle tree is split into subtrees at this depth for the parallel phase.
const SPLIT_DEPTH: u32 = 8;

/// Occupied cells of the `2^k × 2^k` grid on the unit square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxCover {
    pub k: u32,
    /// Sorted cell indices `row · 2^k + col` (row 0 at the bottom).
    pub cells: Vec<u64>,
    /// Deepest word length reached.
    pub depth: u32,
}

impl BoxCover {
    pub fn side(&self) -> u64 {
        1u64 << self.k
    }

    pub fn count(&self) -> usize {
        self.cells.len()
    }

    pub fn contains(&self, col: u64, row: u64) -> bool {
        self.cells.binary_search(&(row * self.side() + col)).is_ok()
    }

    /// Cells mapped by `(x, y) ↦ (1 − y, 1 − x)`, sorted.
    pub fn mirrored(&self) -> Vec<u64> {
        let n = self.side();
        let mut v: Vec<u64> = self
            .cells
            .iter()
            .map(|&c| {
                let (row, col) = (c / n, c % n);
                (n - 1 - col) * n + (n - 1 - row)
            })
            .collect();
        v.sort_unstable();
        v
    }

    /// Size of the symmetric difference between the cover and its mirror image.
    pub fn mirror_defect(&self) -> usize {
        let m = self.mirrored();
        let (mut i, mut j, mut d) = (0, 0, 0);
        while i < self.cells.len() || j < m.len() {
            match (self.cells.get(i), m.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    d += 1;
                    i += 1;
                }
                (Some(_), None) => {
                    d += 1;
                    i += 1;
                }
                _ => {
                    d += 1;
                    j += 1;
                }
            }
        }
        d
    }

    /// Topmost occupied row in every column (`None` for empty columns).
    pub fn column_tops(&self) -> Vec<Option<u64>> {
        let n = self.side();
        let mut tops = vec![None; n as usize];
        for &c in &self.cells {
            let (row, col) = (c / n, (c % n) as usize);
            if tops[col].map_or(true, |t| row > t) {
                tops[col] = Some(row);
            }
        }
        tops
    }

    /// Staircase along the top edges of the topmost cells, starting at `(0, 0)`.
    ///
    /// Returns the curve and the number of columns whose top had to be raised
    /// to keep the staircase nondecreasing.
    pub fn top_staircase(&self) -> Result<(MonotoneCurve, usize)> {
        let n = self.side();
        let tops = self.column_tops();
        let cell = Scalar::new(1.into(), n.into());
        let mut pts = vec![Point::new(Scalar::from_integer(0.into()), Scalar::from_integer(0.into()))];
        let mut run = 0u64;
        let mut raised = 0;
        for (i, t) in tops.iter().enumerate() {
            let t = t.ok_or_else(|| Error::Curve(format!("column {i} of the cover is empty")))? + 1;
            if t < run {
                raised += 1;
            }
            run = run.max(t);
            let y = &cell * Scalar::from_integer(run.into());
            pts.push(Point::new(&cell * Scalar::from_integer((i as u64).into()), y.clone()));
            pts.push(Point::new(&cell * Scalar::from_integer((i as u64 + 1).into()), y));
        }
        Ok((MonotoneCurve::new(pts)?, raised))
    }

    /// `x,y` lower-left corners of the occupied cells.
    pub fn to_csv(&self) -> String {
        let n = self.side();
        let mut s = String::from("col,row\n");
        for &c in &self.cells {
            s.push_str(&format!("{},{}\n", c % n, c / n));
        }
        s
    }
}

fn mark(r: &Rect, n: u64, out: &mut Vec<u64>) {
    let nf = n as f64;
    let span = |a: f64, b: f64| -> (u64, u64) {
        let lo = (a * nf).floor().clamp(0.0, nf - 1.0) as u64;
        let hi = ((b * nf).ceil() - 1.0).clamp(lo as f64, nf - 1.0) as u64;
        (lo, hi)
    };
    let (c0, c1) = span(r.x0, r.x1);
    let (r0, r1) = span(r.y0, r.y1);
    for row in r0..=r1 {
        for col in c0..=c1 {
            out.push(row * n + col);
        }
    }
}

fn walk(maps: &[MapF], r: Rect, d: u32, stop: Stop, n: u64, out: &mut Vec<u64>, deepest: &mut u32) {
    let done = match stop {
        Stop::Depth(k) => d >= k,
        Stop::Diameter(eps) => r.diameter() < eps || d >= DIAMETER_DEPTH_LIMIT,
    };
    if done {
        *deepest = (*deepest).max(d);
        mark(&r, n, out);
        return;
    }
    for m in maps {
        walk(maps, m.rect(&r), d + 1, stop, n, out, deepest);
    }
}

/// Cover of the attractor of `maps` (which must send `base` into itself) on a `2^k` grid.
pub fn cover_maps(maps: &[MapF], base: Rect, k: u32, stop: Stop, strategy: Strategy) -> Result<BoxCover> {
    if maps.is_empty() {
        return Err(Error::Invalid("need at least one map".into()));
    }
    check_cap(k, 14)?;
    if let Stop::Depth(d) = stop {
        check_cap(d, COVER_DEPTH_CAP)?;
    }
    if let Stop::Diameter(eps) = stop {
        if !(eps > 0.0) {
            return Err(Error::Invalid("diameter bound must be positive".into()));
        }
    }
    let n = 1u64 << k;
    // Expand the top of the tree sequentially, then walk the subtrees in parallel.
    let mut frontier = vec![(base, 0u32)];
    let mut cells = Vec::new();
    let mut deepest = 0;
    for _ in 0..SPLIT_DEPTH {
        let mut next = Vec::with_capacity(frontier.len() * maps.len());
        for (r, d) in frontier {
            let done = match stop {
                Stop::Depth(k) => d >= k,
                Stop::Diameter(eps) => r.diameter() < eps,
            };
            if done {
                deepest = deepest.max(d);
                mark(&r, n, &mut cells);
            } else {
                next.extend(maps.iter().map(|m| (m.rect(&r), d + 1)));
            }
        }
        frontier = next;
    }
    let parts = exec::map(strategy, &frontier, |(r, d)| {
        let mut out = Vec::new();
        let mut deep = 0;
        walk(maps, *r, *d, stop, n, &mut out, &mut deep);
        out.sort_unstable();
        out.dedup();
        (out, deep)
    });
    for (p, d) in parts {
        cells.extend(p);
        deepest = deepest.max(d);
    }
    cells.sort_unstable();
    cells.dedup();
    Ok(BoxCover {
        k,
        cells,
        depth: deepest,
    })
}

/// Cover of `A_{λ,μ}` on the `2^k` grid.
pub fn attractor_cover(p: &Params, k: u32, stop: Stop, strategy: Strategy) -> Result<BoxCover> {
    cover_maps(&family_maps(p), Rect::unit(), k, stop, strategy)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxDimEstimate {
    pub slope: f64,
    /// Standard error of the slope.
    pub stderr: f64,
    pub r2: f64,
    /// `(k, occupied cells)` per scale.
    pub counts: Vec<(u32, usize)>,
}

/// Least-squares slope of `log2(count)` against `k`.
pub fn fit_counts(counts: &[(u32, usize)]) -> Result<BoxDimEstimate> {
    if counts.len() < 3 {
        return Err(Error::Invalid("box counting needs at least 3 scales".into()));
    }
    let pts: Vec<(f64, f64)> = counts.iter().map(|&(k, c)| (k as f64, (c as f64).log2())).collect();
    let (slope, _, r2, stderr) = linear_fit(&pts);
    Ok(BoxDimEstimate {
        slope,
        stderr,
        r2,
        counts: counts.to_vec(),
    })
}

/// Ordinary least squares `y = a·x + b`; returns `(a, b, r², stderr(a))`.
pub fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let a = sxy / sxx;
    let b = my - a * mx;
    let sse: f64 = pts.iter().map(|p| (p.1 - a * p.0 - b).powi(2)).sum();
    let r2 = if syy > 0.0 { 1.0 - sse / syy } else { 1.0 };
    let stderr = if pts.len() > 2 {
        (sse / (n - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    (a, b, r2, stderr)
}

/// Box-counting estimate for the attractor of `maps` over scales `kmin..=kmax`.
///
/// At scale `k` image rectangles are refined until their side is below `2^-k`.
pub fn box_dim_maps(maps: &[MapF], base: Rect, kmin: u32, kmax: u32, strategy: Strategy) -> Result<BoxDimEstimate> {
    if kmax < kmin || kmax - kmin < 2 {
        return Err(Error::Invalid("box counting needs at least 3 scales".into()));
    }
    check_cap(kmax, 12)?;
    let counts = (kmin..=kmax)
        .map(|k| {
            let c = cover_maps(maps, base, k, Stop::Diameter((-(k as f64)).exp2()), strategy)?;
            Ok((k, c.count()))
        })
        .collect::<Result<Vec<_>>>()?;
    fit_counts(&counts)
}

pub fn box_dim_estimate(p: &Params, kmin: u32, kmax: u32, strategy: Strategy) -> Result<BoxDimEstimate> {
    box_dim_maps(&family_maps(p), Rect::unit(), kmin, kmax, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn p() -> Params {
        Params::new(q(2, 5), q(9, 10)).unwrap()
    }

    #[test]
    fn depth_zero_is_full_grid() {
        let c = attractor_cover(&p(), 4, Stop::Depth(0), Strategy::Sequential).unwrap();
        assert_eq!(c.count(), 256);
        assert_eq!(c.depth, 0);
    }

    #[test]
    fn strategies_agree() {
        let a = attractor_cover(&p(), 7, Stop::Depth(12), Strategy::Sequential).unwrap();
        let b = attractor_cover(&p(), 7, Stop::Depth(12), Strategy::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dyadic_rects_do_not_spill() {
        // Quarter squares of the unit square at depth 1 cover exactly the grid.
        let maps = [
            MapF::new(0.5, 0.0, 0.5, 0.0),
            MapF::new(0.5, 0.5, 0.5, 0.5),
        ];
        let c = cover_maps(&maps, Rect::unit(), 3, Stop::Depth(3), Strategy::Sequential).unwrap();
        assert_eq!(c.count(), 8);
        assert!((0..8).all(|i| c.contains(i, i)));
    }

    #[test]
    fn diagonal_segment_has_dimension_one() {
        let maps = [
            MapF::new(0.5, 0.0, 0.5, 0.0),
            MapF::new(0.5, 0.5, 0.5, 0.5),
        ];
        let e = box_dim_maps(&maps, Rect::unit(), 4, 10, Strategy::Sequential).unwrap();
        assert!((e.slope - 1.0).abs() < 0.05, "{e:?}");
        assert!(box_dim_maps(&maps, Rect::unit(), 4, 5, Strategy::Sequential).is_err());
    }

    #[test]
    fn cover_is_nearly_mirror_symmetric() {
        let c = attractor_cover(&p(), 8, Stop::Diameter(1.0 / 256.0), Strategy::Parallel).unwrap();
        assert!((c.mirror_defect() as f64) < 0.02 * c.count() as f64, "{}", c.mirror_defect());
    }

    #[test]
    fn linear_fit_exact_line() {
        let (a, b, r2, _) = linear_fit(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]);
        assert!((a - 2.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn caps_are_enforced() {
        assert!(attractor_cover(&p(), 4, Stop::Depth(60), Strategy::Sequential).is_err());
        assert!(attractor_cover(&p(), 20, Stop::Depth(2), Strategy::Sequential).is_err());
    }
}
