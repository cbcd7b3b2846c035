//! Polygon towers `Y_n` of the truncated maps `S0`, `S1`, and monotone
//! enclosures of the maximal attractor `B` extracted from them.
//!
//! `S0` acts as `T0` on the half-plane `λx + μy ≤ 1` and collapses everything
//! else to `(0, 0)`; `S1` acts as `T1` on `μx + λy ≥ λ + μ − 1` and collapses to
//! `(1, 1)`. The pieces of `Y_n` are the images `S_{i1} … S_{in}([0,1]²)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::arith::{int, Scalar};
use crate::curve::MonotoneCurve;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::maps::{map_for_symbol, Params, Point, Symbol, Word};

/// Depth cap for the exponential constructions, overridable via `AFFINE_TOP_MAX_DEPTH`.
pub fn depth_cap(default: u32) -> u32 {
    std::env::var("AFFINE_TOP_MAX_DEPTH")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

pub fn check_cap(requested: u32, default_cap: u32) -> Result<()> {
    let cap = depth_cap(default_cap);
    if requested > cap {
        return Err(Error::CapExceeded { requested, cap });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `αx + βy ≤ γ`
    Le,
    /// `αx + βy ≥ γ`
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
    side: Side,
}

impl HalfPlane {
    pub fn new(alpha: Scalar, beta: Scalar, gamma: Scalar, side: Side) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::Invalid("half-plane needs a nonzero normal".into()));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            side,
        })
    }

    /// Signed slack: `≥ 0` exactly on the kept side.
    fn slack(&self, p: &Point) -> Scalar {
        let v = &self.alpha * &p.x + &self.beta * &p.y - &self.gamma;
        match self.side {
            Side::Le => -v,
            Side::Ge => v,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.slack(p) >= Scalar::zero()
    }

    /// The domain on which `S_s` agrees with `T_s`.
    pub fn for_symbol(p: &Params, s: Symbol) -> HalfPlane {
        let (l, m) = (p.lambda().clone(), p.mu().clone());
        match s {
            Symbol::Zero => HalfPlane::new(l, m, int(1), Side::Le).unwrap(),
            Symbol::One => {
                let g = &l + &m - int(1);
                HalfPlane::new(m, l, g, Side::Ge).unwrap()
            }
        }
    }
}

/// Convex polygon, counterclockwise, possibly degenerate (a segment or a point).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    verts: Vec<Point>,
}

fn cross3(o: &Point, a: &Point, b: &Point) -> Scalar {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

impl ConvexPolygon {
    /// Builds from counterclockwise vertices; duplicates and collinear vertices are dropped.
    pub fn new(verts: Vec<Point>) -> Result<Self> {
        if verts.is_empty() {
            return Err(Error::Invalid("polygon needs a vertex".into()));
        }
        let p = Self::normalize(verts);
        let n = p.verts.len();
        if n >= 3 {
            for i in 0..n {
                let c = cross3(&p.verts[i], &p.verts[(i + 1) % n], &p.verts[(i + 2) % n]);
                if c <= Scalar::zero() {
                    return Err(Error::Invalid("polygon is not strictly convex counterclockwise".into()));
                }
            }
        }
        Ok(p)
    }

    pub fn unit_square() -> Self {
        let (z, o) = (Scalar::zero(), Scalar::one());
        Self {
            verts: vec![
                Point::new(z.clone(), z.clone()),
                Point::new(o.clone(), z.clone()),
                Point::new(o.clone(), o.clone()),
                Point::new(z, o),
            ],
        }
    }

    pub fn point(p: Point) -> Self {
        Self { verts: vec![p] }
    }

    fn normalize(mut v: Vec<Point>) -> Self {
        v.dedup();
        while v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        // Remove collinear vertices until stable (wrap-around included).
        loop {
            let n = v.len();
            if n < 3 {
                break;
            }
            let idx = (0..n).find(|&i| cross3(&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]).is_zero());
            match idx {
                Some(i) => {
                    v.remove(i);
                }
                None => break,
            }
        }
        if v.len() == 2 && v[0] == v[1] {
            v.pop();
        }
        Self { verts: v }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    /// Positive area (at least three non-collinear vertices).
    pub fn is_nondegenerate(&self) -> bool {
        self.verts.len() >= 3
    }

    pub fn bbox(&self) -> [Scalar; 4] {
        let mut xmin = self.verts[0].x.clone();
        let mut xmax = xmin.clone();
        let mut ymin = self.verts[0].y.clone();
        let mut ymax = ymin.clone();
        for p in &self.verts[1..] {
            if p.x < xmin {
                xmin = p.x.clone();
            }
            if p.x > xmax {
                xmax = p.x.clone();
            }
            if p.y < ymin {
                ymin = p.y.clone();
            }
            if p.y > ymax {
                ymax = p.y.clone();
            }
        }
        [xmin, xmax, ymin, ymax]
    }

    /// Topmost vertex, rightmost among ties.
    pub fn upper_right(&self) -> &Point {
        self.verts.iter().max_by(|a, b| (&a.y, &a.x).cmp(&(&b.y, &b.x))).unwrap()
    }

    /// Twice the signed area.
    pub fn area2(&self) -> Scalar {
        let n = self.verts.len();
        (0..n).fold(Scalar::zero(), |acc, i| {
            let a = &self.verts[i];
            let b = &self.verts[(i + 1) % n];
            acc + &a.x * &b.y - &b.x * &a.y
        })
    }

    /// Intersection with a half-plane; boundary vertices are kept.
    pub fn clip(&self, h: &HalfPlane) -> Option<ConvexPolygon> {
        let n = self.verts.len();
        let s: Vec<Scalar> = self.verts.iter().map(|p| h.slack(p)).collect();
        let zero = Scalar::zero();
        let mut out = Vec::with_capacity(n + 2);
        for i in 0..n {
            let j = (i + 1) % n;
            if s[i] >= zero {
                out.push(self.verts[i].clone());
            }
            if n > 1 && ((s[i] > zero && s[j] < zero) || (s[i] < zero && s[j] > zero)) {
                let t = &s[i] / (&s[i] - &s[j]);
                let a = &self.verts[i];
                let b = &self.verts[j];
                out.push(Point::new(&a.x + (&b.x - &a.x) * &t, &a.y + (&b.y - &a.y) * &t));
            }
        }
        if out.is_empty() {
            None
        } else {
            Some(Self::normalize(out))
        }
    }

    /// Image under an orientation-preserving diagonal map.
    pub fn map(&self, m: &crate::maps::DiagAffineMap) -> ConvexPolygon {
        Self::normalize(self.verts.iter().map(|p| m.apply(p)).collect())
    }

    /// Image under `(x, y) ↦ (1 − y, 1 − x)`, reoriented counterclockwise.
    pub fn mirror(&self) -> ConvexPolygon {
        let mut v: Vec<Point> = self.verts.iter().map(crate::maps::mirror_point).collect();
        v.reverse();
        Self::normalize(v)
    }

    /// True if `p` lies in the closed polygon.
    pub fn contains_point(&self, p: &Point) -> bool {
        let n = self.verts.len();
        match n {
            1 => &self.verts[0] == p,
            2 => {
                let (a, b) = (&self.verts[0], &self.verts[1]);
                cross3(a, b, p).is_zero()
                    && (&p.x - &a.x) * (&p.x - &b.x) <= Scalar::zero()
                    && (&p.y - &a.y) * (&p.y - &b.y) <= Scalar::zero()
            }
            _ => (0..n).all(|i| cross3(&self.verts[i], &self.verts[(i + 1) % n], p) >= Scalar::zero()),
        }
    }

    pub fn contains_polygon(&self, other: &ConvexPolygon) -> bool {
        other.verts.iter().all(|p| self.contains_point(p))
    }

    /// Same point set (vertex lists equal up to rotation).
    pub fn same_as(&self, other: &ConvexPolygon) -> bool {
        let n = self.verts.len();
        if n != other.verts.len() {
            return false;
        }
        (0..n).any(|r| (0..n).all(|i| self.verts[(i + r) % n] == other.verts[i]))
    }

    /// True if the interiors intersect (separating-axis test, exact).
    pub fn interiors_overlap(&self, other: &ConvexPolygon) -> bool {
        if !self.is_nondegenerate() || !other.is_nondegenerate() {
            return false;
        }
        for poly in [self, other] {
            let n = poly.verts.len();
            for i in 0..n {
                let a = &poly.verts[i];
                let b = &poly.verts[(i + 1) % n];
                // `other` polygon entirely on the outer closed side of edge a→b separates.
                let target = if std::ptr::eq(poly, self) { other } else { self };
                if target.verts.iter().all(|p| cross3(a, b, p) <= Scalar::zero()) {
                    return false;
                }
            }
        }
        true
    }
}

/// `S_s` applied to a polygon in the unit square.
pub fn s_image(p: &Params, s: Symbol, poly: &ConvexPolygon) -> ConvexPolygon {
    match poly.clip(&HalfPlane::for_symbol(p, s)) {
        Some(c) => c.map(&map_for_symbol(p, s)),
        None => ConvexPolygon::point(match s {
            Symbol::Zero => Point::new(Scalar::zero(), Scalar::zero()),
            Symbol::One => Point::new(Scalar::one(), Scalar::one()),
        }),
    }
}

#[derive(Clone, Debug)]
pub struct Piece {
    pub word: Word,
    pub poly: ConvexPolygon,
}

/// All `2^n` pieces of `Y_n`, in lexicographic order of their index words.
#[derive(Clone, Debug)]
pub struct YLevel {
    pub n: u32,
    pub pieces: Vec<Piece>,
}

pub const Y_DEPTH_CAP: u32 = 16;

/// Builds `Y_n` exactly, level by level.
pub fn build_y(p: &Params, n: u32, strategy: Strategy) -> Result<YLevel> {
    check_cap(n, Y_DEPTH_CAP)?;
    let mut level = vec![Piece {
        word: Word::default(),
        poly: ConvexPolygon::unit_square(),
    }];
    for _ in 0..n {
        let mut next = Vec::with_capacity(level.len() * 2);
        for s in [Symbol::Zero, Symbol::One] {
            let imgs = exec::map(strategy, &level, |pc| {
                let mut w = vec![s];
                w.extend_from_slice(&pc.word.0);
                Piece {
                    word: Word(w),
                    poly: s_image(p, s, &pc.poly),
                }
            });
            next.extend(imgs);
        }
        level = next;
    }
    Ok(YLevel { n, pieces: level })
}

impl YLevel {
    /// Histogram `vertex count → number of pieces`.
    pub fn vertex_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for pc in &self.pieces {
            *h.entry(pc.poly.vertices().len()).or_insert(0) += 1;
        }
        h
    }

    /// Pairs of pieces (by index) whose interiors intersect.
    pub fn overlapping_pairs(&self) -> Vec<(usize, usize)> {
        let boxes: Vec<[Scalar; 4]> = self.pieces.iter().map(|pc| pc.poly.bbox()).collect();
        let mut order: Vec<usize> = (0..self.pieces.len())
            .filter(|&i| self.pieces[i].poly.is_nondegenerate())
            .collect();
        order.sort_by(|&a, &b| boxes[a][0].cmp(&boxes[b][0]));
        let mut bad = Vec::new();
        for (k, &i) in order.iter().enumerate() {
            for &j in &order[k + 1..] {
                if boxes[j][0] >= boxes[i][1] {
                    break;
                }
                let y_sep = boxes[j][2] >= boxes[i][3] || boxes[i][2] >= boxes[j][3];
                if !y_sep && self.pieces[i].poly.interiors_overlap(&self.pieces[j].poly) {
                    bad.push((i.min(j), i.max(j)));
                }
            }
        }
        bad.sort();
        bad
    }

    /// Consecutive nondegenerate pieces (lexicographic word order) whose upper-right
    /// corners are not strictly increasing.
    pub fn order_violations(&self) -> Vec<(Word, Word)> {
        let nd: Vec<&Piece> = self.pieces.iter().filter(|pc| pc.poly.is_nondegenerate()).collect();
        nd.windows(2)
            .filter(|w| {
                let a = w[0].poly.upper_right();
                let b = w[1].poly.upper_right();
                (&a.y, &a.x) >= (&b.y, &b.x)
            })
            .map(|w| (w[0].word.clone(), w[1].word.clone()))
            .collect()
    }

    /// Words of pieces not contained in their parent piece of `parent` (= `Y_{n-1}`).
    pub fn nesting_violations(&self, parent: &YLevel) -> Vec<Word> {
        assert_eq!(parent.n + 1, self.n);
        let corner0 = Point::new(Scalar::zero(), Scalar::zero());
        let corner1 = Point::new(Scalar::one(), Scalar::one());
        let in_some = |q: &Point| parent.pieces.iter().any(|pc| pc.poly.contains_point(q));
        self.pieces
            .iter()
            .enumerate()
            .filter(|(_, pc)| {
                let v = pc.poly.vertices();
                if v.len() == 1 && (v[0] == corner0 || v[0] == corner1) {
                    return !in_some(&v[0]);
                }
                // parent of word w (length n) is its prefix of length n-1, at index i / 2... in
                // lexicographic order the prefix index is i >> 1.
                let prefix = Word(pc.word.0[..pc.word.len() - 1].to_vec());
                let pi = parent.pieces.binary_search_by(|q| q.word.cmp(&prefix)).unwrap();
                !parent.pieces[pi].poly.contains_polygon(&pc.poly)
            })
            .map(|(_, pc)| pc.word.clone())
            .collect()
    }

    /// Words `w` for which the mirror of piece `w` differs from piece `mirror(w)`.
    pub fn symmetry_violations(&self) -> Vec<Word> {
        self.pieces
            .iter()
            .filter(|pc| {
                let mw = pc.word.mirror();
                let j = self.pieces.binary_search_by(|q| q.word.cmp(&mw)).unwrap();
                !pc.poly.mirror().same_as(&self.pieces[j].poly)
            })
            .map(|pc| pc.word.clone())
            .collect()
    }

    /// `word,x1 y1;x2 y2;…` rows with exact coordinates.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("word,vertices\n");
        for pc in &self.pieces {
            let vs: Vec<String> = pc.poly.vertices().iter().map(|p| format!("{} {}", p.x, p.y)).collect();
            let _ = writeln!(s, "{},{}", pc.word, vs.join(";"));
        }
        s
    }
}

/// Lower and upper staircase enclosures of the graph of `B`.
#[derive(Clone, Debug)]
pub struct BEnclosure {
    pub n: u32,
    pub lower: MonotoneCurve,
    pub upper: MonotoneCurve,
    /// Largest vertical gap between the two curves.
    pub width: Scalar,
}

impl BEnclosure {
    /// True if `pt` lies between the two curves (vertical sections included).
    pub fn contains(&self, pt: &Point) -> bool {
        match (self.lower.eval_lower(&pt.x), self.upper.eval_upper(&pt.x)) {
            (Some(lo), Some(hi)) => lo <= pt.y && pt.y <= hi,
            _ => false,
        }
    }
}

/// Encloses `B` between two monotone staircases derived from `Y_n`.
///
/// For each `x`, `B(x)` lies in some piece whose x-range contains `x`, so it is
/// between the smallest piece bottom and the largest piece top there; taking a
/// running maximum from the left (resp. minimum from the right) is valid
/// because `B` is increasing.
pub fn b_enclosure(p: &Params, n: u32, strategy: Strategy) -> Result<BEnclosure> {
    if n < 1 {
        return Err(Error::Invalid("b_enclosure needs n >= 1".into()));
    }
    let y = build_y(p, n, strategy)?;
    b_enclosure_from(&y)
}

pub fn b_enclosure_from(y: &YLevel) -> Result<BEnclosure> {
    let boxes: Vec<[Scalar; 4]> = y.pieces.iter().map(|pc| pc.poly.bbox()).collect();
    let mut xs: Vec<Scalar> = boxes.iter().flat_map(|b| [b[0].clone(), b[1].clone()]).collect();
    xs.sort();
    xs.dedup();
    if xs.first() != Some(&Scalar::zero()) || xs.last() != Some(&Scalar::one()) {
        return Err(Error::Curve("pieces do not span [0, 1]".into()));
    }
    let mut starts: BTreeMap<&Scalar, Vec<usize>> = BTreeMap::new();
    let mut ends: BTreeMap<&Scalar, Vec<usize>> = BTreeMap::new();
    for (i, b) in boxes.iter().enumerate() {
        starts.entry(&b[0]).or_default().push(i);
        ends.entry(&b[1]).or_default().push(i);
    }
    // Multisets of active bottoms / tops.
    let mut bottoms: BTreeMap<Scalar, usize> = BTreeMap::new();
    let mut tops: BTreeMap<Scalar, usize> = BTreeMap::new();
    let add = |m: &mut BTreeMap<Scalar, usize>, k: &Scalar| *m.entry(k.clone()).or_insert(0) += 1;
    let del = |m: &mut BTreeMap<Scalar, usize>, k: &Scalar| {
        let c = m.get_mut(k).unwrap();
        *c -= 1;
        if *c == 0 {
            m.remove(k);
        }
    };
    // point values (lo, hi) at xs[k], interval values on (xs[k], xs[k+1])
    let mut pt_vals = Vec::with_capacity(xs.len());
    let mut iv_vals = Vec::with_capacity(xs.len());
    for (k, x) in xs.iter().enumerate() {
        for &i in starts.get(x).map(|v| v.as_slice()).unwrap_or(&[]) {
            add(&mut bottoms, &boxes[i][2]);
            add(&mut tops, &boxes[i][3]);
        }
        let lo = bottoms.keys().next().cloned();
        let hi = tops.keys().next_back().cloned();
        pt_vals.push((lo.unwrap(), hi.unwrap()));
        for &i in ends.get(x).map(|v| v.as_slice()).unwrap_or(&[]) {
            del(&mut bottoms, &boxes[i][2]);
            del(&mut tops, &boxes[i][3]);
        }
        if k + 1 < xs.len() {
            let (Some(lo), Some(hi)) = (bottoms.keys().next(), tops.keys().next_back()) else {
                return Err(Error::Curve(format!(
                    "no piece covers ({x}, {}); horizontal-line property violated",
                    xs[k + 1]
                )));
            };
            iv_vals.push((lo.clone(), hi.clone()));
        }
    }
    let m = xs.len();
    // Running max of bottoms from the left.
    let mut lower_pts = vec![Point::new(Scalar::zero(), Scalar::zero())];
    let mut run = pt_vals[0].0.clone();
    for k in 0..m - 1 {
        let iv = &iv_vals[k].0;
        if iv > &run {
            run = iv.clone();
        }
        lower_pts.push(Point::new(xs[k].clone(), run.clone()));
        lower_pts.push(Point::new(xs[k + 1].clone(), run.clone()));
        if pt_vals[k + 1].0 > run {
            run = pt_vals[k + 1].0.clone();
        }
    }
    lower_pts.push(Point::new(Scalar::one(), Scalar::one()));
    // Running min of tops from the right.
    let mut upper_rev = vec![Point::new(Scalar::one(), Scalar::one())];
    let mut run = pt_vals[m - 1].1.clone();
    for k in (0..m - 1).rev() {
        let iv = &iv_vals[k].1;
        if iv < &run {
            run = iv.clone();
        }
        upper_rev.push(Point::new(xs[k + 1].clone(), run.clone()));
        upper_rev.push(Point::new(xs[k].clone(), run.clone()));
        if pt_vals[k].1 < run {
            run = pt_vals[k].1.clone();
        }
    }
    upper_rev.push(Point::new(Scalar::zero(), Scalar::zero()));
    upper_rev.reverse();
    let lower = MonotoneCurve::new(lower_pts)?;
    let upper = MonotoneCurve::new(upper_rev)?;
    let (_, width) = crate::curve::vertical_diff_range(&upper, &lower)?;
    Ok(BEnclosure {
        n: y.n,
        lower,
        upper,
        width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn p() -> Params {
        Params::new(q(2, 5), q(9, 10)).unwrap()
    }

    fn pts(v: &[(Scalar, Scalar)]) -> Vec<Point> {
        v.iter().map(|(x, y)| Point::new(x.clone(), y.clone())).collect()
    }

    #[test]
    fn clip_square_by_s0_halfplane() {
        let h = HalfPlane::for_symbol(&p(), Symbol::Zero);
        let c = ConvexPolygon::unit_square().clip(&h).unwrap();
        let want = ConvexPolygon::new(pts(&[
            (int(0), int(0)),
            (int(1), int(0)),
            (int(1), q(2, 3)),
            (q(1, 4), int(1)),
            (int(0), int(1)),
        ]))
        .unwrap();
        assert!(c.same_as(&want), "{c:?}");
    }

    #[test]
    fn clip_trivial_cases() {
        let sq = ConvexPolygon::unit_square();
        let inside = HalfPlane::new(int(1), int(1), int(3), Side::Le).unwrap();
        assert!(sq.clip(&inside).unwrap().same_as(&sq));
        let outside = HalfPlane::new(int(1), int(1), int(3), Side::Ge).unwrap();
        assert!(sq.clip(&outside).is_none());
        // touching only at a corner keeps that corner
        let touch = HalfPlane::new(int(1), int(1), int(2), Side::Ge).unwrap();
        assert_eq!(sq.clip(&touch).unwrap().vertices(), &pts(&[(int(1), int(1))])[..]);
        assert!(HalfPlane::new(int(0), int(0), int(1), Side::Le).is_err());
    }

    #[test]
    fn s_images() {
        let sq = ConvexPolygon::unit_square();
        let a = s_image(&p(), Symbol::Zero, &sq);
        assert_eq!(a.vertices().len(), 5);
        let ur = a.vertices().iter().find(|v| v.x == q(2, 5) && v.y == q(3, 5));
        assert!(ur.is_some());
        // the cut edge lands on x + y = 1
        assert!(a.vertices().iter().any(|v| v.x == q(1, 10) && v.y == q(9, 10)));
        let o = ConvexPolygon::point(Point::new(int(0), int(0)));
        assert_eq!(s_image(&p(), Symbol::One, &o).vertices(), &pts(&[(int(1), int(1))])[..]);
        assert_eq!(s_image(&p(), Symbol::Zero, &o).vertices(), &pts(&[(int(0), int(0))])[..]);
    }

    #[test]
    fn y_levels_small() {
        let y0 = build_y(&p(), 0, Strategy::Sequential).unwrap();
        assert_eq!(y0.pieces.len(), 1);
        assert!(y0.pieces[0].poly.same_as(&ConvexPolygon::unit_square()));
        let y1 = build_y(&p(), 1, Strategy::Sequential).unwrap();
        assert_eq!(y1.pieces.len(), 2);
        assert!(y1.pieces.iter().all(|pc| pc.poly.vertices().len() == 5));
        let y2 = build_y(&p(), 2, Strategy::Sequential).unwrap();
        assert_eq!(y2.pieces.len(), 4);
        assert!(y2.overlapping_pairs().is_empty());
        assert!(y2.order_violations().is_empty());
        assert!(y2.nesting_violations(&y1).is_empty());
        assert!(y2.symmetry_violations().is_empty());
        assert!(build_y(&p(), 40, Strategy::Sequential).is_err());
    }

    #[test]
    fn small_pieces_at_level_four() {
        // 0111 is cut down to a triangle and 0110 keeps seven vertices.
        let y = build_y(&p(), 4, Strategy::Sequential).unwrap();
        let get = |w: &str| {
            let w: Word = w.parse().unwrap();
            y.pieces.iter().find(|pc| pc.word == w).unwrap().poly.clone()
        };
        let tri = get("0111");
        assert_eq!(tri.vertices().len(), 3);
        assert!(tri.contains_point(&Point::new(q(271, 2500), q(2229, 2500))));
        assert!(tri.contains_point(&Point::new(q(149, 1250), q(1101, 1250))));
        assert_eq!(get("0110").vertices().len(), 7);
        assert_eq!(y.vertex_histogram().get(&7), Some(&2));
    }

    #[test]
    fn overlap_detection() {
        let sq = ConvexPolygon::unit_square();
        let m = crate::maps::DiagAffineMap::new(q(1, 2), q(1, 4), q(1, 2), q(1, 4));
        assert!(sq.interiors_overlap(&sq.map(&m)));
        let right = crate::maps::DiagAffineMap::new(int(1), int(1), int(1), int(0));
        assert!(!sq.interiors_overlap(&sq.map(&right)));
    }

    #[test]
    fn enclosure_basic() {
        let e = b_enclosure(&p(), 6, Strategy::Sequential).unwrap();
        assert_eq!(e.lower.start(), &Point::new(int(0), int(0)));
        assert_eq!(e.lower.end(), &Point::new(int(1), int(1)));
        assert_eq!(e.upper.start(), &Point::new(int(0), int(0)));
        assert_eq!(e.upper.end(), &Point::new(int(1), int(1)));
        let (mn, _) = crate::curve::vertical_diff_range(&e.upper, &e.lower).unwrap();
        assert!(mn >= Scalar::zero());
        assert!(e.contains(&Point::new(q(1, 16), q(27, 32))));
        assert!(b_enclosure(&p(), 0, Strategy::Sequential).is_err());
    }
}
