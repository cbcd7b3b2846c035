//! Box-dimension lower bounds from sub-systems `{T_w : w ∈ family}` with the
//! rectangular open set condition (ROSC), and the dimension equation
//! `Σ a_i · b_i^{s−1} = 1`.
//!
//! All checks are written once as margin functions (see [`crate::enclose`]) and
//! evaluated exactly at a point or rigorously over a parameter rectangle.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, q, to_f64, Interval, Scalar};
use crate::certify::{Cell, Verdict};
use crate::enclose::{Checkable, MarginFn};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::maps::{axis_scales, word_map, Num, ParamRect, ParamSet, Params, Symbol, Word};
use crate::transcendental::{ln, exp};

/// The projection axis along which the family must cover its box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }

    pub fn flip(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

/// Axis-aligned box `[xmin, xmax] × [ymin, ymax]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyBox {
    pub xmin: Scalar,
    pub xmax: Scalar,
    pub ymin: Scalar,
    pub ymax: Scalar,
}

/// Words with their exact scales and fixed points at one parameter point.
#[derive(Clone, Debug)]
pub struct WordFamily {
    pub params: Params,
    pub words: Vec<Word>,
    pub axis: Axis,
    /// `(a_i, b_i)`: scale along the projection axis first.
    pub scales: Vec<(Scalar, Scalar)>,
    pub fixed_points: Vec<(Scalar, Scalar)>,
    pub bbox: FamilyBox,
}

/// Which symbol must dominate for the scale along `axis` to be the larger one.
fn heavy(axis: Axis) -> Symbol {
    match axis {
        Axis::X => Symbol::One,
        Axis::Y => Symbol::Zero,
    }
}

/// Every word has at least as many heavy symbols as light ones, one strictly more.
pub fn check_word_balance(ws: &[Word], axis: Axis) -> Result<()> {
    let h = heavy(axis);
    let l = h.flip();
    if ws.iter().any(|w| w.is_empty() || w.count(h) < w.count(l)) {
        return Err(Error::Invalid(format!("every word needs #{} ≥ #{}", h.as_char(), l.as_char())));
    }
    if !ws.iter().any(|w| w.count(h) > w.count(l)) {
        return Err(Error::Invalid("one word must be strictly unbalanced".into()));
    }
    Ok(())
}

impl WordFamily {
    pub fn new(p: &Params, ws: &[Word], axis: Axis) -> Result<Self> {
        check_word_balance(ws, axis)?;
        let bbox = family_box(p, ws)?;
        let mut scales = Vec::new();
        let mut fixed_points = Vec::new();
        for w in ws {
            let (a, b) = axis_scales(p, w);
            scales.push(match axis {
                Axis::X => (a, b),
                Axis::Y => (b, a),
            });
            let f = word_map(p, w).fixed_point()?;
            fixed_points.push((f.x, f.y));
        }
        Ok(WordFamily {
            params: p.clone(),
            words: ws.to_vec(),
            axis,
            scales,
            fixed_points,
            bbox,
        })
    }
}

/// Bounding box of the fixed points of the `T_w`, checked to be mapped into itself.
pub fn family_box(p: &Params, ws: &[Word]) -> Result<FamilyBox> {
    if ws.len() < 2 {
        return Err(Error::Invalid("a family needs at least two words".into()));
    }
    let maps: Vec<_> = ws.iter().map(|w| word_map(p, w)).collect();
    let fps = maps.iter().map(|m| m.fixed_point()).collect::<Result<Vec<_>>>()?;
    let xmin = fps.iter().map(|f| &f.x).min().unwrap().clone();
    let xmax = fps.iter().map(|f| &f.x).max().unwrap().clone();
    let ymin = fps.iter().map(|f| &f.y).min().unwrap().clone();
    let ymax = fps.iter().map(|f| &f.y).max().unwrap().clone();
    if xmin == xmax || ymin == ymax {
        return Err(Error::DegenerateBox("fixed points span a degenerate box".into()));
    }
    for (m, w) in maps.iter().zip(ws) {
        let inside = |s: &Scalar, e: &Scalar, lo: &Scalar, hi: &Scalar| {
            let a = s * lo + e;
            let b = s * hi + e;
            &a >= lo && &b <= hi
        };
        if !inside(&m.ax, &m.ex, &xmin, &xmax) || !inside(&m.dy, &m.fy, &ymin, &ymax) {
            return Err(Error::Verification(format!("T_{w} does not map the box into itself")));
        }
    }
    Ok(FamilyBox { xmin, xmax, ymin, ymax })
}

/// Choices made once at a representative point: extremal fixed points per
/// axis, the projection chain used for the cover, and the overlap pair.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Plan {
    /// `[argmin x, argmax x, argmin y, argmax y]`
    ext: [usize; 4],
    chain: Option<Vec<usize>>,
    overlap: Option<(usize, usize)>,
}

/// Greedy cover of `[lo, hi]` by the intervals, as indices in order.
fn greedy_chain(ivs: &[(Scalar, Scalar)], lo: &Scalar, hi: &Scalar) -> Option<Vec<usize>> {
    let mut cur = lo.clone();
    let mut chain: Vec<usize> = Vec::new();
    loop {
        let best = ivs
            .iter()
            .enumerate()
            .filter(|(k, (a, b))| a <= &cur && (chain.is_empty() || b > &cur) && !chain.contains(k))
            .max_by(|x, y| x.1 .1.cmp(&y.1 .1).then(y.0.cmp(&x.0)))?;
        chain.push(best.0);
        cur = best.1 .1.clone();
        if &cur >= hi {
            return Some(chain);
        }
    }
}

fn plan(p: &Params, ws: &[Word], axis: Axis) -> Result<Plan> {
    let maps: Vec<_> = ws.iter().map(|w| word_map(p, w)).collect();
    let fps = maps.iter().map(|m| m.fixed_point()).collect::<Result<Vec<_>>>()?;
    let arg = |f: &dyn Fn(usize) -> Scalar, max: bool| -> usize {
        let mut best = 0;
        for k in 1..ws.len() {
            let better = if max { f(k) > f(best) } else { f(k) < f(best) };
            if better {
                best = k;
            }
        }
        best
    };
    let fx = |k: usize| fps[k].x.clone();
    let fy = |k: usize| fps[k].y.clone();
    let ext = [arg(&fx, false), arg(&fx, true), arg(&fy, false), arg(&fy, true)];
    let (lo, hi) = match axis {
        Axis::X => (fps[ext[0]].x.clone(), fps[ext[1]].x.clone()),
        Axis::Y => (fps[ext[2]].y.clone(), fps[ext[3]].y.clone()),
    };
    let ivs: Vec<(Scalar, Scalar)> = maps
        .iter()
        .map(|m| match axis {
            Axis::X => (&m.ax * &lo + &m.ex, &m.ax * &hi + &m.ex),
            Axis::Y => (&m.dy * &lo + &m.fy, &m.dy * &hi + &m.fy),
        })
        .collect();
    let chain = greedy_chain(&ivs, &lo, &hi);
    let mut overlap: Option<((usize, usize), Scalar)> = None;
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            let len = ivs[i].1.clone().min(ivs[j].1.clone()) - ivs[i].0.clone().max(ivs[j].0.clone());
            if len.is_positive() && overlap.as_ref().is_none_or(|(_, b)| &len > b) {
                overlap = Some(((i, j), len));
            }
        }
    }
    Ok(Plan {
        ext,
        chain,
        overlap: overlap.map(|(ij, _)| ij),
    })
}

/// All ROSC margins of a family for a fixed plan. Layout (n words, P pairs):
/// `4n` ordering, `4n` containment, `4P` disjointness, cover chain, overlap,
/// `Σ a − 1`, then `2n` projection endpoints.
struct RoscFn<'a> {
    ws: &'a [Word],
    axis: Axis,
    plan: &'a Plan,
}

struct Layout {
    n: usize,
    pairs: usize,
    chain: usize,
    overlap: usize,
}

impl Layout {
    fn of(n: usize, plan: &Plan) -> Layout {
        Layout {
            n,
            pairs: n * (n - 1) / 2,
            chain: plan.chain.as_ref().map_or(0, |c| c.len() + 1),
            overlap: if plan.overlap.is_some() { 2 } else { 0 },
        }
    }
}

impl MarginFn for RoscFn<'_> {
    fn eval<P: ParamSet>(&self, p: &P) -> Result<Vec<P::N>> {
        let n = self.ws.len();
        let one = P::N::one();
        let zero = P::N::zero();
        // per word and coordinate: (scale, shift, fixed coordinate)
        let mut coef: Vec<[(P::N, P::N, P::N); 2]> = Vec::with_capacity(n);
        for w in self.ws {
            let m = word_map(p, w);
            let f = m.fixed_point()?;
            coef.push([(m.ax, m.ex, f.x), (m.dy, m.fy, f.y)]);
        }
        let ext = self.plan.ext;
        let lo_c = |c: usize| coef[ext[2 * c]][c].2.clone();
        let hi_c = |c: usize| coef[ext[2 * c + 1]][c].2.clone();
        let mut out = Vec::new();
        // distances of each fixed point from the box sides
        let mut d_lo = vec![[zero.clone(), zero.clone()]; n];
        let mut d_hi = vec![[zero.clone(), zero.clone()]; n];
        for c in 0..2 {
            for k in 0..n {
                if k != ext[2 * c] {
                    d_lo[k][c] = coef[k][c].2.sub(&lo_c(c));
                }
                if k != ext[2 * c + 1] {
                    d_hi[k][c] = hi_c(c).sub(&coef[k][c].2);
                }
                out.push(d_lo[k][c].clone());
                out.push(d_hi[k][c].clone());
            }
        }
        // containment: T_k(box) − box side = (1 − s_k)·distance
        for c in 0..2 {
            for k in 0..n {
                let r = one.sub(&coef[k][c].0);
                out.push(r.mul(&d_lo[k][c]));
                out.push(r.mul(&d_hi[k][c]));
            }
        }
        let img = |k: usize, c: usize| {
            let (s, e, _) = &coef[k][c];
            (s.mul(&lo_c(c)).add(e), s.mul(&hi_c(c)).add(e))
        };
        for i in 0..n {
            for j in i + 1..n {
                for c in 0..2 {
                    let (li, hi) = img(i, c);
                    let (lj, hj) = img(j, c);
                    out.push(lj.sub(&hi));
                    out.push(li.sub(&hj));
                }
            }
        }
        let a = self.axis.index();
        if let Some(chain) = &self.plan.chain {
            let first = chain[0];
            out.push(one.sub(&coef[first][a].0).mul(&d_lo[first][a]).mul(&P::N::from_scalar(&int(-1))));
            for w in chain.windows(2) {
                out.push(img(w[0], a).1.sub(&img(w[1], a).0));
            }
            let last = *chain.last().unwrap();
            out.push(one.sub(&coef[last][a].0).mul(&d_hi[last][a]).mul(&P::N::from_scalar(&int(-1))));
        }
        if let Some((i, j)) = self.plan.overlap {
            out.push(img(i, a).1.sub(&img(j, a).0));
            out.push(img(j, a).1.sub(&img(i, a).0));
        }
        let sum = coef.iter().fold(zero.clone(), |acc, k| acc.add(&k[a].0));
        out.push(sum.sub(&one));
        for k in 0..n {
            let (l, h) = img(k, a);
            out.push(l);
            out.push(h);
        }
        Ok(out)
    }
}

/// Verdict of a pair of boxes being disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub i: usize,
    pub j: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoscEvidence {
    pub axis: Axis,
    /// The extremal fixed points chosen at the representative point stay extremal.
    pub extremes: Verdict,
    /// `T_w(X) ⊆ X` for every word.
    pub containment: Verdict,
    pub disjoint: Vec<PairVerdict>,
    /// Enclosures of the projections `[lo, hi]` of every `T_w(X)` on the axis.
    pub projections: Vec<(Interval, Interval)>,
    pub cover_chain: Option<Vec<usize>>,
    pub cover: Verdict,
    pub overlap_pair: Option<(usize, usize)>,
    pub overlap: Verdict,
    /// Enclosure of `Σ a_i − 1`, the dimension equation at `s = 1` minus one.
    pub sum_excess: Interval,
}

fn all(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
    vs.into_iter().fold(Verdict::Pass, Verdict::and)
}

fn any(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut out = Verdict::Fail;
    for v in vs {
        match v {
            Verdict::Pass => return Verdict::Pass,
            Verdict::Undecided => out = Verdict::Undecided,
            Verdict::Fail => {}
        }
    }
    out
}

impl RoscEvidence {
    pub fn disjointness(&self) -> Verdict {
        all(self.disjoint.iter().map(|d| d.verdict))
    }

    /// PASS needs disjoint boxes, projection cover and a positive overlap, plus `Σ a > 1`.
    pub fn verdict(&self) -> Verdict {
        all([
            self.extremes,
            self.containment,
            self.disjointness(),
            self.cover,
            self.overlap,
            Verdict::of(&self.sum_excess, true),
        ])
    }
}

/// ROSC evidence at a point or over a rectangle (the plan is fixed at its centre).
pub fn rosc_check<C: Checkable>(pr: &C, ws: &[Word], axis: Axis) -> Result<RoscEvidence> {
    let c = pr.center_point();
    family_box(&c, ws)?;
    let plan = plan(&c, ws, axis)?;
    let ms = pr.enclose(&RoscFn { ws, axis, plan: &plan })?;
    let lay = Layout::of(ws.len(), &plan);
    let n = lay.n;
    let mut it = ms.into_iter();
    let mut take = |k: usize| -> Vec<Interval> { it.by_ref().take(k).collect() };
    let order = take(4 * n);
    let contain = take(4 * n);
    let disj = take(4 * lay.pairs);
    let chain = take(lay.chain);
    let over = take(lay.overlap);
    let sum = take(1).pop().expect("sum margin");
    let proj = take(2 * n);
    let nonneg = |v: &[Interval]| all(v.iter().map(|m| Verdict::of(m, false)));
    let mut disjoint = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            let verdict = any(disj[4 * k..4 * k + 4].iter().map(|m| Verdict::of(m, true)));
            disjoint.push(PairVerdict { i, j, verdict });
            k += 1;
        }
    }
    Ok(RoscEvidence {
        axis,
        extremes: nonneg(&order),
        containment: nonneg(&contain),
        disjoint,
        projections: proj.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect(),
        cover: if plan.chain.is_some() { nonneg(&chain) } else { Verdict::Fail },
        cover_chain: plan.chain.clone(),
        overlap: if plan.overlap.is_some() {
            all(over.iter().map(|m| Verdict::of(m, true)))
        } else {
            Verdict::Fail
        },
        overlap_pair: plan.overlap,
        sum_excess: sum,
    })
}

/// Bits used for `b^t` enclosures, doubled when a sign test is inconclusive.
const POW_BITS: [u32; 3] = [96, 192, 384];

/// Cached `ln b_i` enclosures for the dimension equation.
struct Equation {
    a: Vec<Scalar>,
    ln_b: Vec<Interval>,
}

impl Equation {
    fn new(scales: &[(Scalar, Scalar)], bits: u32) -> Result<Self> {
        Ok(Equation {
            a: scales.iter().map(|s| s.0.clone()).collect(),
            ln_b: scales.iter().map(|s| ln(&s.1, bits + 32)).collect::<Result<_>>()?,
        })
    }

    /// Enclosure of `Σ a_i · b_i^{s−1} − 1`.
    fn residual(&self, s: &Scalar, bits: u32) -> Interval {
        let t = s - int(1);
        let mut acc = Interval::point(-int(1));
        for (a, l) in self.a.iter().zip(&self.ln_b) {
            let pw = if t.is_zero() { Interval::point(int(1)) } else { exp(&l.scale(&t), bits) };
            acc = &acc + &pw.scale(a);
        }
        acc
    }
}

/// Left side minus one of the dimension equation at `s`.
pub fn equation_residual(scales: &[(Scalar, Scalar)], s: &Scalar, bits: u32) -> Result<Interval> {
    Ok(Equation::new(scales, bits)?.residual(s, bits))
}

/// Root bracket of `Σ a_i b_i^{s−1} = 1` on `[1, 2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimBracket {
    pub s_lo: Scalar,
    pub s_hi: Scalar,
    /// Residual enclosures at the bracket ends (positive, then negative).
    pub residual_lo: Interval,
    pub residual_hi: Interval,
}

impl DimBracket {
    pub fn width(&self) -> Scalar {
        &self.s_hi - &self.s_lo
    }
}

/// Bracket width reached by bisection.
pub const DIM_TOL_BITS: u32 = 32;

fn sign_at(eq: &Equation, s: &Scalar) -> (Option<bool>, Interval) {
    let mut last = None;
    for bits in POW_BITS {
        let r = eq.residual(s, bits);
        let z = <Scalar as Zero>::zero();
        if r.lo() > &z {
            return (Some(true), r);
        }
        if r.hi() < &z {
            return (Some(false), r);
        }
        last = Some(r);
    }
    (None, last.expect("at least one precision"))
}

/// Bisection for the root of the dimension equation with `a_i ≥ b_i`, one strict.
///
/// An exact root at `s = 1` gives the degenerate bracket `[1, 1]`.
pub fn solve_dimension(scales: &[(Scalar, Scalar)], tol_bits: u32) -> Result<DimBracket> {
    let z = <Scalar as Zero>::zero();
    if scales.iter().any(|(a, b)| a < b || !b.is_positive() || a >= &int(1)) {
        return Err(Error::Invalid("need 0 < b_i ≤ a_i < 1".into()));
    }
    if !scales.iter().any(|(a, b)| a > b) {
        return Err(Error::Invalid("need a_i > b_i for some i".into()));
    }
    let eq = Equation::new(scales, POW_BITS[POW_BITS.len() - 1])?;
    let at_one = eq.residual(&int(1), 64);
    if at_one.lo() == &z && at_one.hi() == &z {
        return Ok(DimBracket {
            s_lo: int(1),
            s_hi: int(1),
            residual_lo: at_one.clone(),
            residual_hi: at_one,
        });
    }
    let (lo_sign, mut r_lo) = sign_at(&eq, &int(1));
    let (hi_sign, mut r_hi) = sign_at(&eq, &int(2));
    if lo_sign != Some(true) || hi_sign != Some(false) {
        return Err(Error::NoSignChange("dimension equation has no sign change on [1, 2]".into()));
    }
    let (mut lo, mut hi) = (int(1), int(2));
    let tol = Scalar::new(1.into(), num_bigint::BigInt::one() << tol_bits);
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / int(2);
        let (sign, r) = match sign_at(&eq, &mid) {
            (Some(s), r) => (s, r),
            // an inconclusive midpoint: step a quarter-width aside
            (None, _) => {
                let m2 = &mid + (&hi - &lo) / int(8);
                match sign_at(&eq, &m2) {
                    (Some(s), r) => {
                        if s {
                            lo = m2;
                            r_lo = r;
                        } else {
                            hi = m2;
                            r_hi = r;
                        }
                        continue;
                    }
                    (None, _) => return Err(Error::Verification(format!("sign of the residual undecided at s = {mid}"))),
                }
            }
        };
        if sign {
            lo = mid;
            r_lo = r;
        } else {
            hi = mid;
            r_hi = r;
        }
        debug_assert!(r_lo.lo() > &z && r_hi.hi() < &z);
    }
    Ok(DimBracket {
        s_lo: lo,
        s_hi: hi,
        residual_lo: r_lo,
        residual_hi: r_hi,
    })
}

/// A proved lower bound `dim_B A ≥ s_lo > 1` at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimCertificate {
    pub params: Params,
    pub words: Vec<Word>,
    pub axis: Axis,
    pub evidence: RoscEvidence,
    pub bracket: DimBracket,
}

impl DimCertificate {
    pub fn s_lo(&self) -> &Scalar {
        &self.bracket.s_lo
    }

    pub fn s_hi(&self) -> &Scalar {
        &self.bracket.s_hi
    }

    pub fn estimate(&self) -> f64 {
        to_f64(&self.bracket.s_lo) / 2.0 + to_f64(&self.bracket.s_hi) / 2.0
    }

    pub fn words_string(&self) -> String {
        self.words.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Solve the dimension equation for a family with passing evidence.
pub fn feng_wang_dim(p: &Params, ws: &[Word], evidence: &RoscEvidence) -> Result<DimCertificate> {
    if evidence.verdict() != Verdict::Pass {
        return Err(Error::Verification("ROSC evidence does not pass".into()));
    }
    let fam = WordFamily::new(p, ws, evidence.axis)?;
    let bracket = solve_dimension(&fam.scales, DIM_TOL_BITS)?;
    if bracket.s_lo <= int(1) {
        return Err(Error::Verification("bracket does not exceed 1".into()));
    }
    Ok(DimCertificate {
        params: p.clone(),
        words: ws.to_vec(),
        axis: evidence.axis,
        evidence: evidence.clone(),
        bracket,
    })
}

/// ROSC check followed by the equation solve; `Ok(None)` when ROSC does not pass.
pub fn certify_family(p: &Params, ws: &[Word], axis: Axis) -> Result<Option<DimCertificate>> {
    if check_word_balance(ws, axis).is_err() {
        return Ok(None);
    }
    let ev = match rosc_check(p, ws, axis) {
        Ok(ev) => ev,
        Err(Error::DegenerateBox(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    if ev.verdict() != Verdict::Pass {
        return Ok(None);
    }
    feng_wang_dim(p, ws, &ev).map(Some)
}

/// Recompute a stored certificate from its fields alone.
pub fn verify_dim(p: &Params, words: &[Word], axis: Axis, s_lo: &Scalar, s_hi: &Scalar) -> Result<DimCertificate> {
    check_word_balance(words, axis)?;
    let ev = rosc_check(p, words, axis)?;
    if ev.verdict() != Verdict::Pass {
        return Err(Error::Verification(format!("ROSC does not pass: {:?}", ev.verdict())));
    }
    if s_lo <= &int(1) || s_lo > s_hi {
        return Err(Error::Verification("bracket must satisfy 1 < s_lo ≤ s_hi".into()));
    }
    let fam = WordFamily::new(p, words, axis)?;
    let eq = Equation::new(&fam.scales, POW_BITS[2])?;
    let (sl, r_lo) = sign_at(&eq, s_lo);
    let (sh, r_hi) = sign_at(&eq, s_hi);
    if sl != Some(true) || sh != Some(false) {
        return Err(Error::Verification("equation does not change sign over the bracket".into()));
    }
    Ok(DimCertificate {
        params: p.clone(),
        words: words.to_vec(),
        axis,
        evidence: ev,
        bracket: DimBracket {
            s_lo: s_lo.clone(),
            s_hi: s_hi.clone(),
            residual_lo: r_lo,
            residual_hi: r_hi,
        },
    })
}

fn ones(n: usize) -> Word {
    Word(vec![Symbol::One; n])
}

/// `{0·1^m, 1^n}`.
pub fn family_one(m: usize, n: usize) -> Vec<Word> {
    let mut a = vec![Symbol::Zero];
    a.extend(ones(m).0);
    vec![Word(a), ones(n)]
}

/// `{0·1^m, 1·0, 1²·0, …, 1^n·0}`.
pub fn family_two(m: usize, n: usize) -> Vec<Word> {
    let mut out = vec![family_one(m, 0)[0].clone()];
    for k in 1..=n {
        let mut w = ones(k).0;
        w.push(Symbol::Zero);
        out.push(Word(w));
    }
    out
}

/// The two parameterized families in search order: `m` outer, `n` inner, family one first.
pub fn candidate_families(m_max: usize, n_max: usize) -> Vec<Vec<Word>> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        for n in 1..=n_max {
            for f in [family_one(m, n), family_two(m, n)] {
                if check_word_balance(&f, Axis::X).is_ok() && !out.contains(&f) {
                    out.push(f);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLogEntry {
    pub family: String,
    pub outcome: String,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificate: Option<DimCertificate>,
    pub log: Vec<SearchLogEntry>,
    /// Subsets skipped because `Σ a ≤ 1`.
    pub pruned: u64,
}

fn family_string(ws: &[Word]) -> String {
    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
}

/// ROSC phase of a search trial: a log line and the evidence when it passes.
fn rosc_outcome(p: &Params, ws: &[Word]) -> Result<(String, Option<RoscEvidence>)> {
    if check_word_balance(ws, Axis::X).is_err() {
        return Ok(("unbalanced".into(), None));
    }
    let ev = match rosc_check(p, ws, Axis::X) {
        Ok(ev) => ev,
        Err(Error::DegenerateBox(_)) => return Ok(("degenerate box".into(), None)),
        Err(e) => return Err(e),
    };
    if ev.verdict() == Verdict::Pass {
        return Ok(("rosc pass".into(), Some(ev)));
    }
    let mut why = Vec::new();
    if ev.disjointness() != Verdict::Pass {
        why.push("boxes meet");
    }
    if ev.cover != Verdict::Pass {
        why.push("no projection cover");
    }
    if ev.overlap != Verdict::Pass {
        why.push("no overlap");
    }
    if Verdict::of(&ev.sum_excess, true) != Verdict::Pass {
        why.push("sum a <= 1");
    }
    if why.is_empty() {
        why.push("box");
    }
    Ok((why.join("; "), None))
}

/// Run the ROSC phase over `fams` and solve the equation for the first pass.
fn first_certified(p: &Params, fams: &[Vec<Word>], strategy: Strategy, log: &mut Vec<SearchLogEntry>) -> Result<Option<DimCertificate>> {
    let res = exec::map(strategy, fams, |f| rosc_outcome(p, f));
    for (f, r) in fams.iter().zip(res) {
        let (outcome, ev) = r?;
        let family = family_string(f);
        if let Some(ev) = ev {
            let c = feng_wang_dim(p, f, &ev)?;
            let outcome = format!("certified s in [{:.9}, {:.9}]", to_f64(c.s_lo()), to_f64(c.s_hi()));
            log.push(SearchLogEntry { family, outcome });
            return Ok(Some(c));
        }
        log.push(SearchLogEntry { family, outcome });
    }
    Ok(None)
}

/// Words of length `1..=max_len` with `#1 ≥ #0`.
pub fn general_words(max_len: usize) -> Vec<Word> {
    (1..=max_len)
        .flat_map(Word::all_of_len)
        .filter(|w| w.count(Symbol::One) >= w.count(Symbol::Zero))
        .collect()
}

/// Subsets of size 2 or 3 of `ws` with `Σ a > 1`, ordered by total length then lexicographically.
fn general_subsets(p: &Params, ws: &[Word]) -> (Vec<Vec<Word>>, u64) {
    let mut scored: Vec<(f64, Scalar, &Word)> = ws
        .iter()
        .map(|w| {
            let (a, _) = axis_scales(p, w);
            (to_f64(&a), a, w)
        })
        .collect();
    scored.sort_by(|x, y| y.1.cmp(&x.1));
    let one = int(1);
    let n = scored.len();
    let mut out = Vec::new();
    let mut kept = 0u64;
    for i in 0..n {
        // the largest possible sum with i as the biggest member
        let best3 = scored[i].1.clone() + scored.get(i + 1).map_or(<Scalar as Zero>::zero(), |s| s.1.clone()) + scored.get(i + 2).map_or(<Scalar as Zero>::zero(), |s| s.1.clone());
        if best3 <= one {
            break;
        }
        for j in i + 1..n {
            let two = &scored[i].1 + &scored[j].1;
            let with_next = &two + scored.get(j + 1).map_or(<Scalar as Zero>::zero(), |s| s.1.clone());
            if with_next <= one {
                break;
            }
            if two > one {
                out.push(vec![scored[i].2.clone(), scored[j].2.clone()]);
                kept += 1;
            }
            for k in j + 1..n {
                if &two + &scored[k].1 <= one {
                    break;
                }
                out.push(vec![scored[i].2.clone(), scored[j].2.clone(), scored[k].2.clone()]);
                kept += 1;
            }
        }
    }
    let total = {
        let n = n as u64;
        n * (n - 1) / 2 + n * (n - 1) * n.saturating_sub(2) / 6
    };
    for f in &mut out {
        f.sort_by(|a, b| (a.len(), a.to_string()).cmp(&(b.len(), b.to_string())));
    }
    out.sort_by_key(|f| (f.iter().map(|w| w.len()).sum::<usize>(), family_string(f)));
    out.retain(|f| check_word_balance(f, Axis::X).is_ok());
    (out, total - kept)
}

/// Search the two families, then (when `general_len > 0`) subsets of short words.
pub fn search_family(p: &Params, m_max: usize, n_max: usize, general_len: usize, strategy: Strategy) -> Result<SearchOutcome> {
    let mut log = Vec::new();
    let fams = candidate_families(m_max, n_max);
    if let Some(c) = first_certified(p, &fams, strategy, &mut log)? {
        return Ok(SearchOutcome { certificate: Some(c), log, pruned: 0 });
    }
    let mut pruned = 0;
    if general_len > 0 {
        let (subsets, skipped) = general_subsets(p, &general_words(general_len));
        pruned = skipped;
        if let Some(c) = first_certified(p, &subsets, strategy, &mut log)? {
            return Ok(SearchOutcome { certificate: Some(c), log, pruned });
        }
    }
    Ok(SearchOutcome { certificate: None, log, pruned })
}

/// `λμ < 1/2` over a whole cell.
pub fn lambda_mu_below_half(c: &Cell) -> Verdict {
    let [l0, l1, m0, m1] = c.bounds();
    let h = q(1, 2);
    if l1 * m1 < h {
        Verdict::Pass
    } else if l0 * m0 >= h {
        Verdict::Fail
    } else {
        Verdict::Undecided
    }
}

#[derive(Clone, Debug)]
pub struct DimSweepOptions {
    pub depth: u32,
    pub start_depth: u32,
    pub m_max: usize,
    pub n_max: usize,
    pub strategy: Strategy,
}

impl DimSweepOptions {
    pub fn new(depth: u32) -> Self {
        Self {
            depth,
            start_depth: 2,
            m_max: 8,
            n_max: 8,
            strategy: Strategy::Parallel,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DimSweepReport {
    pub depth: u32,
    /// Cells where a family passes ROSC with `Σ a > 1` throughout, so `dim > 1`.
    pub certified: Vec<(Cell, Vec<Word>)>,
    pub undecided: Vec<Cell>,
    pub certified_area: Scalar,
}

impl DimSweepReport {
    pub fn coverage(&self) -> f64 {
        to_f64(&(&self.certified_area / crate::certify::region_area()))
    }
}

pub const DIM_SWEEP_DEPTH_CAP: u32 = 12;

fn quick_sum(l: f64, m: f64, ws: &[Word]) -> f64 {
    ws.iter()
        .map(|w| l.powi(w.count(Symbol::Zero) as i32) * m.powi(w.count(Symbol::One) as i32))
        .sum()
}

/// First family certified over the whole rectangle, if any.
pub fn certify_rect(r: &ParamRect, fams: &[Vec<Word>]) -> Result<Option<Vec<Word>>> {
    let c = r.center();
    let (l, m) = c.to_f64();
    for f in fams {
        if quick_sum(l, m, f) <= 1.0 {
            continue;
        }
        let at_c = match rosc_check(&c, f, Axis::X) {
            Ok(ev) => ev,
            Err(Error::DegenerateBox(_)) => continue,
            Err(e) => return Err(e),
        };
        if at_c.verdict() != Verdict::Pass {
            continue;
        }
        match rosc_check(r, f, Axis::X) {
            Ok(ev) if ev.verdict() == Verdict::Pass => return Ok(Some(f.clone())),
            Ok(_) | Err(Error::DegenerateBox(_)) | Err(Error::Verification(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Adaptive dyadic sweep certifying `dim > 1` cell by cell.
pub fn sweep_dim(opts: &DimSweepOptions) -> Result<DimSweepReport> {
    crate::bcurve::check_cap(opts.depth, DIM_SWEEP_DEPTH_CAP)?;
    let fams = candidate_families(opts.m_max, opts.n_max);
    let start = opts.start_depth.min(opts.depth);
    let n = 1u64 << start;
    let mut frontier: Vec<Cell> = (0..n)
        .flat_map(|i| (0..n).map(move |j| Cell { depth: start, i, j }))
        .filter(|c| c.meets_region())
        .collect();
    let mut certified = Vec::new();
    let mut undecided = Vec::new();
    loop {
        let results = exec::map(opts.strategy, &frontier, |c| match c.rect() {
            Some(r) => certify_rect(&r, &fams),
            None => Ok(None),
        });
        let mut next = Vec::new();
        for (c, res) in frontier.iter().zip(results) {
            match res? {
                Some(f) => certified.push((*c, f)),
                None if c.depth < opts.depth => next.extend(c.children().into_iter().filter(|k| k.meets_region())),
                None => undecided.push(*c),
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    certified.sort_by(|a, b| a.0.cmp(&b.0));
    undecided.sort();
    let certified_area = certified.iter().fold(<Scalar as Zero>::zero(), |acc, (c, _)| acc + c.area_in_region());
    Ok(DimSweepReport {
        depth: opts.depth,
        certified,
        undecided,
        certified_area,
    })
}

/// Parse a comma-separated family such as `"01,1"`.
pub fn parse_family(s: &str) -> Result<Vec<Word>> {
    s.split(',').map(|w| w.trim().parse()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Params {
        Params::new(q(2, 5), q(9, 10)).unwrap()
    }

    fn fam(s: &str) -> Vec<Word> {
        parse_family(s).unwrap()
    }

    #[test]
    fn scales() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(axis_scales(&p(), &w("01")), (q(9, 25), q(9, 25)));
        assert_eq!(axis_scales(&p(), &w("1")), (q(9, 10), q(2, 5)));
        assert_eq!(axis_scales(&p(), &w("111")), (q(729, 1000), q(8, 125)));
    }

    #[test]
    fn box_of_worked_example() {
        let b = family_box(&p(), &fam("01,1")).unwrap();
        assert_eq!(b, FamilyBox { xmin: q(1, 16), xmax: int(1), ymin: q(27, 32), ymax: int(1) });
        assert!(matches!(family_box(&p(), &fam("1,11")), Err(Error::DegenerateBox(_))));
        assert!(family_box(&p(), &fam("1")).is_err());
    }

    #[test]
    fn rosc_of_worked_example() {
        let ev = rosc_check(&p(), &fam("01,1"), Axis::X).unwrap();
        assert_eq!(ev.disjointness(), Verdict::Pass);
        assert_eq!(ev.cover, Verdict::Pass);
        assert_eq!(ev.overlap, Verdict::Pass);
        assert_eq!(ev.verdict(), Verdict::Pass);
        assert_eq!(ev.sum_excess, Interval::point(q(13, 50)));
        // T0 and T1 images of the unit square overlap when λ + μ > 1
        let ev = rosc_check(&p(), &fam("0,1"), Axis::X).unwrap();
        assert_eq!(ev.disjointness(), Verdict::Fail);
    }

    #[test]
    fn worked_example_dimension() {
        let c = certify_family(&p(), &fam("01,1"), Axis::X).unwrap().expect("certified");
        assert!(c.width_ok());
        assert!(c.s_lo() > &int(1));
        assert!((c.estimate() - 1.244273660).abs() < 2e-9, "{}", c.estimate());
        let v = verify_dim(&p(), &c.words, Axis::X, c.s_lo(), c.s_hi()).unwrap();
        assert_eq!(v.evidence, c.evidence);
        assert!(verify_dim(&p(), &c.words, Axis::X, &q(5, 4), &q(13, 10)).is_err());
    }

    impl DimCertificate {
        fn width_ok(&self) -> bool {
            to_f64(&self.bracket.width()) <= 1e-9
        }
    }

    #[test]
    fn solver_edge_cases() {
        // self-similar: no strictly larger scale
        assert!(solve_dimension(&[(q(1, 2), q(1, 2)), (q(1, 2), q(1, 2))], 20).is_err());
        // 2·(1/2)·(1/4)^{s−1} = 1 has its root at s = 1
        let b = solve_dimension(&[(q(1, 2), q(1, 4)), (q(1, 2), q(1, 4))], 20).unwrap();
        assert_eq!((b.s_lo, b.s_hi), (int(1), int(1)));
        // 3 maps of (1/2, 1/4): 3/2 · 4^{1−s} = 1, s = 1 + log_4(3/2)
        let b = solve_dimension(&vec![(q(1, 2), q(1, 4)); 3], 30).unwrap();
        let s = 1.0 + (1.5f64).ln() / (4f64).ln();
        assert!(to_f64(&b.s_lo) <= s && s <= to_f64(&b.s_hi));
        assert!(b.residual_lo.lo() > &<Scalar as Zero>::zero() && b.residual_hi.hi() < &<Scalar as Zero>::zero());
    }

    #[test]
    fn families() {
        assert_eq!(family_string(&family_one(1, 1)), "01,1");
        assert_eq!(family_string(&family_two(2, 3)), "011,10,110,1110");
        let c = candidate_families(2, 2);
        assert_eq!(family_string(&c[0]), "01,1");
        // {01, 10} is balanced throughout and skipped
        assert!(!c.iter().any(|f| family_string(f) == "01,10"));
    }

    #[test]
    fn search_at_examples() {
        let s = search_family(&p(), 8, 8, 0, Strategy::Sequential).unwrap();
        let c = s.certificate.expect("found");
        assert_eq!(c.words_string(), "01,1");
        let hard = Params::new(q(9, 20), q(3, 5)).unwrap();
        let s = search_family(&hard, 8, 8, 0, Strategy::Parallel).unwrap();
        assert!(s.certificate.is_none());
        assert_eq!(s.log.len(), candidate_families(8, 8).len());
    }

    #[test]
    fn rect_evidence() {
        let r = ParamRect::parse("3/8,13/32,7/8,29/32").unwrap();
        let ev = rosc_check(&r, &fam("01,1"), Axis::X).unwrap();
        assert_eq!(ev.verdict(), Verdict::Pass);
        assert_eq!(certify_rect(&r, &candidate_families(2, 2)).unwrap(), Some(fam("01,1")));
    }

    #[test]
    fn mirrored_family() {
        let ev = rosc_check(&p(), &fam("10,0"), Axis::Y).unwrap();
        assert_eq!(ev.verdict(), Verdict::Pass);
        let a = certify_family(&p(), &fam("01,1"), Axis::X).unwrap().unwrap();
        let b = certify_family(&p(), &fam("10,0"), Axis::Y).unwrap().unwrap();
        assert_eq!(a.bracket.s_lo, b.bracket.s_lo);
        assert!(check_word_balance(&fam("10,0"), Axis::X).is_err());
    }

    #[test]
    fn half_flag() {
        assert_eq!(lambda_mu_below_half(&Cell { depth: 3, i: 2, j: 7 }), Verdict::Pass);
        assert_eq!(lambda_mu_below_half(&Cell { depth: 2, i: 3, j: 3 }), Verdict::Fail);
        assert_eq!(lambda_mu_below_half(&Cell { depth: 2, i: 2, j: 3 }), Verdict::Undecided);
    }
}
