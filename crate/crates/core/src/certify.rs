//! Certificates that parameter rectangles lie in the region `G`: the corner
//! images `T1(0,0)` and `T0(1,1)` lie strictly below `B`.
//!
//! A witness is an eventually periodic word `a`. If every tail point
//! `p_j = pt_{σ^j a}` sits on the side of `x + y = 1` where `S_{a_{j+1}}` agrees
//! with `T_{a_{j+1}}`, then `pt_a ∈ B`; a point of the increasing graph `B`
//! strictly left of and above a target puts the target strictly below `B`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_scalar, int, parse_scalar, q, to_f64, Interval, Scalar};
use crate::enclose::{Checkable, MarginFn};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::maps::{pt_of_word, EpWord, Num, ParamRect, ParamSet, Params, Point, Symbol, Word};

/// Outcome of a sign test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

impl Verdict {
    pub fn of(m: &Interval, strict: bool) -> Verdict {
        let z = <Scalar as Zero>::zero();
        let pass = if strict { m.lo() > &z } else { m.lo() >= &z };
        let fail = if strict { m.hi() <= &z } else { m.hi() < &z };
        if pass {
            Verdict::Pass
        } else if fail {
            Verdict::Fail
        } else {
            Verdict::Undecided
        }
    }

    pub fn and(self, o: Verdict) -> Verdict {
        match (self, o) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Undecided, _) | (_, Verdict::Undecided) => Verdict::Undecided,
            _ => Verdict::Pass,
        }
    }
}

/// The corner image to be placed below `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `T1(0,0) = (1 − μ, 1 − λ)`
    T1Origin,
    /// `T0(1,1) = (λ, μ)`
    T0Corner,
}

fn target_point<P: ParamSet>(p: &P, t: Target) -> Point<P::N> {
    let l = p.lambda_n();
    let m = p.mu_n();
    match t {
        Target::T1Origin => {
            let one = P::N::one();
            Point::new(one.sub(&m), one.sub(&l))
        }
        Target::T0Corner => Point::new(l, m),
    }
}

/// Orbit margins for `a`: for every tail `p_j`, `1 − sum` if the next symbol is 0
/// and `sum − 1` if it is 1 (non-strict), followed by the two dominance margins
/// `target.x − pt.x` and `pt.y − target.y` (strict).
struct GMargins<'a> {
    a: &'a EpWord,
    t: Target,
}

impl MarginFn for GMargins<'_> {
    fn eval<P: ParamSet>(&self, p: &P) -> Result<Vec<P::N>> {
        let a = self.a;
        let one = P::N::one();
        let mut out = Vec::with_capacity(a.len() + 2);
        for (j, tail) in a.tails().iter().enumerate() {
            let s = pt_of_word(p, tail)?.coord_sum();
            out.push(match a.symbol(j) {
                Symbol::Zero => one.sub(&s),
                Symbol::One => s.sub(&one),
            });
        }
        let pt = pt_of_word(p, a)?;
        let tg = target_point(p, self.t);
        out.push(tg.x.sub(&pt.x));
        out.push(pt.y.sub(&tg.y));
        Ok(out)
    }
}

/// One checked inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    /// Tail word for orbit conditions, the witness itself for dominance.
    pub word: EpWord,
    pub kind: ConditionKind,
    pub margin: Interval,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionKind {
    /// `x + y ≤ 1` at the tail point.
    SumAtMostOne,
    /// `x + y ≥ 1` at the tail point.
    SumAtLeastOne,
    /// `pt.x < target.x`.
    LeftOf,
    /// `pt.y > target.y`.
    Above,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitConditions {
    pub word: EpWord,
    pub conditions: Vec<Condition>,
}

impl OrbitConditions {
    pub fn verdict(&self) -> Verdict {
        self.conditions.iter().fold(Verdict::Pass, |v, c| v.and(c.verdict))
    }
}

fn build(a: &EpWord, ms: Vec<Interval>) -> (OrbitConditions, [Condition; 2]) {
    let n = a.len();
    let tails = a.tails();
    let conditions = ms[..n]
        .iter()
        .enumerate()
        .map(|(j, m)| Condition {
            word: tails[j].clone(),
            kind: if a.symbol(j) == Symbol::Zero {
                ConditionKind::SumAtMostOne
            } else {
                ConditionKind::SumAtLeastOne
            },
            margin: m.clone(),
            verdict: Verdict::of(m, false),
        })
        .collect();
    let dom = |k: usize, kind| Condition {
        word: a.clone(),
        kind,
        margin: ms[k].clone(),
        verdict: Verdict::of(&ms[k], true),
    };
    (
        OrbitConditions {
            word: a.clone(),
            conditions,
        },
        [dom(n, ConditionKind::LeftOf), dom(n + 1, ConditionKind::Above)],
    )
}

/// Side conditions along the orbit of `a` (for target `T1(0,0)`; the target does not matter here).
pub fn orbit_conditions<C: Checkable>(pr: &C, a: &EpWord) -> Result<OrbitConditions> {
    Ok(build(a, pr.enclose(&GMargins { a, t: Target::T1Origin })?).0)
}

/// Strict dominance of `pt_a` over the target: left of it and above it.
pub fn below_b<C: Checkable>(pr: &C, a: &EpWord, t: Target) -> Result<[Condition; 2]> {
    Ok(build(a, pr.enclose(&GMargins { a, t })?).1)
}

/// Every check for one witness against one target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub orbit: OrbitConditions,
    pub dominance: [Condition; 2],
}

impl WitnessCheck {
    pub fn verdict(&self) -> Verdict {
        self.dominance.iter().fold(self.orbit.verdict(), |v, c| v.and(c.verdict))
    }

    /// Lower ends of all margins, in order (orbit conditions, then dominance).
    pub fn margin_lows(&self) -> Vec<Scalar> {
        self.orbit
            .conditions
            .iter()
            .chain(self.dominance.iter())
            .map(|c| c.margin.lo().clone())
            .collect()
    }
}

pub fn check_witness<C: Checkable>(pr: &C, a: &EpWord, t: Target) -> Result<WitnessCheck> {
    let (orbit, dominance) = build(a, pr.enclose(&GMargins { a, t })?);
    Ok(WitnessCheck { orbit, dominance })
}

/// A rectangle in `G` together with its evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCertificate {
    pub rect: ParamRect,
    pub word: EpWord,
    pub mirror_word: EpWord,
    /// Against `T1(0,0)` with `word`.
    pub primary: WitnessCheck,
    /// Against `T0(1,1)` with `mirror_word`.
    pub mirrored: WitnessCheck,
    /// Halving depth of the sub-rectangles the checks were run on (0 = whole rectangle).
    pub split: u32,
}

impl GCertificate {
    /// Smallest lower margin bound of each inequality over all sub-rectangles,
    /// as canonical strings: primary margins first, then mirrored.
    pub fn margin_strings(&self) -> Vec<String> {
        self.primary
            .margin_lows()
            .iter()
            .chain(self.mirrored.margin_lows().iter())
            .map(fmt_scalar)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GOutcome {
    Certified(Box<GCertificate>),
    /// Some inequality could not be decided; `failed` is set when one is false on the whole rectangle.
    Undecided { failed: bool },
}

impl GOutcome {
    pub fn certificate(&self) -> Option<&GCertificate> {
        match self {
            GOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }
}

/// Splits `r` into `4^k` equal sub-rectangles.
fn split_rect(r: &ParamRect, k: u32) -> Vec<ParamRect> {
    let n = 1i64 << k;
    let (l, m) = (r.lambda(), r.mu());
    let lw = l.width();
    let mw = m.width();
    let mut out = Vec::with_capacity((n * n) as usize);
    for i in 0..n {
        for j in 0..n {
            let l0 = l.lo() + &lw * q(i, n);
            let l1 = l.lo() + &lw * q(i + 1, n);
            let m0 = m.lo() + &mw * q(j, n);
            let m1 = m.lo() + &mw * q(j + 1, n);
            out.push(ParamRect::from_bounds(l0, l1, m0, m1).expect("sub-rectangle of a valid rect"));
        }
    }
    out
}

/// Combines per-piece checks: verdicts conjoined, each margin the hull of the pieces.
fn merge_checks(parts: Vec<WitnessCheck>) -> WitnessCheck {
    let mut it = parts.into_iter();
    let mut acc = it.next().expect("at least one piece");
    for p in it {
        for (a, b) in acc
            .orbit
            .conditions
            .iter_mut()
            .chain(acc.dominance.iter_mut())
            .zip(p.orbit.conditions.iter().chain(p.dominance.iter()))
        {
            a.margin = a.margin.hull(&b.margin);
            a.verdict = a.verdict.and(b.verdict);
        }
    }
    acc
}

/// Default number of halvings tried inside `certify_g` before giving up.
pub const DEFAULT_SPLIT: u32 = 3;

/// Certifies `rect ⊂ G` with witness `a` (and `mirror(a)` for the other corner).
///
/// The checks run on the whole rectangle first, then on `4^k` equal pieces for
/// `k = 1..=max_split` until every piece passes.
pub fn certify_g(rect: &ParamRect, a: &EpWord, max_split: u32) -> Result<GOutcome> {
    let ma = a.mirror();
    let mut failed = false;
    for k in 0..=max_split {
        let pieces = split_rect(rect, k);
        let mut prim = Vec::with_capacity(pieces.len());
        let mut mirr = Vec::with_capacity(pieces.len());
        let mut all = Verdict::Pass;
        for r in &pieces {
            let p = check_witness(r, a, Target::T1Origin)?;
            let m = check_witness(r, &ma, Target::T0Corner)?;
            all = all.and(p.verdict()).and(m.verdict());
            if all != Verdict::Pass {
                break;
            }
            prim.push(p);
            mirr.push(m);
        }
        match all {
            Verdict::Pass => {
                return Ok(GOutcome::Certified(Box::new(GCertificate {
                    rect: rect.clone(),
                    word: a.clone(),
                    mirror_word: ma,
                    primary: merge_checks(prim),
                    mirrored: merge_checks(mirr),
                    split: k,
                })))
            }
            Verdict::Fail => {
                failed = true;
                break;
            }
            Verdict::Undecided => {}
        }
    }
    Ok(GOutcome::Undecided { failed })
}

/// Exact point-level check of a witness and its mirror.
pub fn check_point(p: &Params, a: &EpWord) -> Result<Verdict> {
    let v1 = check_witness(p, a, Target::T1Origin)?.verdict();
    let v2 = check_witness(p, &a.mirror(), Target::T0Corner)?.verdict();
    Ok(v1.and(v2))
}

/// Re-checks a stored certificate from its fields alone.
pub fn verify_g(rect: &[String], word: &str, mirror_word: &str, margins: &[String], split: u32) -> Result<()> {
    let r = ParamRect::from_strings(rect)?;
    let a: EpWord = word.parse()?;
    let ma: EpWord = mirror_word.parse()?;
    if ma != a.mirror() {
        return Err(Error::Verification(format!("mirror word {ma} is not the mirror of {a}")));
    }
    let stored = margins.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()?;
    match certify_g(&r, &a, split)? {
        GOutcome::Certified(c) => {
            if c.split != split {
                return Err(Error::Verification(format!("certified at split {} not {split}", c.split)));
            }
            let fresh: Vec<Scalar> = c.primary.margin_lows().into_iter().chain(c.mirrored.margin_lows()).collect();
            if fresh != stored {
                return Err(Error::Verification("stored margins differ from recomputed margins".into()));
            }
            Ok(())
        }
        GOutcome::Undecided { .. } => Err(Error::Verification(format!("witness {a} does not certify the rectangle"))),
    }
}

/// `u(v)` words with `|u| ≤ max_prefix`, `|v| ≤ max_period`, primitive `v`, and
/// `u` not ending in the last symbol of `v` (those name the same point with a
/// shorter prefix). Ordered by total length, then lexicographically.
pub fn default_dictionary(max_prefix: usize, max_period: usize) -> Vec<EpWord> {
    let mut out = Vec::new();
    for pl in 0..=max_prefix {
        for vl in 1..=max_period {
            for v in Word::all_of_len(vl).filter(|v| v.is_primitive()) {
                for u in Word::all_of_len(pl) {
                    if let Some(&last) = u.0.last() {
                        if last == *v.0.last().unwrap() {
                            continue;
                        }
                    }
                    out.push(EpWord::new(u, v.clone()).unwrap());
                }
            }
        }
    }
    out.sort_by_key(|w| (w.len(), w.to_string()));
    out
}

/// Parses a dictionary file: one `u(v)` word per line, `#` comments allowed.
pub fn parse_dictionary(text: &str) -> Result<Vec<EpWord>> {
    let words = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.parse())
        .collect::<Result<Vec<EpWord>>>()?;
    if words.is_empty() {
        return Err(Error::Invalid("dictionary is empty".into()));
    }
    Ok(words)
}

/// Floating-point margins at a point, used only to skip hopeless words.
fn float_margins(l: f64, m: f64, a: &EpWord, t: Target) -> Vec<f64> {
    let sym = |s: Symbol| -> [f64; 4] {
        match s {
            Symbol::Zero => [l, 0.0, m, 0.0],
            Symbol::One => [m, 1.0 - m, l, 1.0 - l],
        }
    };
    let word_map = |w: &Word| -> [f64; 4] {
        w.0.iter().rev().fold([1.0, 0.0, 1.0, 0.0], |acc, s| {
            let t = sym(*s);
            [t[0] * acc[0], t[0] * acc[1] + t[1], t[2] * acc[2], t[2] * acc[3] + t[3]]
        })
    };
    let pt = |e: &EpWord| -> (f64, f64) {
        let v = word_map(e.period());
        let fp = (v[1] / (1.0 - v[0]), v[3] / (1.0 - v[2]));
        let u = word_map(e.prefix());
        (u[0] * fp.0 + u[1], u[2] * fp.1 + u[3])
    };
    let mut out: Vec<f64> = a
        .tails()
        .iter()
        .enumerate()
        .map(|(j, tail)| {
            let (x, y) = pt(tail);
            match a.symbol(j) {
                Symbol::Zero => 1.0 - x - y,
                Symbol::One => x + y - 1.0,
            }
        })
        .collect();
    let (x, y) = pt(a);
    let (tx, ty) = match t {
        Target::T1Origin => (1.0 - m, 1.0 - l),
        Target::T0Corner => (l, m),
    };
    out.push(tx - x);
    out.push(y - ty);
    out
}

/// True unless the word visibly fails at the rectangle's centre.
pub fn precheck(r: &ParamRect, a: &EpWord) -> bool {
    let (l, m) = r.center().to_f64();
    float_margins(l, m, a, Target::T1Origin).iter().all(|&v| v > -1e-9)
}

/// Dyadic cell `[i, i+1]·2^-depth × [j, j+1]·2^-depth` of the unit square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub depth: u32,
    pub i: u64,
    pub j: u64,
}

impl Cell {
    pub fn bounds(&self) -> [Scalar; 4] {
        let n = 1i64 << self.depth;
        [q(self.i as i64, n), q(self.i as i64 + 1, n), q(self.j as i64, n), q(self.j as i64 + 1, n)]
    }

    pub fn rect(&self) -> Option<ParamRect> {
        let [a, b, c, d] = self.bounds();
        ParamRect::from_bounds(a, b, c, d).ok()
    }

    pub fn children(&self) -> [Cell; 4] {
        let (i, j, d) = (self.i * 2, self.j * 2, self.depth + 1);
        [
            Cell { depth: d, i, j },
            Cell { depth: d, i, j: j + 1 },
            Cell { depth: d, i: i + 1, j },
            Cell { depth: d, i: i + 1, j: j + 1 },
        ]
    }

    /// Area of the cell inside the open parameter triangle `λ < μ < 1, λ + μ > 1`.
    pub fn area_in_region(&self) -> Scalar {
        let [l0, l1, m0, m1] = self.bounds();
        // Integrate the μ-extent of the region over λ in [l0, l1]; the lower
        // boundary max(λ, 1 − λ) has a kink at 1/2.
        let mut breaks = vec![l0.clone(), l1.clone()];
        let h = q(1, 2);
        if h > l0 && h < l1 {
            breaks.insert(1, h);
        }
        let mut area = <Scalar as Zero>::zero();
        for w in breaks.windows(2) {
            area += region_strip_area(&w[0], &w[1], &m0, &m1);
        }
        area
    }

    /// The cell overlaps the parameter triangle in positive area.
    pub fn meets_region(&self) -> bool {
        self.area_in_region().is_positive()
    }
}

/// `∫_{a}^{b} |[max(λ, 1−λ), 1] ∩ [m0, m1]| dλ` for `[a, b]` on one side of 1/2.
fn region_strip_area(a: &Scalar, b: &Scalar, m0: &Scalar, m1: &Scalar) -> Scalar {
    // On this strip the lower boundary g(λ) is linear: λ or 1 − λ.
    let upper = m1.min(&int(1)).clone();
    let g = |x: &Scalar| -> Scalar {
        if (a + b) / int(2) >= q(1, 2) {
            x.clone()
        } else {
            int(1) - x
        }
    };
    // integrand f(λ) = clamp(upper − max(g(λ), m0), 0, ..) is piecewise linear with
    // kinks where g = m0 and g = upper; integrate exactly by splitting there.
    let mut pts = vec![a.clone(), b.clone()];
    for level in [m0.clone(), upper.clone()] {
        // g(x) = level
        let x = if (a + b) / int(2) >= q(1, 2) { level.clone() } else { int(1) - &level };
        if &x > a && &x < b {
            pts.push(x);
        }
    }
    pts.sort();
    let f = |x: &Scalar| -> Scalar {
        let lo = g(x).max(m0.clone());
        let d = &upper - lo;
        if d.is_positive() {
            d
        } else {
            <Scalar as Zero>::zero()
        }
    };
    pts.windows(2)
        .map(|w| (&w[1] - &w[0]) * (f(&w[0]) + f(&w[1])) / int(2))
        .fold(<Scalar as Zero>::zero(), |acc, v| acc + v)
}

/// Area of the parameter triangle.
pub fn region_area() -> Scalar {
    q(1, 4)
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub depth: u32,
    /// Certified cells with their certificates, in cell order.
    pub certified: Vec<(Cell, GCertificate)>,
    /// Cells at the finest depth that meet the region and were not certified.
    pub undecided: Vec<Cell>,
    pub certified_area: Scalar,
}

impl SweepReport {
    pub fn coverage(&self) -> f64 {
        to_f64(&(&self.certified_area / region_area()))
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub depth: u32,
    /// Coarsest depth tried.
    pub start_depth: u32,
    pub split: u32,
    pub strategy: Strategy,
}

impl SweepOptions {
    pub fn new(depth: u32) -> Self {
        Self {
            depth,
            start_depth: 2,
            split: 0,
            strategy: Strategy::Parallel,
        }
    }
}

pub const SWEEP_DEPTH_CAP: u32 = 14;

/// Adaptive dyadic sweep of the parameter triangle.
pub fn sweep_g(dict: &[EpWord], opts: &SweepOptions) -> Result<SweepReport> {
    crate::bcurve::check_cap(opts.depth, SWEEP_DEPTH_CAP)?;
    if dict.is_empty() {
        return Err(Error::Invalid("dictionary is empty".into()));
    }
    let start = opts.start_depth.min(opts.depth);
    let n = 1u64 << start;
    let mut frontier: Vec<Cell> = (0..n)
        .flat_map(|i| (0..n).map(move |j| Cell { depth: start, i, j }))
        .filter(|c| c.meets_region())
        .collect();
    let mut certified = Vec::new();
    let mut undecided = Vec::new();
    loop {
        let results = exec::map(opts.strategy, &frontier, |c| -> Result<Option<GCertificate>> {
            let Some(r) = c.rect() else { return Ok(None) };
            for a in dict {
                if !precheck(&r, a) {
                    continue;
                }
                if let GOutcome::Certified(cert) = certify_g(&r, a, opts.split)? {
                    return Ok(Some(*cert));
                }
            }
            Ok(None)
        });
        let mut next = Vec::new();
        for (c, res) in frontier.iter().zip(results) {
            match res? {
                Some(cert) => certified.push((*c, cert)),
                None if c.depth < opts.depth => {
                    next.extend(c.children().into_iter().filter(|k| k.meets_region()))
                }
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
    let certified_area = certified
        .iter()
        .fold(<Scalar as Zero>::zero(), |acc, (c, _)| acc + c.area_in_region());
    Ok(SweepReport {
        depth: opts.depth,
        certified,
        undecided,
        certified_area,
    })
}

/// `count` random rationals strictly inside the rectangle (seeded, reproducible).
pub fn sample_points(r: &ParamRect, count: usize, seed: u64) -> Vec<Params> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let den = 1i64 << 20;
    (0..count)
        .map(|_| {
            let a: i64 = rng.gen_range(1..den);
            let b: i64 = rng.gen_range(1..den);
            let l = r.lambda().lo() + r.lambda().width() * q(a, den);
            let m = r.mu().lo() + r.mu().width() * q(b, den);
            Params::new(l, m).expect("interior point of a valid rect")
        })
        .collect()
}

/// Exact point checks of a certificate's witness at sampled interior points.
/// Returns the points that fail.
pub fn spot_check(cert: &GCertificate, count: usize, seed: u64) -> Result<Vec<Params>> {
    let mut bad = Vec::new();
    for p in sample_points(&cert.rect, count, seed) {
        if check_point(&p, &cert.word)? != Verdict::Pass {
            bad.push(p);
        }
    }
    Ok(bad)
}

/// Distinct witness words used in a sweep.
pub fn witnesses(report: &SweepReport) -> BTreeSet<String> {
    report.certified.iter().map(|(_, c)| c.word.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Params {
        Params::new(q(2, 5), q(9, 10)).unwrap()
    }

    fn w(s: &str) -> EpWord {
        s.parse().unwrap()
    }

    #[test]
    fn orbit_of_01_at_worked_example() {
        let oc = orbit_conditions(&p(), &w("(01)")).unwrap();
        assert_eq!(oc.conditions.len(), 2);
        assert_eq!(oc.conditions[0].kind, ConditionKind::SumAtMostOne);
        assert_eq!(oc.conditions[0].margin, Interval::point(int(1) - q(29, 32)));
        assert_eq!(oc.conditions[1].kind, ConditionKind::SumAtLeastOne);
        assert_eq!(oc.conditions[1].margin, Interval::point(q(35, 32) - int(1)));
        assert_eq!(oc.verdict(), Verdict::Pass);
        assert_eq!(orbit_conditions(&p(), &w("(0)")).unwrap().verdict(), Verdict::Pass);
    }

    #[test]
    fn dominance_examples() {
        let d = below_b(&p(), &w("(01)"), Target::T1Origin).unwrap();
        assert_eq!(d[0].margin, Interval::point(q(1, 10) - q(1, 16)));
        assert_eq!(d[1].margin, Interval::point(q(27, 32) - q(3, 5)));
        let m = below_b(&p(), &w("(10)"), Target::T0Corner).unwrap();
        assert_eq!(m[0].margin, Interval::point(q(2, 5) - q(5, 32)));
        assert_eq!(m[1].margin, Interval::point(q(15, 16) - q(9, 10)));
        let z = below_b(&p(), &w("(0)"), Target::T1Origin).unwrap();
        assert_eq!(z[0].verdict, Verdict::Pass);
        assert_eq!(z[1].verdict, Verdict::Fail);
    }

    #[test]
    fn rectangle_certificate() {
        let r = ParamRect::parse("3/8,7/16,7/8,15/16").unwrap();
        let out = certify_g(&r, &w("(01)"), DEFAULT_SPLIT).unwrap();
        let c = out.certificate().expect("certified");
        assert_eq!(c.mirror_word, w("(10)"));
        let pt = certify_g(&p().as_rect(), &w("(01)"), 0).unwrap();
        assert_eq!(pt.certificate().unwrap().split, 0);
        verify_g(&r.to_strings(), "(01)", "(10)", &c.margin_strings(), c.split).unwrap();
        let mut bad = c.margin_strings();
        bad[0] = "1/3".into();
        assert!(verify_g(&r.to_strings(), "(01)", "(10)", &bad, c.split).is_err());
        assert!(ParamRect::parse("1/4,1/2,1/2,3/4").is_err());
    }

    #[test]
    fn mirror_coherence() {
        let r = ParamRect::parse("3/8,7/16,7/8,15/16").unwrap();
        let a = check_witness(&r, &w("(01)"), Target::T1Origin).unwrap();
        let b = check_witness(&r, &w("(10)"), Target::T0Corner).unwrap();
        assert_eq!(a.verdict(), b.verdict());
        // exact at a point, where the margins agree up to order
        let a = check_witness(&p(), &w("(01)"), Target::T1Origin).unwrap();
        let b = check_witness(&p(), &w("(10)"), Target::T0Corner).unwrap();
        let (mut la, mut lb) = (a.margin_lows(), b.margin_lows());
        la.sort();
        lb.sort();
        assert_eq!(la, lb);
    }

    #[test]
    fn dictionary_order_and_filter() {
        let d = default_dictionary(2, 3);
        let s: Vec<String> = d.iter().take(6).map(|w| w.to_string()).collect();
        assert_eq!(s, ["(0)", "(1)", "(01)", "(10)", "0(1)", "1(0)"]);
        assert!(!d.iter().any(|w| w.to_string() == "1(01)"));
        assert!(d.iter().any(|w| w.to_string() == "0(01)"));
        assert!(!d.iter().any(|w| w.to_string() == "(0101)"));
        assert!(d.windows(2).all(|p| p[0].len() <= p[1].len()));
        assert!(parse_dictionary("# none\n").is_err());
        assert_eq!(parse_dictionary("(01) # main\n1(0)\n").unwrap().len(), 2);
    }

    #[test]
    fn float_precheck_agrees_with_exact_sign() {
        let r = ParamRect::parse("3/8,7/16,7/8,15/16").unwrap();
        assert!(precheck(&r, &w("(01)")));
        assert!(!precheck(&r, &w("(0)")));
        let fm = float_margins(0.4, 0.9, &w("(01)"), Target::T1Origin);
        assert!((fm[0] - 3.0 / 32.0).abs() < 1e-12 && (fm[2] - 0.0375).abs() < 1e-12);
    }

    #[test]
    fn cell_areas() {
        let total = (0..4u64)
            .flat_map(|i| (0..4u64).map(move |j| Cell { depth: 2, i, j }))
            .fold(<Scalar as Zero>::zero(), |a, c| a + c.area_in_region());
        assert_eq!(total, region_area());
        let c = Cell { depth: 1, i: 0, j: 1 };
        assert_eq!(c.area_in_region(), q(1, 8));
        assert!(c.rect().is_none());
        assert!(!Cell { depth: 1, i: 0, j: 0 }.meets_region());
    }

    #[test]
    fn small_sweep() {
        let dict = default_dictionary(1, 3);
        let mut o = SweepOptions::new(4);
        o.strategy = Strategy::Sequential;
        let rep = sweep_g(&dict, &o).unwrap();
        assert!(rep.coverage() > 0.0 && rep.coverage() <= 1.0);
        let par = sweep_g(&dict, &SweepOptions::new(4)).unwrap();
        assert_eq!(rep.certified.len(), par.certified.len());
        assert_eq!(rep.undecided, par.undecided);
        let hit = rep.certified.iter().find(|(_, c)| c.rect.contains(&p()));
        assert!(hit.is_some());
        for (_, c) in &rep.certified {
            assert!(spot_check(c, 3, 7).unwrap().is_empty());
        }
    }
}
