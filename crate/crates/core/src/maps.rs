//! The maps `T0(x, y) = (λx, μy)` and `T1(x, y) = (μx + 1 − μ, λy + 1 − λ)`,
//! binary words, their compositions and limit points.
//!
//! Everything is generic over [`Num`] so the same code runs on exact
//! rationals (a single parameter pair) and on rational intervals (a whole
//! parameter rectangle).

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_scalar, int, parse_scalar, Interval, Scalar};
use crate::error::{Error, Result};

/// Minimal ring-with-division interface shared by [`Scalar`] and [`Interval`].
pub trait Num: Clone + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn from_scalar(x: &Scalar) -> Self;
    /// Enclosing interval of the value (a point for exact scalars).
    fn enclosure(&self) -> Interval;
}

impl Num for Scalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        Ok(self / rhs)
    }
    fn from_scalar(x: &Scalar) -> Self {
        x.clone()
    }
    fn enclosure(&self) -> Interval {
        Interval::point(self.clone())
    }
}

impl Num for Interval {
    fn zero() -> Self {
        Interval::point(<Scalar as Zero>::zero())
    }
    fn one() -> Self {
        Interval::point(<Scalar as One>::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        Interval::div(self, rhs)
    }
    fn from_scalar(x: &Scalar) -> Self {
        Interval::point(x.clone())
    }
    fn enclosure(&self) -> Interval {
        self.clone()
    }
}

/// A parameter pair with `0 < λ < μ < 1` and `λ + μ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    lambda: Scalar,
    mu: Scalar,
}

impl Params {
    pub fn new(lambda: Scalar, mu: Scalar) -> Result<Self> {
        let zero = <Scalar as Zero>::zero();
        let one = <Scalar as One>::one();
        if !(zero < lambda && lambda < mu && mu < one && &lambda + &mu > one) {
            return Err(Error::OutsideRegion(format!("lambda={lambda}, mu={mu}")));
        }
        Ok(Self { lambda, mu })
    }

    pub fn parse(lambda: &str, mu: &str) -> Result<Self> {
        Self::new(parse_scalar(lambda)?, parse_scalar(mu)?)
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn mu(&self) -> &Scalar {
        &self.mu
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (crate::arith::to_f64(&self.lambda), crate::arith::to_f64(&self.mu))
    }

    pub fn as_rect(&self) -> ParamRect {
        ParamRect {
            lambda: Interval::point(self.lambda.clone()),
            mu: Interval::point(self.mu.clone()),
        }
    }
}

/// A rectangle of parameter pairs, every point of which is a valid [`Params`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamRect {
    lambda: Interval,
    mu: Interval,
}

impl ParamRect {
    pub fn new(lambda: Interval, mu: Interval) -> Result<Self> {
        let zero = <Scalar as Zero>::zero();
        let one = <Scalar as One>::one();
        let ok = lambda.lo() > &zero
            && lambda.hi() < mu.lo()
            && mu.hi() < &one
            && lambda.lo() + mu.lo() > one;
        if !ok {
            return Err(Error::OutsideRegion(format!(
                "rect lambda={lambda:?}, mu={mu:?}"
            )));
        }
        Ok(Self { lambda, mu })
    }

    pub fn from_bounds(l_lo: Scalar, l_hi: Scalar, m_lo: Scalar, m_hi: Scalar) -> Result<Self> {
        Self::new(Interval::new(l_lo, l_hi)?, Interval::new(m_lo, m_hi)?)
    }

    /// Parses `"l_lo,l_hi,m_lo,m_hi"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<_> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "rect needs 4 comma-separated rationals, got {s:?}"
            )));
        }
        let v = parts
            .iter()
            .map(|p| parse_scalar(p))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [Scalar; 4] = v.try_into().unwrap();
        Self::from_bounds(a, b, c, d)
    }

    pub fn lambda(&self) -> &Interval {
        &self.lambda
    }

    pub fn mu(&self) -> &Interval {
        &self.mu
    }

    /// Bounds as canonical rational strings `[l_lo, l_hi, m_lo, m_hi]`.
    pub fn to_strings(&self) -> [String; 4] {
        [
            fmt_scalar(self.lambda.lo()),
            fmt_scalar(self.lambda.hi()),
            fmt_scalar(self.mu.lo()),
            fmt_scalar(self.mu.hi()),
        ]
    }

    pub fn from_strings(s: &[String]) -> Result<Self> {
        if s.len() != 4 {
            return Err(Error::Parse("rect needs 4 bounds".into()));
        }
        Self::from_bounds(
            parse_scalar(&s[0])?,
            parse_scalar(&s[1])?,
            parse_scalar(&s[2])?,
            parse_scalar(&s[3])?,
        )
    }

    pub fn center(&self) -> Params {
        // The centre of a valid rectangle is valid: the region is convex.
        Params::new(self.lambda.mid(), self.mu.mid()).expect("center of valid rect")
    }

    pub fn contains(&self, p: &Params) -> bool {
        self.lambda.contains(p.lambda()) && self.mu.contains(p.mu())
    }

    pub fn area(&self) -> Scalar {
        self.lambda.width() * self.mu.width()
    }
}

/// Anything that can supply `λ` and `μ` in some number type.
pub trait ParamSet: Sync {
    type N: Num;
    fn lambda_n(&self) -> Self::N;
    fn mu_n(&self) -> Self::N;
}

impl ParamSet for Params {
    type N = Scalar;
    fn lambda_n(&self) -> Scalar {
        self.lambda.clone()
    }
    fn mu_n(&self) -> Scalar {
        self.mu.clone()
    }
}

impl ParamSet for ParamRect {
    type N = Interval;
    fn lambda_n(&self) -> Interval {
        self.lambda.clone()
    }
    fn mu_n(&self) -> Interval {
        self.mu.clone()
    }
}

/// Binary symbol indexing `T0` / `T1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Zero,
    One,
}

impl Symbol {
    pub fn flip(self) -> Symbol {
        match self {
            Symbol::Zero => Symbol::One,
            Symbol::One => Symbol::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
        }
    }

    fn from_char(c: char) -> Result<Symbol> {
        match c {
            '0' => Ok(Symbol::Zero),
            '1' => Ok(Symbol::One),
            _ => Err(Error::Parse(format!("not a binary symbol: {c:?}"))),
        }
    }
}

/// Finite binary word; the leftmost symbol is the outermost map.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, s: Symbol) -> usize {
        self.0.iter().filter(|&&c| c == s).count()
    }

    pub fn mirror(&self) -> Word {
        Word(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// True if the word is not a proper power of a shorter word.
    pub fn is_primitive(&self) -> bool {
        let n = self.len();
        (1..n).filter(|d| n % d == 0).all(|d| self.0[..d].repeat(n / d) != self.0)
    }

    /// Every binary word of exactly `len` symbols, in lexicographic order.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = Word> {
        (0..1u64 << len).map(move |bits| {
            Word((0..len)
                .map(|i| {
                    if bits >> (len - 1 - i) & 1 == 1 {
                        Symbol::One
                    } else {
                        Symbol::Zero
                    }
                })
                .collect())
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        s.trim().chars().map(Symbol::from_char).collect::<Result<Vec<_>>>().map(Word)
    }
}

/// Eventually periodic word `u·v^∞` with a nonempty period.
///
/// Stored verbatim; `"1(0)"` and `"10(0)"` are different values even though
/// they name the same infinite word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpWord {
    prefix: Word,
    period: Word,
}

impl EpWord {
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Invalid("eventually periodic word needs a nonempty period".into()));
        }
        Ok(Self { prefix, period })
    }

    pub fn periodic(period: Word) -> Result<Self> {
        Self::new(Word::default(), period)
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// Total stored length `|u| + |v|`.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Symbol at position `i` (0-based) of the infinite word.
    pub fn symbol(&self, i: usize) -> Symbol {
        if i < self.prefix.len() {
            self.prefix.0[i]
        } else {
            let j = (i - self.prefix.len()) % self.period.len();
            self.period.0[j]
        }
    }

    /// The shift `σ^k`, in the form `u' (v')` with `u'` a suffix of `u` or empty.
    pub fn shift(&self, k: usize) -> EpWord {
        if k < self.prefix.len() {
            EpWord {
                prefix: Word(self.prefix.0[k..].to_vec()),
                period: self.period.clone(),
            }
        } else {
            let j = (k - self.prefix.len()) % self.period.len();
            let mut v = self.period.0[j..].to_vec();
            v.extend_from_slice(&self.period.0[..j]);
            EpWord {
                prefix: Word::default(),
                period: Word(v),
            }
        }
    }

    /// All tails `σ^k a` for `k < |u| + |v|`; this covers every distinct shift.
    pub fn tails(&self) -> Vec<EpWord> {
        (0..self.len()).map(|k| self.shift(k)).collect()
    }

    pub fn mirror(&self) -> EpWord {
        EpWord {
            prefix: self.prefix.mirror(),
            period: self.period.mirror(),
        }
    }
}

impl fmt::Display for EpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.prefix, self.period)
    }
}

impl FromStr for EpWord {
    type Err = Error;
    /// Parses `"u(v)"`, e.g. `"(01)"` or `"1(0)"`.
    fn from_str(s: &str) -> Result<EpWord> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected u(v) form, got {s:?}"));
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') || s[open + 1..s.len() - 1].contains(['(', ')']) {
            return Err(bad());
        }
        let prefix: Word = s[..open].parse()?;
        let period: Word = s[open + 1..s.len() - 1].parse()?;
        EpWord::new(prefix, period)
    }
}

impl Serialize for EpWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for EpWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point<T = Scalar> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }
}

impl Point<Scalar> {
    pub fn sum(&self) -> Scalar {
        &self.x + &self.y
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (crate::arith::to_f64(&self.x), crate::arith::to_f64(&self.y))
    }
}

impl<T: Num> Point<T> {
    pub fn coord_sum(&self) -> T {
        self.x.add(&self.y)
    }
}

/// The involution `(x, y) ↦ (1 − y, 1 − x)`, which conjugates `T0` and `T1`.
pub fn mirror_point<T: Num>(p: &Point<T>) -> Point<T> {
    let one = T::one();
    Point::new(one.sub(&p.y), one.sub(&p.x))
}

/// `(x, y) ↦ (ax·x + ex, dy·y + fy)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagAffineMap<T = Scalar> {
    pub ax: T,
    pub ex: T,
    pub dy: T,
    pub fy: T,
}

impl<T: Num> DiagAffineMap<T> {
    pub fn new(ax: T, ex: T, dy: T, fy: T) -> Self {
        Self { ax, ex, dy, fy }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::one(), T::zero())
    }

    pub fn apply(&self, p: &Point<T>) -> Point<T> {
        Point::new(
            self.ax.mul(&p.x).add(&self.ex),
            self.dy.mul(&p.y).add(&self.fy),
        )
    }

    /// `self ∘ inner`: applies `inner` first.
    pub fn compose(&self, inner: &DiagAffineMap<T>) -> DiagAffineMap<T> {
        DiagAffineMap {
            ax: self.ax.mul(&inner.ax),
            ex: self.ax.mul(&inner.ex).add(&self.ex),
            dy: self.dy.mul(&inner.dy),
            fy: self.dy.mul(&inner.fy).add(&self.fy),
        }
    }

    /// The unique fixed point `(ex / (1 − ax), fy / (1 − dy))`.
    pub fn fixed_point(&self) -> Result<Point<T>> {
        let one = T::one();
        let x = self.ex.div(&one.sub(&self.ax)).map_err(|_| Error::NotContracting)?;
        let y = self.fy.div(&one.sub(&self.dy)).map_err(|_| Error::NotContracting)?;
        Ok(Point::new(x, y))
    }
}

impl DiagAffineMap<Scalar> {
    pub fn to_f64(&self) -> [f64; 4] {
        use crate::arith::to_f64;
        [to_f64(&self.ax), to_f64(&self.ex), to_f64(&self.dy), to_f64(&self.fy)]
    }

    /// Strict contraction with positive scales on both axes.
    pub fn is_contracting(&self) -> bool {
        let zero = <Scalar as Zero>::zero();
        let one = <Scalar as One>::one();
        zero < self.ax && self.ax < one && zero < self.dy && self.dy < one
    }
}

/// `T0` or `T1` for the given parameters.
pub fn map_for_symbol<P: ParamSet>(p: &P, s: Symbol) -> DiagAffineMap<P::N> {
    let l = p.lambda_n();
    let m = p.mu_n();
    match s {
        Symbol::Zero => DiagAffineMap::new(l, P::N::zero(), m, P::N::zero()),
        Symbol::One => {
            let one = P::N::one();
            let ex = one.sub(&m);
            let fy = one.sub(&l);
            DiagAffineMap::new(m, ex, l, fy)
        }
    }
}

/// `T_{w1} ∘ T_{w2} ∘ … ∘ T_{wn}`; the empty word maps to the identity.
pub fn word_map<P: ParamSet>(p: &P, w: &Word) -> DiagAffineMap<P::N> {
    let t0 = map_for_symbol(p, Symbol::Zero);
    let t1 = map_for_symbol(p, Symbol::One);
    w.0.iter().rev().fold(DiagAffineMap::identity(), |acc, s| {
        let t = if *s == Symbol::Zero { &t0 } else { &t1 };
        t.compose(&acc)
    })
}

/// `word_map` restricted to nonempty words, as a checked operation.
pub fn word_map_nonempty<P: ParamSet>(p: &P, w: &Word) -> Result<DiagAffineMap<P::N>> {
    if w.is_empty() {
        return Err(Error::Invalid("word_map needs a nonempty word".into()));
    }
    Ok(word_map(p, w))
}

/// The limit point `pt_a = T_u(fixed point of T_v)` for `a = u·v^∞`.
///
/// Over a [`ParamRect`] the result encloses `pt_a` for every parameter in it.
pub fn pt_of_word<P: ParamSet>(p: &P, a: &EpWord) -> Result<Point<P::N>> {
    let fp = word_map(p, a.period()).fixed_point()?;
    Ok(word_map(p, a.prefix()).apply(&fp))
}

/// Axis scales `(λ^{#0} μ^{#1}, μ^{#0} λ^{#1})` of `T_w`.
pub fn axis_scales<P: ParamSet>(p: &P, w: &Word) -> (P::N, P::N) {
    let l = p.lambda_n();
    let m = p.mu_n();
    let z = w.count(Symbol::Zero) as u32;
    let o = w.count(Symbol::One) as u32;
    let pw = |b: &P::N, e: u32| (0..e).fold(P::N::one(), |acc, _| acc.mul(b));
    let a = pw(&l, z).mul(&pw(&m, o));
    let b = pw(&m, z).mul(&pw(&l, o));
    (a, b)
}

pub fn half() -> Scalar {
    crate::arith::q(1, 2)
}

pub fn two() -> Scalar {
    int(2)
}
