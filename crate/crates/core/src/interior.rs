//! The non-empty interior predicate for commuting linear parts.
//!
//! Thresholds of the form `|det| ≥ 1/√2` are squared into `2·det² ≥ 1`, so every
//! test is an exact rational comparison.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, to_f64, Scalar};
use crate::certify::{Cell, Verdict};
use crate::error::Result;
use crate::exec::{self, Strategy};
use crate::maps::Params;

/// `[[a, b], [c, d]]`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl Matrix2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        Self { a, b, c, d }
    }

    pub fn diag(x: Scalar, y: Scalar) -> Self {
        Self::new(x, Scalar::zero(), Scalar::zero(), y)
    }

    /// `r · [[cos, −sin], [sin, cos]]` for a rational point `(cos, sin)` on the circle.
    pub fn scaled_rotation(r: &Scalar, cos: &Scalar, sin: &Scalar) -> Self {
        Self::new(r * cos, -(r * sin), r * sin, r * cos)
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        Matrix2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn det(&self) -> Scalar {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Scalar {
        &self.a + &self.d
    }

    /// Equal diagonal entries and zero off-diagonal entries.
    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Spectral radius `< 1`, by the Jury conditions on `z² − tr·z + det`.
    pub fn is_contraction(&self) -> bool {
        let det = self.det();
        let one = Scalar::one();
        det.abs() < one && self.trace().abs() < one + det
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InteriorCase {
    NonScalar,
    Scalar,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorVerdict {
    pub case: InteriorCase,
    /// The determinant compared with `1/√2` (absent when not applicable).
    pub det: Option<Scalar>,
    /// `2·det² ≥ 1`.
    pub holds: bool,
    pub witness: Vec<&'static str>,
    /// Both linear parts have spectral radius `< 1` (reported only).
    pub contracting: bool,
}

impl InteriorVerdict {
    /// Interior is non-empty by the commuting-matrix theorem.
    pub fn is_true(&self) -> bool {
        self.holds && self.case != InteriorCase::NotApplicable
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "case": self.case,
            "det": self.det.as_ref().map(|d| d.to_string()),
            "det_f64": self.det.as_ref().map(to_f64),
            "verdict": self.is_true(),
            "witness": self.witness,
            "contracting": self.contracting,
        })
    }
}

fn threshold(det: &Scalar) -> bool {
    int(2) * det * det >= Scalar::one()
}

/// The theorem for `T0 x = M0 x`, `T1 x = M1 x + u`; `u` does not enter the test.
pub fn interior_general(m0: &Matrix2, m1: &Matrix2, _u: (&Scalar, &Scalar)) -> InteriorVerdict {
    let contracting = m0.is_contraction() && m1.is_contraction();
    let m = m0.mul(m1);
    if m != m1.mul(m0) {
        return InteriorVerdict {
            case: InteriorCase::NotApplicable,
            det: None,
            holds: false,
            witness: Vec::new(),
            contracting,
        };
    }
    if !m.is_scalar() {
        let det = m.det();
        InteriorVerdict {
            case: InteriorCase::NonScalar,
            holds: threshold(&det),
            det: Some(det),
            witness: vec!["01", "10"],
            contracting,
        }
    } else {
        let det = m0.mul(m0).mul(m1).det();
        InteriorVerdict {
            case: InteriorCase::Scalar,
            holds: threshold(&det),
            det: Some(det),
            witness: vec!["010", "001"],
            contracting,
        }
    }
}

/// Diagonal family: non-empty interior when `2·(λμ)⁶ ≥ 1`, i.e. `λμ ≥ 2^{−1/6}`.
pub fn interior_diag(p: &Params) -> InteriorVerdict {
    let lm = p.lambda() * p.mu();
    let det = &lm * &lm * &lm;
    InteriorVerdict {
        case: InteriorCase::Scalar,
        holds: threshold(&det),
        det: Some(det),
        witness: vec!["010", "001"],
        contracting: true,
    }
}

/// The linear parts of the diagonal family.
pub fn diag_matrices(p: &Params) -> (Matrix2, Matrix2) {
    (
        Matrix2::diag(p.lambda().clone(), p.mu().clone()),
        Matrix2::diag(p.mu().clone(), p.lambda().clone()),
    )
}

/// `2·(λμ)⁶ ≥ 1` for a given product `λμ`.
pub fn holds_for_product(lm: &Scalar) -> bool {
    threshold(&(lm * lm * lm))
}

/// The predicate over a whole cell: PASS if it holds at the lower-left corner
/// (so everywhere, as `λμ` increases), FAIL if it fails at the upper-right corner.
pub fn interior_cell(c: &Cell) -> Verdict {
    let [l0, l1, m0, m1] = c.bounds();
    if holds_for_product(&(l0 * m0)) {
        Verdict::Pass
    } else if !holds_for_product(&(l1 * m1)) {
        Verdict::Fail
    } else {
        Verdict::Undecided
    }
}

#[derive(Clone, Debug)]
pub struct InteriorSweep {
    pub depth: u32,
    /// Every cell of the grid meeting the parameter region, with its verdict.
    pub cells: Vec<(Cell, Verdict)>,
    pub interior_area: Scalar,
}

impl InteriorSweep {
    pub fn coverage(&self) -> f64 {
        to_f64(&(&self.interior_area / crate::certify::region_area()))
    }
}

pub const INTERIOR_DEPTH_CAP: u32 = 12;

/// Classify every dyadic cell of depth `depth`.
pub fn sweep_interior(depth: u32, strategy: Strategy) -> Result<InteriorSweep> {
    crate::bcurve::check_cap(depth, INTERIOR_DEPTH_CAP)?;
    let n = 1u64 << depth;
    let cells: Vec<Cell> = (0..n)
        .flat_map(|i| (0..n).map(move |j| Cell { depth, i, j }))
        .filter(|c| c.meets_region())
        .collect();
    let verdicts = exec::map(strategy, &cells, interior_cell);
    let cells: Vec<(Cell, Verdict)> = cells.into_iter().zip(verdicts).collect();
    let interior_area = cells
        .iter()
        .filter(|(_, v)| *v == Verdict::Pass)
        .fold(Scalar::zero(), |acc, (c, _)| acc + c.area_in_region());
    Ok(InteriorSweep {
        depth,
        cells,
        interior_area,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn diag_examples() {
        let v = interior_diag(&Params::new(q(19, 20), q(24, 25)).unwrap());
        assert!(v.is_true());
        assert_eq!(v.witness, ["010", "001"]);
        assert!(!interior_diag(&Params::new(q(2, 5), q(9, 10)).unwrap()).is_true());
        // equality counts
        assert!(threshold(&Scalar::new(1.into(), 1.into()) ) );
        assert!(!threshold(&q(7, 10)));
        assert!(threshold(&q(71, 100)));
    }

    #[test]
    fn general_agrees_with_diag() {
        for p in [Params::new(q(19, 20), q(24, 25)).unwrap(), Params::new(q(2, 5), q(9, 10)).unwrap()] {
            let (m0, m1) = diag_matrices(&p);
            let g = interior_general(&m0, &m1, (&q(1, 2), &q(1, 2)));
            assert_eq!(g.case, InteriorCase::Scalar);
            assert_eq!(g.is_true(), interior_diag(&p).is_true());
            assert_eq!(g.det, interior_diag(&p).det);
            assert!(g.contracting);
        }
    }

    #[test]
    fn rotations_and_shears() {
        let (c, s) = (q(3, 5), q(4, 5));
        let rot = Matrix2::scaled_rotation(&int(1), &c, &s);
        let shear = Matrix2::new(int(1), q(1, 2), int(0), int(1));
        let u = (&int(0), &int(0));
        assert_eq!(interior_general(&rot, &shear, u).case, InteriorCase::NotApplicable);
        assert!(!interior_general(&rot, &shear, u).is_true());
        for (r, expect) in [(q(19, 20), true), (q(9, 10), false)] {
            let m = Matrix2::scaled_rotation(&r, &c, &s);
            let v = interior_general(&m, &m, u);
            assert_eq!(v.case, InteriorCase::NonScalar);
            assert_eq!(v.det, Some(r.pow(4)));
            assert_eq!(v.is_true(), expect);
        }
        assert!(!Matrix2::diag(int(1), q(1, 2)).is_contraction());
        assert!(Matrix2::scaled_rotation(&q(9, 10), &c, &s).is_contraction());
    }

    #[test]
    fn cells() {
        let s = sweep_interior(6, Strategy::Sequential).unwrap();
        assert!(s.cells.iter().any(|(_, v)| *v == Verdict::Pass));
        assert!(s.cells.iter().any(|(_, v)| *v == Verdict::Undecided));
        let p = sweep_interior(6, Strategy::Parallel).unwrap();
        assert_eq!(s.cells, p.cells);
        assert!(s.coverage() > 0.0 && s.coverage() < 0.2);
    }
}
