//! Rigorous enclosures of `ln` and `exp` with dyadic endpoints.
//!
//! Truncation and rounding errors are bounded explicitly and added before the
//! endpoints are rounded outward.

use num_traits::{One, Signed, Zero};

use crate::arith::{ceil_dyadic, floor_dyadic, int, q, Interval, Scalar};
use crate::error::{Error, Result};

/// Working precision in bits for endpoint rounding.
pub const PREC: u32 = 160;

fn out(lo: &Scalar, hi: &Scalar, bits: u32) -> Interval {
    Interval::new(floor_dyadic(lo, bits), ceil_dyadic(hi, bits)).expect("ordered")
}

/// `2·atanh(z)` for `|z| ≤ 1/3`, enclosed.
fn two_atanh(z: &Scalar, bits: u32) -> Interval {
    let z2 = z * z;
    let mut term = z.clone(); // z^{2k+1}
    let mut sum = Scalar::zero();
    let eps = Scalar::new(1.into(), num_bigint::BigInt::one() << (bits + 4));
    let mut k = 0i64;
    loop {
        sum += &term / int(2 * k + 1);
        term = &term * &z2;
        k += 1;
        // remaining tail: |Σ_{j≥k} z^{2j+1}/(2j+1)| ≤ |z|^{2k+1} / ((2k+1)(1 − z²))
        let tail = term.abs() / (int(2 * k + 1) * (int(1) - &z2));
        if tail < eps || term.is_zero() {
            let two = int(2);
            return out(&(&two * (&sum - &tail)), &(&two * (&sum + &tail)), bits);
        }
    }
}

/// Enclosure of `ln 2 = 2·atanh(1/3)`.
pub fn ln2(bits: u32) -> Interval {
    two_atanh(&q(1, 3), bits)
}

/// Enclosure of `ln x` for rational `x > 0`.
pub fn ln(x: &Scalar, bits: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::Invalid(format!("ln of non-positive {x}")));
    }
    // x = 2^k · r with r in [1/2, 1]
    let mut r = x.clone();
    let mut k = 0i64;
    let half = q(1, 2);
    let one = int(1);
    while r > one {
        r /= int(2);
        k += 1;
    }
    while r < half {
        r *= int(2);
        k -= 1;
    }
    let z = (&r - &one) / (&r + &one); // in [-1/3, 0]
    let lr = two_atanh(&z, bits + 8);
    let l2 = ln2(bits + 8 + 64);
    let kk = Interval::point(int(k));
    let v = &(&kk * &l2) + &lr;
    Ok(out(v.lo(), v.hi(), bits))
}

/// Enclosure of `exp(y)` for rational `y`.
pub fn exp_point(y: &Scalar, bits: u32) -> Interval {
    if y.is_zero() {
        return Interval::point(int(1));
    }
    // reduce to |y / 2^m| ≤ 1/2, then square m times
    let mut m = 0u32;
    let mut t = y.clone();
    let half = q(1, 2);
    while t.abs() > half {
        t /= int(2);
        m += 1;
    }
    let wb = bits + 2 * m + 16;
    let t = floor_dyadic(&t, wb + 8);
    let t_err = Interval::new(<Scalar as Zero>::zero(), ceil_dyadic(&(y / pow2(m) - &t), wb + 8)).expect("floor");
    let ulp = Scalar::new(1.into(), num_bigint::BigInt::one() << wb);
    let mut sum = Scalar::zero();
    let mut term = int(1);
    let mut n = 0i64;
    // each rounded term is off by at most one ulp, and older errors shrink by |t|/k < 1
    let mut rounding = Scalar::zero();
    let tail = loop {
        sum += &term;
        n += 1;
        term = floor_dyadic(&(&term * &t / int(n)), wb);
        rounding += &ulp * int(2);
        // Σ_{j≥n} |t|^j/j! ≤ |t^n/n!| / (1 − |t|/(n+1))
        let bound = (term.abs() + &ulp * int(2)) / (int(1) - t.abs() / int(n + 1));
        if term.abs() < ulp {
            break bound + rounding;
        }
    };
    // exp(t + δ) with 0 ≤ δ ≤ t_err.hi: factor in [1, 1 + 2δ] for δ ≤ 1/2
    let grow = Interval::new(int(1), int(1) + t_err.hi() * int(2)).expect("ordered");
    let mut e = &out(&(&sum - &tail), &(&sum + &tail), wb) * &grow;
    e = out(e.lo(), e.hi(), wb);
    for _ in 0..m {
        let sq = &e * &e;
        e = out(sq.lo(), sq.hi(), wb);
    }
    out(e.lo(), e.hi(), bits)
}

fn pow2(m: u32) -> Scalar {
    Scalar::from_integer(num_bigint::BigInt::one() << m)
}

/// Enclosure of `exp` over an interval (monotone, so the endpoints suffice).
pub fn exp(y: &Interval, bits: u32) -> Interval {
    let lo = exp_point(y.lo(), bits);
    let hi = exp_point(y.hi(), bits);
    Interval::new(lo.lo().clone(), hi.hi().clone()).expect("exp is increasing")
}

/// Enclosure of `b^t` for rational `b > 0` and rational `t`.
pub fn pow_rational(b: &Scalar, t: &Scalar, bits: u32) -> Result<Interval> {
    if t.is_zero() {
        return Ok(Interval::point(int(1)));
    }
    if b.is_one() {
        return Ok(Interval::point(int(1)));
    }
    let l = ln(b, bits + 32)?;
    Ok(exp(&l.scale(t), bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::to_f64;

    fn close(i: &Interval, v: f64, tol: f64) -> bool {
        let (lo, hi) = i.to_f64_pair();
        lo <= v + tol && hi >= v - tol && hi - lo < tol
    }

    #[test]
    fn log_values() {
        assert!(close(&ln2(100), std::f64::consts::LN_2, 1e-15));
        assert!(close(&ln(&q(2, 5), 100).unwrap(), (0.4f64).ln(), 1e-15));
        assert!(close(&ln(&q(9, 25), 100).unwrap(), (0.36f64).ln(), 1e-15));
        assert!(close(&ln(&int(10), 100).unwrap(), (10f64).ln(), 1e-14));
        assert_eq!(ln(&int(1), 64).unwrap().width(), Scalar::zero());
        assert!(ln(&int(0), 64).is_err());
    }

    #[test]
    fn exp_values() {
        assert!(close(&exp_point(&int(1), 100), std::f64::consts::E, 1e-15));
        assert!(close(&exp_point(&q(-37, 10), 100), (-3.7f64).exp(), 1e-17));
        assert_eq!(exp_point(&int(0), 64), Interval::point(int(1)));
    }

    #[test]
    fn powers() {
        let p = pow_rational(&q(2, 5), &q(1, 2), 120).unwrap();
        assert!(close(&p, (0.4f64).sqrt(), 1e-15));
        // (1/4)^(1/2) = 1/2 exactly must be inside the enclosure
        let h = pow_rational(&q(1, 4), &q(1, 2), 120).unwrap();
        assert!(h.contains(&q(1, 2)));
        assert!(to_f64(&h.width()) < 1e-30);
        let c = pow_rational(&q(8, 27), &q(2, 3), 120).unwrap();
        assert!(c.contains(&q(4, 9)));
    }
}
