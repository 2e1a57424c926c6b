//! Certified rational enclosures of the field generator 2cos(2pi/n).
//!
//! The enclosure is a dyadic interval [lo, hi] with a verified sign change
//! of the minimal polynomial at the endpoints, refined by Newton steps that
//! are re-certified with exact rational evaluations. All interval arithmetic
//! downstream inherits rigor from this bracket.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::minpoly::MinPoly;

#[derive(Debug, Clone)]
pub struct GenInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Guaranteed: hi - lo <= 2^-bits.
    pub bits: u32,
}

fn dyadic(num: i64, bits: u32) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::one() << bits)
}

/// Truncate a rational to a dyadic with denominator 2^bits (round toward -inf).
fn truncate(x: &BigRational, bits: u32) -> BigRational {
    let scaled = x * BigRational::from_integer(BigInt::one() << bits);
    BigRational::new(scaled.floor().to_integer(), BigInt::one() << bits)
}

/// Initial certified bracket from the f64 cosine.
pub fn initial_bracket(poly: &MinPoly) -> GenInterval {
    let n = poly.n();
    let g = 2.0 * (2.0 * std::f64::consts::PI / n as f64).cos();
    // 2^-30-wide window around the f64 seed, then widen until the sign changes.
    let bits = 30u32;
    let centre = truncate(
        &BigRational::new(
            BigInt::from((g * (1u64 << 40) as f64) as i128),
            BigInt::from(1u64 << 40),
        ),
        40,
    );
    let mut half = dyadic(1, bits);
    loop {
        let lo = &centre - &half;
        let hi = &centre + &half;
        let flo = poly.eval_rational(&lo);
        let fhi = poly.eval_rational(&hi);
        if flo.is_zero() || fhi.is_zero() {
            // Landed on the root exactly (possible for n = 3, 4, 6).
            let root = if flo.is_zero() { lo } else { hi };
            return GenInterval {
                lo: root.clone(),
                hi: root,
                bits: u32::MAX,
            };
        }
        if (flo.is_negative()) != (fhi.is_negative()) {
            return GenInterval { lo, hi, bits: 29 };
        }
        half = &half + &half;
        assert!(
            half < BigRational::from_integer(BigInt::one()),
            "failed to bracket generator for n = {n}"
        );
    }
}

/// Refine the bracket until hi - lo <= 2^-target_bits. Progress is guaranteed
/// by bisection; certified Newton leaps provide the quadratic fast path.
pub fn refine(poly: &MinPoly, iv: &GenInterval, target_bits: u32) -> GenInterval {
    if iv.bits >= target_bits {
        return iv.clone();
    }
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let mut flo_neg = poly.eval_rational(&lo).is_negative();
    let target = BigRational::new(BigInt::one(), BigInt::one() << target_bits);
    let mut est_bits = iv.bits.max(1);
    while &hi - &lo > target {
        // Certified Newton leap: step from the midpoint, then verify a sign
        // change across a tight window around the Newton iterate.
        let next_bits = est_bits
            .saturating_mul(2)
            .clamp(est_bits + 8, target_bits + 6);
        let mid = truncate(
            &((&lo + &hi) / BigRational::from_integer(BigInt::from(2))),
            next_bits + 4,
        );
        let deriv = poly.eval_derivative(&mid);
        let mut leapt = false;
        if !deriv.is_zero() {
            let newton = &mid - poly.eval_rational(&mid) / deriv;
            let step = BigRational::new(BigInt::one(), BigInt::one() << next_bits);
            let cand_lo = truncate(&(&newton - &step), next_bits + 4);
            let cand_hi = truncate(&(&newton + &step + &step), next_bits + 4);
            if cand_lo > lo && cand_hi < hi {
                let f_cl = poly.eval_rational(&cand_lo);
                let f_ch = poly.eval_rational(&cand_hi);
                if !f_cl.is_zero()
                    && !f_ch.is_zero()
                    && f_cl.is_negative() != f_ch.is_negative()
                {
                    lo = cand_lo;
                    hi = cand_hi;
                    flo_neg = f_cl.is_negative();
                    est_bits = next_bits.saturating_sub(2);
                    leapt = true;
                }
            }
        }
        if !leapt {
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            let fmid = poly.eval_rational(&mid);
            if fmid.is_zero() {
                return GenInterval {
                    lo: mid.clone(),
                    hi: mid,
                    bits: u32::MAX,
                };
            }
            if fmid.is_negative() == flo_neg {
                lo = mid;
            } else {
                hi = mid;
            }
            est_bits += 1;
        }
    }
    GenInterval {
        lo,
        hi,
        bits: target_bits,
    }
}
