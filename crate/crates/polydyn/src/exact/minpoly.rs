//! Minimal polynomials of 2cos(2pi/n) over the rationals.
//!
//! The generator of the coordinate field for a regular-polygon map is
//! c = 2cos(2pi/n). Its minimal polynomial is obtained from the n-th
//! cyclotomic polynomial: for n >= 3, Phi_n is palindromic of degree
//! phi(n), and Phi_n(z)/z^(phi(n)/2) rewrites as a monic integer
//! polynomial of degree phi(n)/2 in the variable x = z + 1/z.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Monic minimal polynomial of 2cos(2pi/n), coefficients low-to-high.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPoly {
    n: u32,
    coeffs: Vec<BigInt>,
}

impl MinPoly {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients low-to-high; the leading coefficient is 1.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact evaluation at a rational point, as (numerator, denominator^degree) parts
    /// combined into a `num_rational::BigRational`.
    pub fn eval_rational(&self, x: &num_rational::BigRational) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + num_rational::BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Evaluation of the derivative at a rational point.
    pub fn eval_derivative(&self, x: &num_rational::BigRational) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        for (i, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * x + num_rational::BigRational::from_integer(c * BigInt::from(i));
        }
        acc
    }
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Cyclotomic polynomial Phi_n, coefficients low-to-high.
fn cyclotomic(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials (low-to-high), panics on nonzero remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    assert!(!lead.is_zero());
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / lead;
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "non-exact polynomial division");
    quot
}

/// Minimal polynomial of 2cos(2pi/n) for n >= 3. Degree is phi(n)/2.
pub fn minpoly(n: u32) -> Result<MinPoly> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "minpoly requires conductor n >= 3, got {n}"
        )));
    }
    let phi = cyclotomic(n);
    let m = (phi.len() - 1) / 2; // phi(n)/2
    // Phi_n(z)/z^m = c_m + sum_{k=1..m} c_{m+k} (z^k + z^-k); substitute
    // v_k(x) = z^k + z^-k with v_0 = 2, v_1 = x, v_k = x v_{k-1} - v_{k-2}.
    let mut out = vec![BigInt::zero(); m + 1];
    out[0] = phi[m].clone();
    let mut v_prev: Vec<BigInt> = vec![BigInt::from(2)]; // v_0
    let mut v_cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()]; // v_1
    for k in 1..=m {
        let v_k = if k == 1 {
            v_cur.clone()
        } else {
            // v_k = x*v_cur - v_prev
            let mut next = vec![BigInt::zero(); v_cur.len() + 1];
            for (i, c) in v_cur.iter().enumerate() {
                next[i + 1] += c;
            }
            for (i, c) in v_prev.iter().enumerate() {
                next[i] -= c;
            }
            v_prev = std::mem::take(&mut v_cur);
            v_cur = next.clone();
            next
        };
        let c = &phi[m + k];
        for (i, vc) in v_k.iter().enumerate() {
            out[i] += c * vc;
        }
    }
    debug_assert!(out[m].is_one(), "minimal polynomial must be monic");
    Ok(MinPoly { n, coeffs: out })
}
