//! Exact arithmetic in the real cyclotomic field Q(2cos(2pi/n)).
//!
//! Elements are stored in the power basis of the generator c = 2cos(2pi/n),
//! fully reduced modulo the minimal polynomial, so equality is coefficient
//! equality and periodic orbits can be certified exactly. Sign and floor are
//! decided by certified interval refinement with an exact zero test first.

mod approx;
pub mod minpoly;

pub use minpoly::{euler_phi, minpoly, MinPoly};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

use approx::GenInterval;

/// Shared per-conductor context: minimal polynomial, reduction rows and the
/// certified enclosure of the generator.
pub struct FieldCtx {
    n: u32,
    minpoly: MinPoly,
    degree: usize,
    /// reduction[j] = coefficients of x^(degree+j) mod minpoly.
    reduction: Vec<Vec<BigInt>>,
    gen_f64: f64,
    enclosure: Mutex<GenInterval>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("n", &self.n)
            .field("degree", &self.degree)
            .finish()
    }
}

fn registry() -> &'static Mutex<HashMap<u32, Arc<FieldCtx>>> {
    static REG: OnceLock<Mutex<HashMap<u32, Arc<FieldCtx>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Field context for conductor n (cached process-wide).
pub fn field(n: u32) -> Result<Arc<FieldCtx>> {
    if let Some(ctx) = registry().lock().unwrap().get(&n) {
        return Ok(ctx.clone());
    }
    let mp = minpoly(n)?;
    let degree = mp.degree();
    // x^(degree+j) mod m, computed by repeated shift-and-reduce.
    let mut reduction: Vec<Vec<BigInt>> = Vec::with_capacity(degree.max(1));
    let mut row: Vec<BigInt> = mp.coeffs()[..degree].iter().map(|c| -c).collect();
    reduction.push(row.clone());
    for _ in 1..degree {
        // row <- x*row mod m
        let lead = row[degree - 1].clone();
        let mut next = vec![BigInt::zero(); degree];
        for i in (1..degree).rev() {
            next[i] = row[i - 1].clone();
        }
        if !lead.is_zero() {
            for (i, r0) in reduction[0].iter().enumerate() {
                next[i] += &lead * r0;
            }
        }
        row = next;
        reduction.push(row.clone());
    }
    let gen_f64 = 2.0 * (2.0 * std::f64::consts::PI / n as f64).cos();
    let enclosure = Mutex::new(approx::initial_bracket(&mp));
    let ctx = Arc::new(FieldCtx {
        n,
        minpoly: mp,
        degree,
        reduction,
        gen_f64,
        enclosure,
    });
    registry().lock().unwrap().insert(n, ctx.clone());
    Ok(ctx)
}

impl FieldCtx {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &MinPoly {
        &self.minpoly
    }

    /// Certified generator enclosure of width <= 2^-bits.
    fn enclosure(&self, bits: u32) -> GenInterval {
        let mut guard = self.enclosure.lock().unwrap();
        if guard.bits < bits {
            *guard = approx::refine(&self.minpoly, &guard, bits);
        }
        guard.clone()
    }
}

/// Exact element of Q(2cos(2pi/n)) in reduced power-basis form.
#[derive(Clone)]
pub struct AlgebraicReal {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicReal(n={}, ~{:.12})", self.ctx.n, self.to_f64())
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n == other.ctx.n && self.coeffs == other.coeffs
    }
}
impl Eq for AlgebraicReal {}

impl AlgebraicReal {
    fn raw(ctx: Arc<FieldCtx>, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(ctx.degree, BigRational::zero());
        AlgebraicReal { ctx, coeffs }
    }

    pub fn zero(n: u32) -> Result<Self> {
        Ok(Self::raw(field(n)?, vec![]))
    }

    pub fn one(n: u32) -> Result<Self> {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_rational(n: u32, q: BigRational) -> Result<Self> {
        Ok(Self::raw(field(n)?, vec![q]))
    }

    pub fn from_integer(n: u32, k: i64) -> Result<Self> {
        Self::from_rational(n, BigRational::from_integer(BigInt::from(k)))
    }

    /// The generator c = 2cos(2pi/n) itself.
    pub fn generator(n: u32) -> Result<Self> {
        let ctx = field(n)?;
        if ctx.degree == 1 {
            let g = ctx.reduction[0][0].clone(); // x mod (x - g) = g
            return Ok(Self::raw(ctx, vec![BigRational::from_integer(g)]));
        }
        let mut coeffs = vec![BigRational::zero(); ctx.degree];
        coeffs[1] = BigRational::one();
        Ok(Self::raw(ctx, coeffs))
    }

    /// cos(2pi j / n), via the Chebyshev-style recursion v_k = c*v_{k-1} - v_{k-2}.
    pub fn cos_frac(n: u32, j: i64) -> Result<Self> {
        let half = Self::two_cos_frac(n, j)?;
        Ok(half.scale(&BigRational::new(BigInt::one(), BigInt::from(2))))
    }

    /// 2cos(2pi j / n).
    pub fn two_cos_frac(n: u32, j: i64) -> Result<Self> {
        let j = j.rem_euclid(n as i64) as u32;
        let j = j.min(n - j); // cosine is even around the full turn
        let mut v_prev = Self::from_integer(n, 2)?;
        if j == 0 {
            return Ok(v_prev);
        }
        let g = Self::generator(n)?;
        let mut v_cur = g.clone();
        for _ in 1..j {
            let next = v_cur.try_mul(&g)?.try_sub(&v_prev)?;
            v_prev = v_cur;
            v_cur = next;
        }
        Ok(v_cur)
    }

    /// sin(2pi j / n); requires 4 | n so that the quarter turn is in the field.
    pub fn sin_frac(n: u32, j: i64) -> Result<Self> {
        if n % 4 != 0 {
            return Err(Error::Domain(format!(
                "sin_frac needs a conductor divisible by 4, got {n}"
            )));
        }
        Self::cos_frac(n, (n / 4) as i64 - j)
    }

    pub fn n(&self) -> u32 {
        self.ctx.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Some(q) when the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ctx.n != other.ctx.n {
            return Err(Error::Conductor {
                left: self.ctx.n,
                right: other.ctx.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::raw(self.ctx.clone(), coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::raw(self.ctx.clone(), coeffs))
    }

    pub fn neg(&self) -> Self {
        Self::raw(self.ctx.clone(), self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let d = self.ctx.degree;
        let mut raw = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        // Reduce the overflow part with the precomputed rows.
        let mut coeffs: Vec<BigRational> = raw[..d].to_vec();
        for (j, c) in raw[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.ctx.reduction[j].iter().enumerate() {
                if !r.is_zero() {
                    coeffs[i] += c * BigRational::from_integer(r.clone());
                }
            }
        }
        Ok(Self::raw(self.ctx.clone(), coeffs))
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> Self {
        Self::raw(self.ctx.clone(), self.coeffs.iter().map(|a| a * q).collect())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        if let Some(q) = self.as_rational() {
            return Self::from_rational(self.ctx.n, q.recip());
        }
        // Extended gcd of (self as poly, minpoly): s*a + t*m = gcd = constant.
        let m: Vec<BigRational> = self
            .ctx
            .minpoly
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (mut r0, mut r1) = (m, trim(self.coeffs.clone()));
        let (mut t0, mut t1) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let t = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // r0 is a nonzero constant (minpoly is irreducible).
        debug_assert_eq!(r0.len(), 1);
        let scale = r0[0].recip();
        let coeffs = t0.iter().map(|c| c * &scale).collect();
        Ok(Self::raw(self.ctx.clone(), coeffs))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Re-express in the field of conductor m. Requires n | m unless the value
    /// is rational.
    pub fn promote(&self, m: u32) -> Result<Self> {
        if m == self.ctx.n {
            return Ok(self.clone());
        }
        if let Some(q) = self.as_rational() {
            return Self::from_rational(m, q);
        }
        if m % self.ctx.n != 0 {
            return Err(Error::Conductor {
                left: self.ctx.n,
                right: m,
            });
        }
        // Image of our generator: 2cos(2pi/n) = 2cos(2pi*(m/n)/m).
        let image = Self::two_cos_frac(m, (m / self.ctx.n) as i64)?;
        // Horner-evaluate our coefficient polynomial at the image.
        let mut acc = Self::zero(m)?;
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(&image)?;
            acc = acc.try_add(&Self::from_rational(m, c.clone())?)?;
        }
        Ok(acc)
    }

    /// Fast f64 evaluation with a conservative error bound. Returns
    /// (value, bound) with |true - value| <= bound, or None when coefficients
    /// overflow f64 range.
    fn f64_window(&self) -> Option<(f64, f64)> {
        let g = self.ctx.gen_f64;
        let mut val = 0.0f64;
        let mut mag = 0.0f64;
        for c in self.coeffs.iter().rev() {
            let cf = c.to_f64()?;
            if !cf.is_finite() {
                return None;
            }
            val = val * g + cf;
            mag = mag * g.abs() + cf.abs();
        }
        if !val.is_finite() || !mag.is_finite() {
            return None;
        }
        Some((val, mag * 1e-12 + 1e-290))
    }

    /// Certified rational interval containing the value, width <= ~2^-bits
    /// provided the coefficients are moderate (the loop in callers widens
    /// precision until the interval is tight enough for their purpose).
    fn interval(&self, bits: u32) -> (BigRational, BigRational) {
        let enc = self.ctx.enclosure(bits);
        let (mut lo, mut hi) = (BigRational::zero(), BigRational::zero());
        for c in self.coeffs.iter().rev() {
            // [lo,hi] * [enc.lo, enc.hi] + c, interval product.
            let cands = [
                &lo * &enc.lo,
                &lo * &enc.hi,
                &hi * &enc.lo,
                &hi * &enc.hi,
            ];
            let mut new_lo = cands[0].clone();
            let mut new_hi = cands[0].clone();
            for c in &cands[1..] {
                if *c < new_lo {
                    new_lo = c.clone();
                }
                if *c > new_hi {
                    new_hi = c.clone();
                }
            }
            lo = new_lo + c;
            hi = new_hi + c;
        }
        (lo, hi)
    }

    /// Exact sign: -1, 0 or +1. Exact zero test first, then certified
    /// interval refinement at doubling precision.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some((val, err)) = self.f64_window() {
            if val.abs() > err {
                return if val > 0.0 { 1 } else { -1 };
            }
        }
        let mut bits = 64u32;
        loop {
            let (lo, hi) = self.interval(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "sign refinement runaway");
        }
    }

    /// Exact comparison with another element of the same field.
    pub fn cmp_exact(&self, other: &Self) -> Result<std::cmp::Ordering> {
        let d = self.try_sub(other)?;
        Ok(match d.sign() {
            0 => std::cmp::Ordering::Equal,
            s if s > 0 => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Less,
        })
    }

    /// Greatest integer <= value.
    pub fn floor_exact(&self) -> BigInt {
        if let Some(q) = self.as_rational() {
            return q.floor().to_integer();
        }
        if let Some((val, err)) = self.f64_window() {
            let f = val.floor();
            // Safe only when the window stays inside one integer cell.
            if val - err > f && val + err < f + 1.0 && val.abs() < 9e15 {
                return BigInt::from(f as i64);
            }
        }
        let mut bits = 64u32;
        loop {
            let (lo, hi) = self.interval(bits);
            let fl = lo.floor().to_integer();
            let fh = hi.floor().to_integer();
            if fl == fh {
                return fl;
            }
            if &hi - &lo < BigRational::new(BigInt::one(), BigInt::from(2)) {
                // Interval straddles exactly one integer boundary: decide by
                // exact sign against it (an irrational value cannot equal it,
                // but rational values were handled above).
                let m = fh;
                let mr = Self::from_rational(self.ctx.n, BigRational::from_integer(m.clone()))
                    .expect("same conductor");
                return match self.try_sub(&mr).expect("same conductor").sign() {
                    s if s >= 0 => m,
                    _ => m - 1,
                };
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "floor refinement runaway");
        }
    }

    /// Rational approximation within 2^-precision_bits of the true value.
    pub fn to_rational_approx(&self, precision_bits: u32) -> BigRational {
        let target = BigRational::new(BigInt::one(), BigInt::one() << precision_bits);
        let mut bits = precision_bits + 8;
        loop {
            let (lo, hi) = self.interval(bits);
            if &hi - &lo <= target {
                return (lo + hi) / BigRational::from_integer(BigInt::from(2));
            }
            bits *= 2;
            assert!(bits <= 1 << 22, "approximation refinement runaway");
        }
    }

    pub fn to_f64(&self) -> f64 {
        if let Some((val, err)) = self.f64_window() {
            // fast path only when certified to sub-ulp accuracy
            if err <= val.abs() * 1e-17 {
                return val;
            }
        }
        let q = self.to_rational_approx(96);
        q.to_f64().unwrap_or(f64::NAN)
    }
}

// Panicking operator sugar for code paths where conductors are known equal.
impl std::ops::Add for &AlgebraicReal {
    type Output = AlgebraicReal;
    fn add(self, rhs: &AlgebraicReal) -> AlgebraicReal {
        self.try_add(rhs).expect("conductor mismatch")
    }
}
impl std::ops::Sub for &AlgebraicReal {
    type Output = AlgebraicReal;
    fn sub(self, rhs: &AlgebraicReal) -> AlgebraicReal {
        self.try_sub(rhs).expect("conductor mismatch")
    }
}
impl std::ops::Mul for &AlgebraicReal {
    type Output = AlgebraicReal;
    fn mul(self, rhs: &AlgebraicReal) -> AlgebraicReal {
        self.try_mul(rhs).expect("conductor mismatch")
    }
}
impl std::ops::Neg for &AlgebraicReal {
    type Output = AlgebraicReal;
    fn neg(self) -> AlgebraicReal {
        AlgebraicReal::neg(self)
    }
}

// --- rational polynomial helpers for the extended gcd ---

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / lead;
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                let prod = &c * bc;
                rem[k + i] -= prod;
            }
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

// --- serde: {"n": int, "coeffs": ["p/q", ...]} ---

impl Serialize for AlgebraicReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("AlgebraicReal", 2)?;
        st.serialize_field("n", &self.ctx.n)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for AlgebraicReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: u32,
            coeffs: Vec<String>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let ctx = field(repr.n).map_err(D::Error::custom)?;
        if repr.coeffs.len() > ctx.degree() {
            return Err(D::Error::custom(format!(
                "expected at most {} coefficients for conductor {}",
                ctx.degree(),
                repr.n
            )));
        }
        let coeffs: std::result::Result<Vec<BigRational>, D::Error> = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
            .collect();
        Ok(Self::raw(ctx, coeffs?))
    }
}
