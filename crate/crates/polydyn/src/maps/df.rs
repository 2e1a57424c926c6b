//! The digital-filter maps: second-order Df on [-1,1)^2 and third-order D3f
//! on [-1,1)^3, with the sawtooth overflow function.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exact::AlgebraicReal;
use crate::geometry::Point;
use crate::Result;

/// Sawtooth overflow: f(z) = Mod(z + 1, 2) - 1, half-open range [-1, 1).
///
/// The branched form is exact in IEEE arithmetic for |z| < 5 (the shifts are
/// Sterbenz-exact), which keeps the map exactly odd off the discontinuity
/// lines; the complementary-orbit symmetry then holds bit-for-bit.
pub fn sawtooth_f(z: f64) -> f64 {
    if (-1.0..1.0).contains(&z) {
        z
    } else if (1.0..3.0).contains(&z) {
        z - 2.0
    } else if (-3.0..-1.0).contains(&z) {
        z + 2.0
    } else if (3.0..5.0).contains(&z) {
        z - 4.0
    } else if (-5.0..-3.0).contains(&z) {
        z + 4.0
    } else {
        (z + 1.0).rem_euclid(2.0) - 1.0
    }
}

/// Exact sawtooth: z - 2*floor((z+1)/2).
pub fn sawtooth_f_exact(z: &AlgebraicReal) -> Result<AlgebraicReal> {
    let n = z.n();
    let one = AlgebraicReal::one(n)?;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let m = z.try_add(&one)?.scale(&half).floor_exact();
    let shift = AlgebraicReal::from_rational(n, BigRational::from_integer(m * BigInt::from(2)))?;
    z.try_sub(&shift)
}

/// One Df step: (x, y) -> (y, f(-x + a*y)).
pub fn df_step(p: Point<f64>, a: f64) -> Point<f64> {
    Point::new(p.y, sawtooth_f(-p.x + a * p.y))
}

/// Exact Df step in the field of the trace a = 2cos(theta).
pub fn df_step_exact(p: &Point<AlgebraicReal>, a: &AlgebraicReal) -> Result<Point<AlgebraicReal>> {
    let z = a.try_mul(&p.y)?.try_sub(&p.x)?;
    Ok(Point::new(p.y.clone(), sawtooth_f_exact(&z)?))
}

/// Overflow classifier: +1 when -x + a*y >= 1, -1 when < -1, else 0.
pub fn s_classify(p: &Point<f64>, a: f64) -> i32 {
    let z = -p.x + a * p.y;
    if z >= 1.0 {
        1
    } else if z < -1.0 {
        -1
    } else {
        0
    }
}

/// Exact classifier; boundary points are resolved by exact signs.
pub fn s_classify_exact(p: &Point<AlgebraicReal>, a: &AlgebraicReal) -> Result<i32> {
    let n = a.n();
    let z = a.try_mul(&p.y)?.try_sub(&p.x)?;
    let one = AlgebraicReal::one(n)?;
    if z.try_sub(&one)?.sign() >= 0 {
        Ok(1)
    } else if z.try_add(&one)?.sign() < 0 {
        Ok(-1)
    } else {
        Ok(0)
    }
}

/// Wrap a point into the Df torus [-1,1)^2 coordinatewise.
pub fn wrap_df(p: Point<f64>) -> Point<f64> {
    Point::new(sawtooth_f(p.x), sawtooth_f(p.y))
}

pub fn wrap_df_exact(p: &Point<AlgebraicReal>) -> Result<Point<AlgebraicReal>> {
    Ok(Point::new(sawtooth_f_exact(&p.x)?, sawtooth_f_exact(&p.y)?))
}

/// One D3f step: (x, y, z) -> (y, z, f(x - (1+a)y + (1+a)z)).
pub fn d3f_step(p: [f64; 3], a: f64) -> [f64; 3] {
    let [x, y, z] = p;
    [y, z, sawtooth_f(x - (1.0 + a) * y + (1.0 + a) * z)]
}

/// D3f with the overflow disabled (the linear third-order filter).
pub fn d3f_linear_step(p: [f64; 3], a: f64) -> [f64; 3] {
    let [x, y, z] = p;
    [y, z, x - (1.0 + a) * y + (1.0 + a) * z]
}
