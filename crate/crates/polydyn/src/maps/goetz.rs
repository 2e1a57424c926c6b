//! Goetz-type piecewise rotations (complex and toral forms) and the quadratic
//! Siegel-disk iteration.

use num_complex::Complex64;

use crate::exact::AlgebraicReal;
use crate::geometry::Point;
use crate::Result;

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Complex two-piece rotation: F(z) = e^{-iw} (z - i sgn(Re z)).
pub fn goetz_complex_step(z: Complex64, w: f64) -> Complex64 {
    let kick = Complex64::new(0.0, sgn(z.re));
    Complex64::from_polar(1.0, -w) * (z - kick)
}

/// Affine toral isometry: (x, y) -> Mod((-y + 1, x + 2cos(w) y - cos(w) + beta), 1).
pub fn goetz_toral_step(p: Point<f64>, w: f64, beta: f64) -> Point<f64> {
    let c = w.cos();
    Point::new(
        (-p.y + 1.0).rem_euclid(1.0),
        (p.x + 2.0 * c * p.y - c + beta).rem_euclid(1.0),
    )
}

/// Exact toral step; the rotation cosine and any beta live in the field.
pub fn goetz_toral_step_exact(
    p: &Point<AlgebraicReal>,
    cos_w: &AlgebraicReal,
    beta: &AlgebraicReal,
) -> Result<Point<AlgebraicReal>> {
    let n = cos_w.n();
    let one = AlgebraicReal::one(n)?;
    let two_c = cos_w.try_add(cos_w)?;
    let x_new = one.try_sub(&p.y)?;
    let y_new = p
        .x
        .try_add(&two_c.try_mul(&p.y)?)?
        .try_sub(cos_w)?
        .try_add(beta)?;
    // Mod 1 via the half-scale sawtooth: u - floor(u).
    Ok(Point::new(mod1_exact(&x_new)?, mod1_exact(&y_new)?))
}

fn mod1_exact(u: &AlgebraicReal) -> Result<AlgebraicReal> {
    let m = u.floor_exact();
    let shift = AlgebraicReal::from_rational(u.n(), num_rational::BigRational::from_integer(m))?;
    u.try_sub(&shift)
}

/// Siegel-experiment parameters: z0 = (1/2) e^{2 pi i gamma}, c0 = z0 - z0^2.
pub fn siegel_params(gamma: f64) -> (Complex64, Complex64) {
    let z0 = Complex64::from_polar(0.5, std::f64::consts::TAU * gamma);
    let c0 = z0 - z0 * z0;
    (z0, c0)
}

/// Quadratic iteration z -> z^2 + c.
pub fn quad_step(z: Complex64, c: Complex64) -> Complex64 {
    z * z + c
}
