//! Orbit iteration, floating and exact period detection, tile-center finding
//! and exact center extraction from floating shadows.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exact::AlgebraicReal;
use crate::geometry::{ConvexPolygon, Coord, Point};
use crate::maps::{df_step, df_step_exact, tangent_step, FloatMap};
use crate::{Error, Result};

/// Floating vs certified-exact computation mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// An orbit: flat point storage (stride = dim) plus metadata.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub map_id: String,
    pub dim: usize,
    pub points: Vec<f64>,
    pub period: Option<u64>,
    pub mode: Mode,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }
}

/// p0 and its n successors under the map. A map-domain failure is reported
/// with the failing iteration index.
pub fn iterate(map: &FloatMap, p0: &[f64], n: u64) -> Result<Orbit> {
    let dim = map.dim();
    if p0.len() != dim {
        return Err(Error::Domain(format!(
            "seed has dimension {}, map '{}' needs {}",
            p0.len(),
            map.id(),
            dim
        )));
    }
    let mut points = Vec::with_capacity((n as usize + 1) * dim);
    points.extend_from_slice(p0);
    let mut p = p0.to_vec();
    for i in 0..n {
        p = map.step(&p).map_err(|e| Error::AtIteration {
            index: i,
            source: Box::new(e),
        })?;
        points.extend_from_slice(&p);
    }
    Ok(Orbit {
        map_id: map.id().to_string(),
        dim,
        points,
        period: None,
        mode: Mode::Float,
    })
}

fn max_norm_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// First k <= cap with |orbit[k] - orbit[0]| < tol in the max norm, with no
/// confirmation pass. Used to read period candidates off approximate centers
/// before exact refinement.
pub fn first_return(map: &FloatMap, p0: &[f64], cap: u64, tol: f64) -> Result<Option<u64>> {
    let mut p = p0.to_vec();
    for k in 1..=cap {
        p = map.step(&p).map_err(|e| Error::AtIteration {
            index: k - 1,
            source: Box::new(e),
        })?;
        if max_norm_diff(&p, p0) < tol {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Least k <= cap with |orbit[k] - orbit[0]| < tol in the max norm, confirmed
/// by re-iterating k further steps at tol/100. Ambiguity (a second
/// non-multiple candidate within tol before 2k, or a failed confirmation)
/// raises `AmbiguousPeriod`, which routes callers to the exact path.
pub fn detect_period_float(
    map: &FloatMap,
    p0: &[f64],
    cap: u64,
    tol: f64,
) -> Result<Option<u64>> {
    let mut p = p0.to_vec();
    let mut first_hit: Option<(u64, Vec<f64>)> = None;
    let mut k = 0u64;
    while k < cap.saturating_mul(2) {
        k += 1;
        p = map.step(&p).map_err(|e| Error::AtIteration {
            index: k - 1,
            source: Box::new(e),
        })?;
        match &first_hit {
            None => {
                if k > cap {
                    return Ok(None);
                }
                if max_norm_diff(&p, p0) < tol {
                    first_hit = Some((k, p.clone()));
                }
            }
            Some((k1, pk1)) => {
                if k == 2 * k1 {
                    // confirmation pass: orbit[2k] vs orbit[k] at tol/100
                    if max_norm_diff(&p, pk1) < tol / 100.0 {
                        return Ok(Some(*k1));
                    }
                    return Err(Error::AmbiguousPeriod(*k1, 2 * k1));
                }
                if max_norm_diff(&p, p0) < tol && k % k1 != 0 {
                    return Err(Error::AmbiguousPeriod(*k1, k));
                }
            }
        }
    }
    Ok(match first_hit {
        // cap reached before the confirmation window completed
        Some((k1, _)) => Some(k1),
        None => None,
    })
}

/// Exact period of a Df orbit: least k <= cap with p_k == p_0 exactly.
pub fn detect_period_df_exact(
    p0: &Point<AlgebraicReal>,
    a: &AlgebraicReal,
    cap: u64,
) -> Result<Option<u64>> {
    let mut p = p0.clone();
    for k in 1..=cap {
        p = df_step_exact(&p, a)?;
        if p == *p0 {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Exact period of a Tangent-map orbit over any exact scalar.
pub fn detect_period_tangent_exact<T: Coord>(
    p0: &Point<T>,
    polygon: &ConvexPolygon<T>,
    cap: u64,
) -> Result<Option<u64>> {
    let mut p = p0.clone();
    for k in 1..=cap {
        p = tangent_step(&p, polygon).map_err(|e| Error::AtIteration {
            index: k - 1,
            source: Box::new(e),
        })?;
        if p == *p0 {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Solve for the exact periodic center shadowed by a floating Df orbit.
///
/// Follows the floating orbit of `p_approx` for k steps to read off the
/// overflow branch at each step, then solves the affine fixed-point equation
/// (I - A^k) p = sum_j A^(k-1-j) kick_j exactly in the field of `a`. The
/// returned point is verified to have exact period k (and no smaller).
pub fn exact_center_from_orbit(
    p_approx: Point<f64>,
    a: &AlgebraicReal,
    k: u64,
) -> Result<Point<AlgebraicReal>> {
    let n = a.n();
    let a_f = a.to_f64();
    // Collect branch integers m_j: f(z) = z - 2 m_j.
    let mut p = p_approx.clone();
    let mut kicks = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let z = -p.x + a_f * p.y;
        kicks.push(((z + 1.0) / 2.0).floor() as i64);
        p = df_step(p, a_f);
    }
    // acc = sum_j A^(k-1-j) kick_j via Horner; M = A^k alongside.
    let zero = AlgebraicReal::zero(n)?;
    let one = AlgebraicReal::one(n)?;
    let a2 = [[zero.clone(), one.clone()], [one.neg(), a.clone()]];
    let mut acc = [zero.clone(), zero.clone()];
    for m in &kicks {
        // acc <- A*acc + (0, -2m)
        let new0 = acc[1].clone();
        let new1 = a2[1][0]
            .try_mul(&acc[0])?
            .try_add(&a2[1][1].try_mul(&acc[1])?)?
            .try_add(&AlgebraicReal::from_integer(n, -2 * m)?)?;
        acc = [new0, new1];
    }
    // A^k by repeated squaring is overkill for k <= a few hundred; iterate.
    let mut ak = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
    for _ in 0..k {
        let r0 = [
            a2[0][0].try_mul(&ak[0][0])?.try_add(&a2[0][1].try_mul(&ak[1][0])?)?,
            a2[0][0].try_mul(&ak[0][1])?.try_add(&a2[0][1].try_mul(&ak[1][1])?)?,
        ];
        let r1 = [
            a2[1][0].try_mul(&ak[0][0])?.try_add(&a2[1][1].try_mul(&ak[1][0])?)?,
            a2[1][0].try_mul(&ak[0][1])?.try_add(&a2[1][1].try_mul(&ak[1][1])?)?,
        ];
        ak = [r0, r1];
    }
    // Solve (I - A^k) p = acc.
    let m00 = one.try_sub(&ak[0][0])?;
    let m01 = ak[0][1].neg();
    let m10 = ak[1][0].neg();
    let m11 = one.try_sub(&ak[1][1])?;
    let det = m00.try_mul(&m11)?.try_sub(&m01.try_mul(&m10)?)?;
    if det.is_zero() {
        return Err(Error::NotATile);
    }
    let inv_det = det.inv()?;
    let cx = m11
        .try_mul(&acc[0])?
        .try_sub(&m01.try_mul(&acc[1])?)?
        .try_mul(&inv_det)?;
    let cy = m00
        .try_mul(&acc[1])?
        .try_sub(&m10.try_mul(&acc[0])?)?
        .try_mul(&inv_det)?;
    let center = Point::new(cx, cy);
    // The solution must shadow the floating input and close up exactly at k.
    let cf = center.to_f64();
    if (cf.x - p_approx.x).abs() > 1e-3 || (cf.y - p_approx.y).abs() > 1e-3 {
        return Err(Error::NotATile);
    }
    match detect_period_df_exact(&center, a, k)? {
        Some(p) if p == k => Ok(center),
        _ => Err(Error::NotATile),
    }
}

/// Center of a periodic tile from an interior point: centroid of
/// `rot_period` samples taken every `stride` steps, verified to be fixed by
/// `stride` steps of the map to within `tol`.
pub fn find_center(
    map: &FloatMap,
    p_in_tile: &[f64],
    rot_period: u64,
    stride: u64,
    tol: f64,
) -> Result<Vec<f64>> {
    if rot_period == 0 || stride == 0 {
        return Err(Error::Domain("find_center needs rot_period, stride >= 1".into()));
    }
    let dim = map.dim();
    let mut samples = Vec::with_capacity(rot_period as usize);
    let mut p = p_in_tile.to_vec();
    samples.push(p.clone());
    for _ in 1..rot_period {
        for _ in 0..stride {
            p = map.step(&p)?;
        }
        samples.push(p.clone());
    }
    let mut centroid = vec![0.0; dim];
    for s in &samples {
        for (c, v) in centroid.iter_mut().zip(s) {
            *c += v;
        }
    }
    for c in centroid.iter_mut() {
        *c /= rot_period as f64;
    }
    // The tile rotates rigidly about its center, so the centroid must return
    // to itself after one stride.
    let mut check = centroid.clone();
    for _ in 0..stride {
        check = map.step(&check)?;
    }
    if max_norm_diff(&check, &centroid) > tol {
        return Err(Error::NotATile);
    }
    Ok(centroid)
}

/// The exact non-periodic pentagon seed s = (c5.x, c4.y) in conductor 20.
pub fn pentagon_nonperiodic_seed() -> Result<Point<AlgebraicReal>> {
    // c5 = (sin(2pi*4/5), cos(2pi*4/5)), c4 = (sin(2pi*3/5), cos(2pi*3/5))
    let x = AlgebraicReal::sin_frac(20, 16)?;
    let y = AlgebraicReal::cos_frac(20, 12)?;
    Ok(Point::new(x, y))
}

/// The seed's exact Df lift for theta = 2pi/10: exactly (-1, 1/2).
pub fn pentagon_seed_df_lift() -> Result<Point<AlgebraicReal>> {
    use crate::conjugacy::ExactFrame;
    use crate::geometry::{family_constants, k_to_2k};
    let fam = family_constants(10)?;
    let c_mom = fam.c_mom.expect("N=10 constants");
    let r_mom = fam.r_mom.expect("N=10 constants");
    let seed = pentagon_nonperiodic_seed()?;
    let lifted = k_to_2k(&seed, &c_mom, &r_mom);
    let frame = ExactFrame::new(20, 2)?; // w = 2pi/10 = 2pi*2/20
    frame.ts_to_df(&lifted)
}

/// (min, max) Euclidean norm over an orbit.
pub fn bound_stats(orbit: &Orbit) -> Result<(f64, f64)> {
    if orbit.is_empty() {
        return Err(Error::Domain("bound_stats of an empty orbit".into()));
    }
    let mut lo = f64::MAX;
    let mut hi = 0.0f64;
    for i in 0..orbit.len() {
        let p = orbit.point(i);
        let r = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok((lo, hi))
}

/// Convert an exact Df point to rationals-in-field from simple fractions,
/// useful for constructing seeds like (-1, 1/2).
pub fn df_point_exact(n: u32, x: (i64, i64), y: (i64, i64)) -> Result<Point<AlgebraicReal>> {
    let px = AlgebraicReal::from_rational(n, BigRational::new(BigInt::from(x.0), BigInt::from(x.1)))?;
    let py = AlgebraicReal::from_rational(n, BigRational::new(BigInt::from(y.0), BigInt::from(y.1)))?;
    Ok(Point::new(px, py))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::ts_to_df;
    use crate::geometry::{lattice_polygon, regular_ngon, Position};

    const TAU: f64 = std::f64::consts::TAU;

    fn lift14(p: (f64, f64)) -> Point<f64> {
        ts_to_df(Point::new(p.0, p.1), TAU / 14.0).unwrap()
    }

    #[test]
    fn iterate_zero_steps() {
        let m = FloatMap::Df { a: 1.8 };
        let o = iterate(&m, &[0.25, -0.5], 0).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o.point(0), &[0.25, -0.5]);
    }

    #[test]
    fn first_family_periods_read_from_float() {
        let a = 2.0 * (TAU / 14.0).cos();
        let m = FloatMap::Df { a };
        // candidate periods read off the decimal lifts at loose tolerance
        for (c, want) in [
            ((-4.153043, -0.947905), 6u64),
            ((-3.89971, -0.890084), 5),
            ((-4.35619, -0.994274), 22),
        ] {
            let lift = lift14(c);
            let k = first_return(&m, &[lift.x, lift.y], 100, 1e-3).unwrap();
            assert_eq!(k, Some(want));
        }
        // origin is a fixed point
        assert_eq!(
            detect_period_float(&m, &[0.0, 0.0], 10, 1e-9).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn sloppy_tolerance_forces_exact_path() {
        // At tol 1e-3 the off-centre Mom[2] lift aliases nearby returns;
        // the confirming detector reports ambiguity instead of guessing.
        let a = 2.0 * (TAU / 14.0).cos();
        let m = FloatMap::Df { a };
        let lift = lift14((-4.35619, -0.994274));
        match detect_period_float(&m, &[lift.x, lift.y], 100, 1e-3) {
            Err(Error::AmbiguousPeriod(22, _)) => {}
            other => panic!("expected ambiguity at sloppy tolerance, got {other:?}"),
        }
    }

    #[test]
    fn exact_centers_certify_periods() {
        let a = AlgebraicReal::generator(14).unwrap();
        for (c, want) in [
            ((-4.153043, -0.947905), 6u64),
            ((-3.89971, -0.890084), 5),
            ((-4.35619, -0.994274), 22),
        ] {
            let center = exact_center_from_orbit(lift14(c), &a, want).unwrap();
            // certified: exact period == want, and the center shadows the lift
            assert_eq!(
                detect_period_df_exact(&center, &a, 2 * want).unwrap(),
                Some(want)
            );
            // float mode agrees on the refined center
            let m = FloatMap::Df { a: a.to_f64() };
            let cf = center.to_f64();
            assert_eq!(
                detect_period_float(&m, &[cf.x, cf.y], 100, 1e-9).unwrap(),
                Some(want)
            );
        }
    }

    #[test]
    fn exact_period_invariant_under_cycle_shift() {
        let a = AlgebraicReal::generator(14).unwrap();
        let center = exact_center_from_orbit(lift14((-4.153043, -0.947905)), &a, 6).unwrap();
        let mut p = center.clone();
        for _ in 0..4 {
            p = df_step_exact(&p, &a).unwrap();
        }
        assert_eq!(detect_period_df_exact(&p, &a, 12).unwrap(), Some(6));
    }

    #[test]
    fn lattice_tangent_periods() {
        let poly = lattice_polygon(&[(2, 0), (1, -2), (-3, -1), (1, 1)]).unwrap();
        let p = Point::new(
            BigRational::from_integer(4.into()),
            BigRational::from_integer(1.into()),
        );
        assert_eq!(detect_period_tangent_exact(&p, &poly, 100).unwrap(), Some(6));
        let c = Point::new(
            BigRational::from_integer((-3).into()),
            BigRational::from_integer(2.into()),
        );
        assert_eq!(detect_period_tangent_exact(&c, &poly, 100).unwrap(), Some(3));
    }

    #[test]
    fn find_center_mom1_tile() {
        // Off-center points in the Mom[1] Df tile rotate with order 7.
        let a = 2.0 * (TAU / 14.0).cos();
        let m = FloatMap::Df { a };
        let c = (-0.9479049163983132, 0.9479049163983132);
        let p = [c.0 + 1e-4, c.1 + 3e-5];
        let got = find_center(&m, &p, 7, 6, 1e-9).unwrap();
        assert!((got[0] - c.0).abs() < 1e-12 && (got[1] - c.1).abs() < 1e-12);
        // a point that is already a fixed tile center returns itself
        let id = find_center(&m, &[0.0, 0.0], 1, 1, 1e-12).unwrap();
        assert_eq!(id, vec![0.0, 0.0]);
        // garbage rotation parameters are rejected
        assert!(matches!(
            find_center(&m, &[0.3, 0.41], 5, 3, 1e-9),
            Err(Error::NotATile)
        ));
    }

    #[test]
    fn pentagon_seed_values() {
        let s = pentagon_nonperiodic_seed().unwrap().to_f64();
        assert!((s.x - -0.95105651629515).abs() < 1e-12);
        assert!((s.y - -0.809016994374947).abs() < 1e-12);
        // the exact Df lift is exactly (-1, 1/2)
        let lift = pentagon_seed_df_lift().unwrap();
        let want = df_point_exact(20, (-1, 1), (1, 2)).unwrap();
        assert_eq!(lift, want);
    }

    #[test]
    fn bound_stats_single_point() {
        let o = Orbit {
            map_id: "df".into(),
            dim: 2,
            points: vec![3.0, 4.0],
            period: None,
            mode: Mode::Float,
        };
        assert_eq!(bound_stats(&o).unwrap(), (5.0, 5.0));
    }

    #[test]
    fn tangent_error_carries_index() {
        let poly = regular_ngon(5, Position::Standard).unwrap();
        let m = FloatMap::Tangent { polygon: poly };
        // inside point: fails at iteration 0
        match iterate(&m, &[0.0, 0.1], 5) {
            Err(Error::AtIteration { index, .. }) => assert_eq!(index, 0),
            other => panic!("expected AtIteration, got {other:?}"),
        }
    }
}
