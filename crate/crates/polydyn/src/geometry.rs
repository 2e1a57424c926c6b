//! Polygons and First-Family constants in both floating and exact coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::exact::AlgebraicReal;
use crate::{Error, Result};

/// Scalar abstraction shared by floating, rational and algebraic coordinates,
/// just enough for piecewise-affine dynamics.
pub trait Coord: Clone + PartialEq + std::fmt::Debug {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact (or best-effort for f64) sign of the value.
    fn signum(&self) -> i32;
    /// A constant in the same coordinate context as `self`.
    fn constant(&self, k: i64) -> Self;
    fn to_f64(&self) -> f64;
}

impl Coord for f64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn signum(&self) -> i32 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn constant(&self, k: i64) -> Self {
        k as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Coord for BigRational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn constant(&self, k: i64) -> Self {
        BigRational::from_integer(BigInt::from(k))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Coord for AlgebraicReal {
    fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("conductor mismatch")
    }
    fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("conductor mismatch")
    }
    fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("conductor mismatch")
    }
    fn neg(&self) -> Self {
        AlgebraicReal::neg(self)
    }
    fn signum(&self) -> i32 {
        self.sign()
    }
    fn constant(&self, k: i64) -> Self {
        AlgebraicReal::from_integer(self.n(), k).expect("valid conductor")
    }
    fn to_f64(&self) -> f64 {
        AlgebraicReal::to_f64(self)
    }
}

/// 2D point over any coordinate scalar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Coord> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point {
            x: self.x.to_f64(),
            y: self.y.to_f64(),
        }
    }
}

impl Point<f64> {
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// cross(b - a, c - a)
fn cross3<T: Coord>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> T {
    let abx = b.x.sub(&a.x);
    let aby = b.y.sub(&a.y);
    let acx = c.x.sub(&a.x);
    let acy = c.y.sub(&a.y);
    abx.mul(&acy).sub(&aby.mul(&acx))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonKind {
    Regular(u32),
    Woven { n: u32, index: f64 },
    Lattice,
    Custom,
}

/// Oriented, strictly convex polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon<T> {
    pub kind: PolygonKind,
    pub orientation: Orientation,
    pub vertices: Vec<Point<T>>,
}

impl<T: Coord> ConvexPolygon<T> {
    /// Validates strict convexity: every consecutive cross product carries the
    /// orientation's sign.
    pub fn new(vertices: Vec<Point<T>>, kind: PolygonKind) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Domain("polygon needs at least 3 vertices".into()));
        }
        let n = vertices.len();
        let mut sign = 0;
        for i in 0..n {
            let c = cross3(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]).signum();
            if c == 0 {
                return Err(Error::Domain("polygon is not strictly convex".into()));
            }
            if sign == 0 {
                sign = c;
            } else if sign != c {
                return Err(Error::Domain("polygon is not strictly convex".into()));
            }
        }
        let orientation = if sign > 0 {
            Orientation::Counterclockwise
        } else {
            Orientation::Clockwise
        };
        Ok(ConvexPolygon {
            kind,
            orientation,
            vertices,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Strictly inside test (all edge cross products share the orientation sign).
    pub fn contains_strict(&self, p: &Point<T>) -> bool {
        let n = self.vertices.len();
        let want = match self.orientation {
            Orientation::Counterclockwise => 1,
            Orientation::Clockwise => -1,
        };
        (0..n).all(|i| cross3(&self.vertices[i], &self.vertices[(i + 1) % n], p).signum() == want)
    }

    pub fn to_f64(&self) -> ConvexPolygon<f64> {
        ConvexPolygon {
            kind: self.kind.clone(),
            orientation: self.orientation,
            vertices: self.vertices.iter().map(Point::to_f64).collect(),
        }
    }
}

/// Placement convention for regular polygons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    /// Circumradius 1 with vertex c1 = (0, 1).
    Standard,
    /// Scaled so the apothem is 1 (the paper's "Dad with height 1" overlay).
    HeightOneDad,
}

/// Regular N-gon, clockwise from the top vertex (0, 1), floating coordinates.
pub fn regular_ngon(n: u32, position: Position) -> Result<ConvexPolygon<f64>> {
    if n < 3 {
        return Err(Error::Domain(format!("regular_ngon needs N >= 3, got {n}")));
    }
    let scale = match position {
        Position::Standard => 1.0,
        Position::HeightOneDad => 1.0 / (std::f64::consts::PI / n as f64).cos(),
    };
    let verts = (0..n)
        .map(|j| {
            let beta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            Point::new(scale * beta.sin(), scale * beta.cos())
        })
        .collect();
    ConvexPolygon::new(verts, PolygonKind::Regular(n))
}

/// Regular N-gon with exact coordinates in the conductor-4N field.
pub fn regular_ngon_exact(n: u32, position: Position) -> Result<ConvexPolygon<AlgebraicReal>> {
    if n < 3 {
        return Err(Error::Domain(format!("regular_ngon needs N >= 3, got {n}")));
    }
    let m = 4 * n;
    let scale = match position {
        Position::Standard => AlgebraicReal::one(m)?,
        // 1 / cos(pi/N) = 1 / cos(2pi * 2 / 4N)
        Position::HeightOneDad => AlgebraicReal::cos_frac(m, 2)?.inv()?,
    };
    let mut verts = Vec::with_capacity(n as usize);
    for j in 0..n {
        // vertex_j = (sin(2pi j/N), cos(2pi j/N)), clockwise from (0,1)
        let x = AlgebraicReal::sin_frac(m, 4 * j as i64)?;
        let y = AlgebraicReal::cos_frac(m, 4 * j as i64)?;
        verts.push(Point::new(x.try_mul(&scale)?, y.try_mul(&scale)?));
    }
    ConvexPolygon::new(verts, PolygonKind::Regular(n))
}

/// Woven 2N-gon: canonical radius-1 N-gon interleaved with a secondary N-gon
/// of circumradius `index` at half-angle offsets. Convex for
/// index in (cos(pi/N), 1 + GenScale[N]).
pub fn woven_ngon(n: u32, index: f64) -> Result<ConvexPolygon<f64>> {
    if n < 3 {
        return Err(Error::Domain(format!("woven_ngon needs N >= 3, got {n}")));
    }
    let h0 = (std::f64::consts::PI / n as f64).cos();
    let hi = 1.0 / h0; // 1 + GenScale[N]
    if !(index > h0 && index < hi) {
        return Err(Error::Domain(format!(
            "woven index {index} outside convex range ({h0}, {hi}) for N = {n}"
        )));
    }
    let verts = (0..2 * n)
        .map(|j| {
            let beta = std::f64::consts::PI * j as f64 / n as f64;
            let r = if j % 2 == 0 { 1.0 } else { index };
            Point::new(r * beta.sin(), r * beta.cos())
        })
        .collect();
    ConvexPolygon::new(verts, PolygonKind::Woven { n, index })
}

/// Lattice polygon from integer vertices.
pub fn lattice_polygon(vertices: &[(i64, i64)]) -> Result<ConvexPolygon<BigRational>> {
    let verts = vertices
        .iter()
        .map(|&(x, y)| {
            Point::new(
                BigRational::from_integer(BigInt::from(x)),
                BigRational::from_integer(BigInt::from(y)),
            )
        })
        .collect();
    ConvexPolygon::new(verts, PolygonKind::Lattice)
}

/// GenScale[N] = (1 - cos(pi/N)) / cos(pi/N), exact in conductor 2N.
pub fn gen_scale(n: u32) -> Result<AlgebraicReal> {
    if n < 3 {
        return Err(Error::Domain(format!("gen_scale needs N >= 3, got {n}")));
    }
    let c = AlgebraicReal::cos_frac(2 * n, 1)?; // cos(2pi/2N) = cos(pi/N)
    let one = AlgebraicReal::one(2 * n)?;
    one.try_sub(&c)?.try_div(&c)
}

/// GenStar[N] = (-cot(pi/N)(1 + cos(pi/N)), -cos(pi/N)), exact in conductor 4N.
pub fn gen_star(n: u32) -> Result<Point<AlgebraicReal>> {
    if n < 3 {
        return Err(Error::Domain(format!("gen_star needs N >= 3, got {n}")));
    }
    let m = 4 * n;
    let c = AlgebraicReal::cos_frac(m, 2)?; // cos(pi/N)
    let s = AlgebraicReal::sin_frac(m, 2)?; // sin(pi/N)
    let one = AlgebraicReal::one(m)?;
    let x = c
        .try_mul(&one.try_add(&c)?)?
        .try_div(&s)?
        .neg();
    Ok(Point::new(x, c.neg()))
}

/// Circumradius of a regular N-gon with side s: s / (2 sin(pi/N)).
pub fn radius_from_side(s: f64, n: u32) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!("radius_from_side needs N >= 3, got {n}")));
    }
    if s <= 0.0 {
        return Err(Error::Domain("side length must be positive".into()));
    }
    Ok(s / (2.0 * (std::f64::consts::PI / n as f64).sin()))
}

/// The canonical N-gon-to-2N-gon placement: cMom + rMom * p.
pub fn k_to_2k<T: Coord>(p: &Point<T>, c_mom: &Point<T>, r_mom: &T) -> Point<T> {
    Point::new(
        c_mom.x.add(&r_mom.mul(&p.x)),
        c_mom.y.add(&r_mom.mul(&p.y)),
    )
}

/// Named First-Family constants. `c_mom`/`r_mom` are supplied only for N = 10
/// (the paper's values, stored exactly); `scale2` only for N = 7.
pub struct FamilyConstants {
    pub n: u32,
    pub gen_scale: AlgebraicReal,
    pub gen_star: Point<AlgebraicReal>,
    pub scale2: Option<f64>,
    pub c_mom: Option<Point<AlgebraicReal>>,
    pub r_mom: Option<AlgebraicReal>,
}

/// The N = 7 second scale, from the source material (no general closed form).
pub const SCALE2_N7: f64 = 0.384042943260191739;

pub fn family_constants(n: u32) -> Result<FamilyConstants> {
    let gen_scale = gen_scale(n)?;
    let gen_star = gen_star(n)?;
    let (c_mom, r_mom) = if n == 10 {
        // rMom = 1/(1 + cos(pi/5)), cMom = (-1/sin(pi/5), -rMom); these exact
        // forms reproduce the quoted decimals (-1.70130161, -0.55278640) and
        // 0.552786404.
        let c = AlgebraicReal::cos_frac(20, 2)?;
        let s = AlgebraicReal::sin_frac(20, 2)?;
        let one = AlgebraicReal::one(20)?;
        let r_mom = one.try_add(&c)?.inv()?;
        let c_mom = Point::new(s.inv()?.neg(), r_mom.neg());
        (Some(c_mom), Some(r_mom))
    } else {
        (None, None)
    };
    Ok(FamilyConstants {
        n,
        gen_scale,
        gen_star,
        scale2: (n == 7).then_some(SCALE2_N7),
        c_mom,
        r_mom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_standard() {
        let p = regular_ngon(4, Position::Standard).unwrap();
        let expect = [(0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0)];
        for (v, e) in p.vertices.iter().zip(expect) {
            assert!((v.x - e.0).abs() < 1e-15 && (v.y - e.1).abs() < 1e-15);
        }
        assert_eq!(p.orientation, Orientation::Clockwise);
    }

    #[test]
    fn pentagon_matches_quoted_coordinates() {
        let p = regular_ngon(5, Position::Standard).unwrap();
        assert!((p.vertices[4].x - -0.95105651629515).abs() < 1e-12);
        assert!((p.vertices[3].y - -0.809016994374947).abs() < 1e-12);
    }

    #[test]
    fn triangle_angles() {
        let p = regular_ngon(3, Position::Standard).unwrap();
        // vertices at 90, -30, 210 degrees on the unit circle
        let angles: Vec<f64> = p
            .vertices
            .iter()
            .map(|v| v.y.atan2(v.x).to_degrees())
            .collect();
        assert!((angles[0] - 90.0).abs() < 1e-12);
        assert!((angles[1] - -30.0).abs() < 1e-12);
        assert!((angles[2] - -150.0).abs() < 1e-12); // 210 == -150
    }

    #[test]
    fn exact_vertices_unit_norm() {
        let p = regular_ngon_exact(7, Position::Standard).unwrap();
        let one = AlgebraicReal::one(28).unwrap();
        for v in &p.vertices {
            let norm2 = v.x.try_mul(&v.x).unwrap().try_add(&v.y.try_mul(&v.y).unwrap()).unwrap();
            assert_eq!(norm2, one);
        }
    }

    #[test]
    fn gen_scale_values() {
        assert!((gen_scale(7).unwrap().to_f64() - 0.10991626417474238).abs() < 1e-15);
        assert!((gen_scale(4).unwrap().to_f64() - (2f64.sqrt() - 1.0)).abs() < 1e-14);
        assert!((gen_scale(5).unwrap().to_f64() - (5f64.sqrt() - 2.0)).abs() < 1e-14);
    }

    #[test]
    fn gen_scale_decreasing() {
        let mut prev = f64::INFINITY;
        for n in 3..=50 {
            let g = gen_scale(n).unwrap().to_f64();
            assert!(g < prev, "gen_scale not decreasing at N = {n}");
            assert!(g > 0.0 && g < 1.0 || n == 3, "range at N = {n}: {g}");
            prev = g;
        }
    }

    #[test]
    fn gen_star_values() {
        // second coordinate is exactly -cos(pi/N)
        for n in [4u32, 5, 7] {
            let gs = gen_star(n).unwrap();
            let c = AlgebraicReal::cos_frac(4 * n, 2).unwrap();
            assert_eq!(gs.y, c.neg());
        }
        let g7 = gen_star(7).unwrap();
        assert!((g7.y.to_f64() - -0.9009688679).abs() < 1e-9);
        let g5 = gen_star(5).unwrap();
        assert!((g5.y.to_f64() - -0.809017).abs() < 1e-6);
        let g4 = gen_star(4).unwrap();
        let expect_x = -(1.0 + 0.5 * 2f64.sqrt());
        assert!((g4.x.to_f64() - expect_x).abs() < 1e-12);
    }

    #[test]
    fn radius_from_side_values() {
        assert!((radius_from_side(1.0, 5).unwrap() - 0.85065080835).abs() < 1e-9);
        assert!((radius_from_side(1.0, 4).unwrap() - 1.0 / 2f64.sqrt()).abs() < 1e-13);
        let s7 = 2.0 * (std::f64::consts::PI / 7.0).sin();
        assert!((radius_from_side(s7, 7).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn k_to_2k_quoted_value() {
        let fam = family_constants(10).unwrap();
        let c_mom = fam.c_mom.unwrap().to_f64();
        let r_mom = fam.r_mom.unwrap().to_f64();
        assert!((c_mom.x - -1.70130161).abs() < 1e-8);
        assert!((c_mom.y - -0.55278640).abs() < 1e-8);
        assert!((r_mom - 0.552786404).abs() < 1e-9);
        let s = Point::new(-0.95105651629515, -0.809016994374947);
        let img = k_to_2k(&s, &c_mom, &r_mom);
        assert!((img.x - -2.227032728).abs() < 1e-8);
        assert!((img.y - -1.0).abs() < 1e-9);
        // identity case
        let id = k_to_2k(&s, &Point::new(0.0, 0.0), &1.0);
        assert_eq!(id, s);
    }

    #[test]
    fn woven_range() {
        assert!(woven_ngon(7, 1.0).is_ok()); // the regular 14-gon
        assert!(woven_ngon(7, 0.91).is_ok());
        let h0 = (std::f64::consts::PI / 5.0).cos();
        assert!(woven_ngon(5, h0 + 1e-6).is_ok());
        assert!(woven_ngon(5, h0).is_err());
        assert!(woven_ngon(5, 1.0 / h0 + 1e-9).is_err());
    }

    #[test]
    fn woven_unit_index_is_regular_2n() {
        let w = woven_ngon(7, 1.0).unwrap();
        let r = regular_ngon(14, Position::Standard).unwrap();
        for (a, b) in w.vertices.iter().zip(&r.vertices) {
            assert!((a.x - b.x).abs() < 1e-14 && (a.y - b.y).abs() < 1e-14);
        }
    }

    #[test]
    fn lattice_orientation() {
        let p = lattice_polygon(&[(2, 0), (1, -2), (-3, -1), (1, 1)]).unwrap();
        assert_eq!(p.orientation, Orientation::Clockwise);
        assert_eq!(p.kind, PolygonKind::Lattice);
    }

    #[test]
    fn nonconvex_rejected() {
        assert!(lattice_polygon(&[(0, 0), (2, 0), (1, 0), (1, 2)]).is_err());
    }
}
