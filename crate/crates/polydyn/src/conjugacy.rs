//! Coordinate changes chaining the maps together: Df <-> Euclidean <-> Tangent
//! space, StSaw -> Df, and the 3D rectifications for D3f.
//!
//! Conventions (pinned by the quoted center values):
//!   ts_to_df = G o rotate(-pi/2),   df_to_ts = rotate(+pi/2) o G^-1,
//! with G = [[1, 0], [cos w, sin w]]. In the Euclidean frame the linear Df
//! matrix A = [[0, 1], [-1, 2cos w]] becomes the clockwise rotation
//! G^-1 A G = [[cos w, sin w], [-sin w, cos w]].

use crate::exact::AlgebraicReal;
use crate::geometry::Point;
use crate::{Error, Result};

/// Coordinate frames the transforms move between.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameId {
    Df,
    Ts,
    StSaw,
    D3fRaw,
    D3fRect,
}

fn check_sin(w: f64) -> Result<f64> {
    let s = w.sin();
    if s.abs() < 1e-300 {
        return Err(Error::SingularFrame);
    }
    Ok(s)
}

/// G: (x, y) -> (x, x cos w + y sin w). Df -> Euclidean scaling frame.
pub fn g_transform(p: Point<f64>, w: f64) -> Result<Point<f64>> {
    let s = check_sin(w)?;
    Ok(Point::new(p.x, p.x * w.cos() + p.y * s))
}

/// G^-1: (x, y) -> (x, -x cot w + y / sin w).
pub fn g_inverse(p: Point<f64>, w: f64) -> Result<Point<f64>> {
    let s = check_sin(w)?;
    Ok(Point::new(p.x, -p.x * w.cos() / s + p.y / s))
}

/// TG (transpose of G): (x, y) -> (x + y cos w, y sin w). Used with the toral
/// Goetz map.
pub fn tg_transform(p: Point<f64>, w: f64) -> Point<f64> {
    Point::new(p.x + p.y * w.cos(), p.y * w.sin())
}

/// Df space -> Tangent space: rotate(+pi/2) after G^-1.
pub fn df_to_ts(p: Point<f64>, w: f64) -> Result<Point<f64>> {
    let g = g_inverse(p, w)?;
    Ok(Point::new(-g.y, g.x))
}

/// Tangent space -> Df space: G after rotate(-pi/2). Inverse of `df_to_ts`.
pub fn ts_to_df(p: Point<f64>, w: f64) -> Result<Point<f64>> {
    let r = Point::new(p.y, -p.x);
    g_transform(r, w)
}

/// Exact frame data for a rotation angle w = 2*pi*j/m (4 | m required so both
/// cos and sin live in the conductor-m field).
#[derive(Debug, Clone)]
pub struct ExactFrame {
    pub m: u32,
    pub cos_w: AlgebraicReal,
    pub sin_w: AlgebraicReal,
}

impl ExactFrame {
    pub fn new(m: u32, j: i64) -> Result<Self> {
        let cos_w = AlgebraicReal::cos_frac(m, j)?;
        let sin_w = AlgebraicReal::sin_frac(m, j)?;
        if sin_w.is_zero() {
            return Err(Error::SingularFrame);
        }
        Ok(ExactFrame { m, cos_w, sin_w })
    }

    pub fn g_transform(&self, p: &Point<AlgebraicReal>) -> Result<Point<AlgebraicReal>> {
        let y = p.x.try_mul(&self.cos_w)?.try_add(&p.y.try_mul(&self.sin_w)?)?;
        Ok(Point::new(p.x.clone(), y))
    }

    pub fn g_inverse(&self, p: &Point<AlgebraicReal>) -> Result<Point<AlgebraicReal>> {
        let inv_s = self.sin_w.inv()?;
        let y = p
            .y
            .try_sub(&p.x.try_mul(&self.cos_w)?)?
            .try_mul(&inv_s)?;
        Ok(Point::new(p.x.clone(), y))
    }

    pub fn ts_to_df(&self, p: &Point<AlgebraicReal>) -> Result<Point<AlgebraicReal>> {
        let r = Point::new(p.y.clone(), p.x.neg());
        self.g_transform(&r)
    }

    pub fn df_to_ts(&self, p: &Point<AlgebraicReal>) -> Result<Point<AlgebraicReal>> {
        let g = self.g_inverse(p)?;
        Ok(Point::new(g.y.neg(), g.x))
    }

    /// G^-1 A G for A = [[0, 1], [-1, 2 cos w]], as rows. Equals the clockwise
    /// rotation matrix [[cos w, sin w], [-sin w, cos w]] exactly.
    pub fn conjugated_rotation(&self) -> Result<[[AlgebraicReal; 2]; 2]> {
        let m = self.m;
        let zero = AlgebraicReal::zero(m)?;
        let one = AlgebraicReal::one(m)?;
        let a = [
            [zero.clone(), one.clone()],
            [one.neg(), self.cos_w.try_add(&self.cos_w)?],
        ];
        let g = [
            [one.clone(), zero.clone()],
            [self.cos_w.clone(), self.sin_w.clone()],
        ];
        let inv_s = self.sin_w.inv()?;
        let g_inv = [
            [one, zero],
            [
                self.cos_w.try_mul(&inv_s)?.neg(),
                inv_s,
            ],
        ];
        let ag = mat_mul(&a, &g)?;
        mat_mul(&g_inv, &ag)
    }
}

fn mat_mul(
    a: &[[AlgebraicReal; 2]; 2],
    b: &[[AlgebraicReal; 2]; 2],
) -> Result<[[AlgebraicReal; 2]; 2]> {
    let ent = |i: usize, j: usize| -> Result<AlgebraicReal> {
        a[i][0]
            .try_mul(&b[0][j])?
            .try_add(&a[i][1].try_mul(&b[1][j])?)
    };
    Ok([[ent(0, 0)?, ent(0, 1)?], [ent(1, 0)?, ent(1, 1)?]])
}

/// Ashwin's change of coordinates StSaw -> Df: (x, y) -> (2 r(x-y) - 1, 1 - 2y)
/// with r(x) = x - floor(x).
pub fn stsaw_to_df(p: Point<f64>) -> Point<f64> {
    let r = (p.x - p.y).rem_euclid(1.0);
    Point::new(2.0 * r - 1.0, 1.0 - 2.0 * p.y)
}

/// T3(w) = [[1,1,0],[1,cos w,sin w],[1,cos 2w,sin 2w]] as rows.
fn t3(w: f64) -> [[f64; 3]; 3] {
    [
        [1.0, 1.0, 0.0],
        [1.0, w.cos(), w.sin()],
        [1.0, (2.0 * w).cos(), (2.0 * w).sin()],
    ]
}

fn inv3(m: &[[f64; 3]; 3]) -> Result<[[f64; 3]; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det.abs() < 1e-12 {
        return Err(Error::SingularFrame);
    }
    let c = |r: usize, s: usize| {
        let (r1, r2) = match r {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (s1, s2) = match s {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let minor = m[r1][s1] * m[r2][s2] - m[r1][s2] * m[r2][s1];
        if (r + s) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = c(j, i) / det; // adjugate transpose
        }
    }
    Ok(out)
}

fn mat3_vec(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// Rectified 3D coordinates: Inverse(T3(w)) . q.
pub fn d3f_to_tr(q: [f64; 3], w: f64) -> Result<[f64; 3]> {
    Ok(mat3_vec(&inv3(&t3(w))?, q))
}

/// Drop the first coordinate of a rectified point.
pub fn project23(q: [f64; 3]) -> Point<f64> {
    Point::new(q[1], q[2])
}

/// Orthonormal basis adapted to the D3f invariant planes, for trace a:
/// columns e1 = (1,-a,1)/sqrt(2+a^2), e2 = (1,0,-1)/sqrt 2,
/// e3 = (a,2,a)/sqrt(4+2a^2). Returns (T, T^-1 = T^t).
pub fn orthobasis_t(a: f64) -> ([[f64; 3]; 3], [[f64; 3]; 3]) {
    let n1 = (2.0 + a * a).sqrt();
    let n2 = 2f64.sqrt();
    let n3 = (4.0 + 2.0 * a * a).sqrt();
    let e1 = [1.0 / n1, -a / n1, 1.0 / n1];
    let e2 = [1.0 / n2, 0.0, -1.0 / n2];
    let e3 = [a / n3, 2.0 / n3, a / n3];
    let t = [
        [e1[0], e2[0], e3[0]],
        [e1[1], e2[1], e3[1]],
        [e1[2], e2[2], e3[2]],
    ];
    let ti = [e1, e2, e3]; // transpose of t
    (t, ti)
}

/// Component of q along e1: the plane-transport coordinate whose jumps are
/// integer multiples of 2/sqrt(2+a^2).
pub fn rect_coordinate(q: [f64; 3], a: f64) -> f64 {
    (q[0] - a * q[1] + q[2]) / (2.0 + a * a).sqrt()
}

/// The plane gap 2/sqrt(2 + a^2).
pub fn plane_gap(a: f64) -> f64 {
    2.0 / (2.0 + a * a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAU: f64 = std::f64::consts::TAU;

    #[test]
    fn g_roundtrip_random() {
        let w = TAU / 14.0;
        let mut state = 0xDEADBEEFu64;
        let mut rnd = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        for _ in 0..100 {
            let p = Point::new(rnd(), rnd());
            let q = g_inverse(g_transform(p.clone(), w).unwrap(), w).unwrap();
            assert!((q.x - p.x).abs() < 1e-12 && (q.y - p.y).abs() < 1e-12);
        }
        assert!((g_transform(Point::new(1.0, 0.0), w).unwrap().y - w.cos()).abs() < 1e-15);
    }

    #[test]
    fn singular_frame_rejected() {
        assert!(matches!(
            g_transform(Point::new(1.0, 1.0), 0.0),
            Err(Error::SingularFrame)
        ));
        assert!(matches!(
            ExactFrame::new(20, 10),
            Err(Error::SingularFrame)
        ));
    }

    #[test]
    fn quoted_mom1_lift() {
        let w = TAU / 14.0;
        let lift = ts_to_df(Point::new(-4.153043, -0.947905), w).unwrap();
        assert!((lift.x - -0.947905).abs() < 1e-9);
        assert!((lift.y - 0.947905).abs() < 1e-4);
        let back = df_to_ts(lift, w).unwrap();
        assert!((back.x - -4.153043).abs() < 1e-9 && (back.y - -0.947905).abs() < 1e-9);
    }

    #[test]
    fn pentagon_seed_lift_is_exact() {
        // kTo2k(s) = (-2.227032728, -1.0) lifts to exactly (-1, 1/2) in Df.
        let w = TAU / 10.0;
        let lift = ts_to_df(Point::new(-2.2270327288232132, -1.0), w).unwrap();
        assert!((lift.x - -1.0).abs() < 1e-12);
        assert!((lift.y - 0.5).abs() < 1e-12);
    }

    #[test]
    fn conjugation_is_clockwise_rotation_exactly() {
        for (m, j) in [(28u32, 2i64), (20, 2), (56, 4)] {
            let frame = ExactFrame::new(m, j).unwrap();
            let rot = frame.conjugated_rotation().unwrap();
            assert_eq!(rot[0][0], frame.cos_w);
            assert_eq!(rot[0][1], frame.sin_w);
            assert_eq!(rot[1][0], frame.sin_w.neg());
            assert_eq!(rot[1][1], frame.cos_w);
        }
    }

    #[test]
    fn tg_values() {
        let w = TAU / 14.0;
        let p = tg_transform(Point::new(1.0, 0.0), w);
        assert_eq!((p.x, p.y), (1.0, 0.0));
        let q = tg_transform(Point::new(0.0, 1.0), w);
        assert!((q.x - w.cos()).abs() < 1e-15 && (q.y - w.sin()).abs() < 1e-15);
        let r = tg_transform(Point::new(1.0, 1.0), w);
        assert!((r.x - (1.0 + w.cos())).abs() < 1e-15 && (r.y - w.sin()).abs() < 1e-15);
    }

    #[test]
    fn stsaw_to_df_values() {
        let p = stsaw_to_df(Point::new(0.0, 0.0));
        assert_eq!((p.x, p.y), (-1.0, 1.0));
        let p = stsaw_to_df(Point::new(0.5, 0.5));
        assert_eq!((p.x, p.y), (-1.0, 0.0));
        let p = stsaw_to_df(Point::new(0.75, 0.25));
        assert_eq!((p.x, p.y), (0.0, 0.5));
    }

    #[test]
    fn d3f_rectifier_quoted_values() {
        let w = 1.0f64;
        let a = 2.0 * w.cos();
        let r = d3f_to_tr([1.0, 0.0, 0.0], w).unwrap();
        assert!((r[0] - 1.08767).abs() < 1e-5);
        assert!((r[1] - -0.0876713).abs() < 1e-6);
        assert!((r[2] - -1.23629).abs() < 1e-5);
        let p = project23([7.0, 8.0, 9.0]);
        assert_eq!((p.x, p.y), (8.0, 9.0));

        let (t, ti) = orthobasis_t(a);
        // T^t T = I
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| ti[i][k] * t[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
        // TI . (1,0,0) = (0.561859, 0.707107, 0.429318)
        let u = mat3_vec(&ti, [1.0, 0.0, 0.0]);
        assert!((u[0] - 0.561859).abs() < 1e-6);
        assert!((u[1] - 0.707107).abs() < 1e-6);
        assert!((u[2] - 0.429318).abs() < 1e-6);
        assert!((plane_gap(a) - 1.1237).abs() < 1e-4);
        // a = 0: e1 = (1,0,1)/sqrt2
        let (t0, _) = orthobasis_t(0.0);
        assert!((t0[0][0] - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!(t0[1][0].abs() < 1e-15);
    }

    #[test]
    fn linear_mode_rectified_orbit_is_circular() {
        // Overflow disabled: project23 of the rectified orbit lies on a circle.
        let w = 1.0f64;
        let a = 2.0 * w.cos();
        // The rectification block-diagonalizes the linear step, so the
        // projected points rotate about the origin at a fixed radius.
        let mut q = [1.0, 0.0, 0.0];
        let mut radii = Vec::new();
        for _ in 0..200 {
            q = crate::maps::d3f_linear_step(q, a);
            let p = project23(d3f_to_tr(q, w).unwrap());
            radii.push(p.x.hypot(p.y));
        }
        let (lo, hi) = radii
            .iter()
            .fold((f64::MAX, f64::MIN), |(l, h), r| (l.min(*r), h.max(*r)));
        assert!(hi - lo < 1e-9, "radius spread {}", hi - lo);
    }
}
