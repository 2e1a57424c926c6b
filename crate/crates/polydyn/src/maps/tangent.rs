//! Outer billiards: the Tangent map t(p) = -p + 2c, where c is the supporting
//! vertex of the oriented convex polygon as seen from p.
//!
//! Generic over the coordinate scalar so the same code runs in floating
//! point, exact rationals (lattice polygons) and algebraic numbers
//! (regular polygons).

use crate::geometry::{ConvexPolygon, Coord, Orientation, Point};
use crate::{Error, Result};

/// The supporting-vertex index for p (0-based). For counterclockwise
/// orientation the vertex c satisfies cross(c - p, u - p) > 0 for every other
/// vertex u; clockwise mirrors the sign. Any exact zero means p sits on a
/// trailing-edge line, where the map is undefined.
pub fn supporting_vertex<T: Coord>(p: &Point<T>, poly: &ConvexPolygon<T>) -> Result<usize> {
    if poly.contains_strict(p) {
        return Err(Error::InsidePolygon);
    }
    let want = match poly.orientation {
        Orientation::Counterclockwise => 1,
        Orientation::Clockwise => -1,
    };
    let verts = &poly.vertices;
    'candidates: for (i, c) in verts.iter().enumerate() {
        let mut saw_tie = false;
        for (j, u) in verts.iter().enumerate() {
            if i == j {
                continue;
            }
            let cx = c.x.sub(&p.x);
            let cy = c.y.sub(&p.y);
            let ux = u.x.sub(&p.x);
            let uy = u.y.sub(&p.y);
            let cross = cx.mul(&uy).sub(&cy.mul(&ux));
            match cross.signum() {
                0 => saw_tie = true,
                s if s == want => {}
                _ => continue 'candidates,
            }
        }
        if saw_tie {
            return Err(Error::OnTrailingEdge);
        }
        return Ok(i);
    }
    // No strict supporting vertex: p is on a boundary/extension configuration.
    Err(Error::OnTrailingEdge)
}

/// One Tangent-map step with the visited corner (1-based), for corner
/// sequences.
pub fn tangent_step_with_corner<T: Coord>(
    p: &Point<T>,
    poly: &ConvexPolygon<T>,
) -> Result<(Point<T>, usize)> {
    let i = supporting_vertex(p, poly)?;
    let c = &poly.vertices[i];
    let two = p.x.constant(2);
    let q = Point::new(
        two.mul(&c.x).sub(&p.x),
        two.mul(&c.y).sub(&p.y),
    );
    Ok((q, i + 1))
}

/// One Tangent-map step: reflection of p through the supporting vertex.
pub fn tangent_step<T: Coord>(p: &Point<T>, poly: &ConvexPolygon<T>) -> Result<Point<T>> {
    Ok(tangent_step_with_corner(p, poly)?.0)
}
