//! Output formats: point-cloud CSV, SVG dot plots and PGM rasters. All
//! writers are deterministic byte-for-byte for identical inputs.

use std::io::Write;

use crate::orbits::Orbit;
use crate::webs::WebCloud;
use crate::Result;

/// 17 significant digits, enough to round-trip any f64.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Orbit CSV: header `x,y[,z],seed_index,iter`, one row per point.
pub fn write_orbit_csv<W: Write>(out: &mut W, orbit: &Orbit) -> Result<()> {
    writeln!(
        out,
        "{}",
        if orbit.dim == 3 {
            "x,y,z,seed_index,iter"
        } else {
            "x,y,seed_index,iter"
        }
    )?;
    for i in 0..orbit.len() {
        let p = orbit.point(i);
        let coords: Vec<String> = p.iter().map(|v| fmt17(*v)).collect();
        writeln!(out, "{},0,{}", coords.join(","), i)?;
    }
    Ok(())
}

/// Web CSV with per-point seed and iteration indices.
pub fn write_web_csv<W: Write>(out: &mut W, cloud: &WebCloud) -> Result<()> {
    writeln!(out, "x,y,seed_index,iter")?;
    for i in 0..cloud.len() {
        let p = cloud.point(i);
        writeln!(
            out,
            "{},{},{},{}",
            fmt17(p[0]),
            fmt17(p[1]),
            cloud.seed_index[i],
            cloud.iter_index[i]
        )?;
    }
    Ok(())
}

/// Data bounds plus a relative margin; degenerate spans widened to unit size.
fn bounds(points: &[f64], dim: usize, margin: f64) -> ([f64; 2], [f64; 2]) {
    let mut lo = [f64::MAX; 2];
    let mut hi = [f64::MIN; 2];
    for chunk in points.chunks(dim) {
        for k in 0..2 {
            lo[k] = lo[k].min(chunk[k]);
            hi[k] = hi[k].max(chunk[k]);
        }
    }
    for k in 0..2 {
        if !(lo[k] < hi[k]) {
            lo[k] -= 0.5;
            hi[k] += 0.5;
        }
        let m = (hi[k] - lo[k]) * margin;
        lo[k] -= m;
        hi[k] += m;
    }
    (lo, hi)
}

/// SVG dot plot: one circle per point, y axis flipped to mathematical
/// orientation.
pub fn write_svg<W: Write>(
    out: &mut W,
    points: &[f64],
    dim: usize,
    width_px: u32,
    dot_radius: f64,
) -> Result<()> {
    let (lo, hi) = bounds(points, dim, 0.05);
    let span_x = hi[0] - lo[0];
    let span_y = hi[1] - lo[1];
    let height_px = (width_px as f64 * span_y / span_x).ceil().max(1.0) as u32;
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width_px}\" height=\"{height_px}\" viewBox=\"0 0 {width_px} {height_px}\">"
    )?;
    writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>")?;
    for chunk in points.chunks(dim) {
        let px = (chunk[0] - lo[0]) / span_x * width_px as f64;
        let py = (hi[1] - chunk[1]) / span_y * height_px as f64;
        writeln!(
            out,
            "<circle cx=\"{px:.3}\" cy=\"{py:.3}\" r=\"{dot_radius}\" fill=\"black\"/>"
        )?;
    }
    writeln!(out, "</svg>")?;
    Ok(())
}

/// Binary PGM (P5) raster: hit counts per cell clipped to 255, bounds
/// auto-fitted with a 5% margin, white background with dark hits.
pub fn write_pgm<W: Write>(
    out: &mut W,
    points: &[f64],
    dim: usize,
    grid: u32,
) -> Result<()> {
    let raster = rasterize(points, dim, grid);
    write!(out, "P5\n{grid} {grid}\n255\n")?;
    // invert so dense cells are dark on white
    let bytes: Vec<u8> = raster.iter().map(|c| 255 - *c).collect();
    out.write_all(&bytes)?;
    Ok(())
}

/// Hit-count raster (row 0 = top), counts clipped to 255.
pub fn rasterize(points: &[f64], dim: usize, grid: u32) -> Vec<u8> {
    let (lo, hi) = bounds(points, dim, 0.05);
    let g = grid as usize;
    let mut cells = vec![0u8; g * g];
    let span_x = hi[0] - lo[0];
    let span_y = hi[1] - lo[1];
    for chunk in points.chunks(dim) {
        let ix = ((chunk[0] - lo[0]) / span_x * (g as f64 - 1.0)).round() as usize;
        let iy = ((hi[1] - chunk[1]) / span_y * (g as f64 - 1.0)).round() as usize;
        let cell = &mut cells[iy.min(g - 1) * g + ix.min(g - 1)];
        *cell = cell.saturating_add(1);
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::Mode;

    fn orbit2() -> Orbit {
        Orbit {
            map_id: "df".into(),
            dim: 2,
            points: vec![0.0, 1.0, 0.5, -0.25],
            period: None,
            mode: Mode::Float,
        }
    }

    #[test]
    fn csv_headers() {
        let mut buf = Vec::new();
        write_orbit_csv(&mut buf, &orbit2()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x,y,seed_index,iter");
        assert!(lines.next().unwrap().ends_with(",0,0"));
        assert!(text.contains("5.0000000000000000e-1"));
    }

    #[test]
    fn pgm_header_and_size() {
        let mut buf = Vec::new();
        write_pgm(&mut buf, &[0.0, 0.0, 1.0, 1.0], 2, 16).unwrap();
        assert!(buf.starts_with(b"P5\n16 16\n255\n"));
        assert_eq!(buf.len(), 13 + 256);
    }

    #[test]
    fn svg_contains_circles() {
        let mut buf = Vec::new();
        write_svg(&mut buf, &[0.0, 0.0, 1.0, 1.0], 2, 100, 0.5).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("<circle").count(), 2);
        assert!(text.starts_with("<svg"));
    }

    #[test]
    fn deterministic_bytes() {
        let pts: Vec<f64> = (0..500).map(|i| (i as f64 * 0.7).sin()).collect();
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_pgm(&mut a, &pts, 2, 64).unwrap();
        write_pgm(&mut b, &pts, 2, 64).unwrap();
        assert_eq!(a, b);
    }
}
