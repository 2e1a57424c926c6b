//! The map zoo: every discrete map as a pure single-step function, plus a
//! dynamic dispatch wrapper for orbit and web machinery.

pub mod df;
pub mod goetz;
pub mod kicked;
pub mod tangent;

pub use df::{
    d3f_linear_step, d3f_step, df_step, df_step_exact, s_classify, s_classify_exact, sawtooth_f,
    sawtooth_f_exact, wrap_df, wrap_df_exact,
};
pub use goetz::{goetz_complex_step, goetz_toral_step, goetz_toral_step_exact, quad_step, siegel_params};
pub use kicked::{
    adc_step, dkho_step, dkhoy_step, hkm_step, kho_step, saw_std, sawsine_step, std_step,
    stsaw_step, vecheslavov_saw,
};
pub use tangent::{supporting_vertex, tangent_step, tangent_step_with_corner};

use num_complex::Complex64;

use crate::geometry::{ConvexPolygon, Point};
use crate::{Error, Result};

/// A map plus its parameters, in floating mode, dispatchable by id.
#[derive(Debug, Clone)]
pub enum FloatMap {
    Df { a: f64 },
    D3f { a: f64 },
    Adc { a: f64 },
    Std { k: f64 },
    SawSine { k: f64 },
    StSaw { k_saw: f64 },
    Kho { k: f64, w: f64 },
    Hkm { k1: f64, k2: f64 },
    Dkho { w: f64 },
    Dkhoy { w: f64 },
    GoetzComplex { w: f64 },
    GoetzToral { w: f64, beta: f64 },
    Tangent { polygon: ConvexPolygon<f64> },
    Quad { c: Complex64 },
}

impl FloatMap {
    pub fn id(&self) -> &'static str {
        match self {
            FloatMap::Df { .. } => "df",
            FloatMap::D3f { .. } => "d3f",
            FloatMap::Adc { .. } => "adc",
            FloatMap::Std { .. } => "std",
            FloatMap::SawSine { .. } => "sawsine",
            FloatMap::StSaw { .. } => "stsaw",
            FloatMap::Kho { .. } => "kho",
            FloatMap::Hkm { .. } => "hkm",
            FloatMap::Dkho { .. } => "dkho",
            FloatMap::Dkhoy { .. } => "dkhoy",
            FloatMap::GoetzComplex { .. } => "goetz_c",
            FloatMap::GoetzToral { .. } => "goetz_t",
            FloatMap::Tangent { .. } => "tangent",
            FloatMap::Quad { .. } => "quad",
        }
    }

    /// Phase-space dimension (3 only for the third-order filter).
    pub fn dim(&self) -> usize {
        match self {
            FloatMap::D3f { .. } => 3,
            _ => 2,
        }
    }

    /// One step; `p` and the result have length `dim()`.
    pub fn step(&self, p: &[f64]) -> Result<Vec<f64>> {
        let pt = || Point::new(p[0], p[1]);
        let out2 = |q: Point<f64>| vec![q.x, q.y];
        Ok(match self {
            FloatMap::Df { a } => out2(df_step(pt(), *a)),
            FloatMap::D3f { a } => d3f_step([p[0], p[1], p[2]], *a).to_vec(),
            FloatMap::Adc { a } => out2(adc_step(pt(), *a)),
            FloatMap::Std { k } => out2(std_step(pt(), *k)),
            FloatMap::SawSine { k } => out2(sawsine_step(pt(), *k)),
            FloatMap::StSaw { k_saw } => out2(stsaw_step(pt(), *k_saw)),
            FloatMap::Kho { k, w } => out2(kho_step(pt(), *k, *w)),
            FloatMap::Hkm { k1, k2 } => out2(hkm_step(pt(), *k1, *k2)),
            FloatMap::Dkho { w } => out2(dkho_step(pt(), *w)),
            FloatMap::Dkhoy { w } => out2(dkhoy_step(pt(), *w)),
            FloatMap::GoetzComplex { w } => {
                let z = goetz_complex_step(Complex64::new(p[0], p[1]), *w);
                vec![z.re, z.im]
            }
            FloatMap::GoetzToral { w, beta } => out2(goetz_toral_step(pt(), *w, *beta)),
            FloatMap::Tangent { polygon } => out2(tangent_step(&pt(), polygon)?),
            FloatMap::Quad { c } => {
                let z = quad_step(Complex64::new(p[0], p[1]), *c);
                vec![z.re, z.im]
            }
        })
    }

    /// Parse "df", "kho", ... together with parameters.
    pub fn from_id(id: &str, theta: f64, k1: f64, k2: f64, beta: f64,
                   polygon: Option<ConvexPolygon<f64>>) -> Result<FloatMap> {
        let a = 2.0 * theta.cos();
        Ok(match id {
            "df" => FloatMap::Df { a },
            "d3f" => FloatMap::D3f { a },
            "adc" => FloatMap::Adc { a },
            "std" => FloatMap::Std { k: k1 },
            "sawsine" => FloatMap::SawSine { k: k1 },
            "stsaw" => FloatMap::StSaw { k_saw: a - 2.0 },
            "kho" => FloatMap::Kho { k: k1, w: theta },
            "hkm" => FloatMap::Hkm { k1, k2 },
            "dkho" => FloatMap::Dkho { w: theta },
            "dkhoy" => FloatMap::Dkhoy { w: theta },
            "goetz_c" => FloatMap::GoetzComplex { w: theta },
            "goetz_t" => FloatMap::GoetzToral { w: theta, beta },
            "tangent" => FloatMap::Tangent {
                polygon: polygon.ok_or_else(|| {
                    Error::Parse("tangent map needs --polygon".into())
                })?,
            },
            "quad" => {
                let (_, c) = siegel_params(k1);
                FloatMap::Quad { c }
            }
            other => {
                return Err(Error::Parse(format!(
                    "unknown map id '{other}' (expected one of df, d3f, adc, std, sawsine, \
                     stsaw, kho, hkm, dkho, dkhoy, goetz_c, goetz_t, tangent, quad)"
                )))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_matches_direct() {
        let a = 2.0 * (std::f64::consts::TAU / 14.0).cos();
        let m = FloatMap::Df { a };
        let q = m.step(&[0.1, 0.2]).unwrap();
        let d = df_step(Point::new(0.1, 0.2), a);
        assert_eq!(q, vec![d.x, d.y]);
        assert_eq!(m.dim(), 2);
        assert_eq!(FloatMap::D3f { a }.dim(), 3);
    }

    #[test]
    fn id_roundtrip() {
        let m = FloatMap::from_id("stsaw", std::f64::consts::TAU / 14.0, 0.0, 0.0, 0.0, None)
            .unwrap();
        assert_eq!(m.id(), "stsaw");
        match m {
            FloatMap::StSaw { k_saw } => assert!((k_saw - -0.19806226419516171).abs() < 1e-15),
            _ => panic!(),
        }
        assert!(FloatMap::from_id("nope", 1.0, 0.0, 0.0, 0.0, None).is_err());
        assert!(FloatMap::from_id("tangent", 1.0, 0.0, 0.0, 0.0, None).is_err());
    }
}
