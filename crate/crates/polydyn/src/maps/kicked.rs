//! Kicked maps: the ADC map, Standard Map, the two sawtooth Standard Maps,
//! the Web map (KHO), the Harper kicked map, and the dissipative KHO pair.

use crate::geometry::Point;

const TAU: f64 = std::f64::consts::TAU;

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Analog-to-digital converter map:
/// (x, y) -> (y, 2cos(w)(y - sgn y) - (x - sgn x)).
pub fn adc_step(p: Point<f64>, a: f64) -> Point<f64> {
    Point::new(p.y, a * (p.y - sgn(p.y)) - (p.x - sgn(p.x)))
}

/// Standard Map on the unit torus, both coordinates mod 1.
pub fn std_step(p: Point<f64>, k: f64) -> Point<f64> {
    let kick = k / TAU * (TAU * p.x).sin();
    Point::new(
        (p.y + kick + p.x).rem_euclid(1.0),
        (p.y + kick).rem_euclid(1.0),
    )
}

/// Vecheslavov's piecewise-linear sine profile on [0, 1].
pub fn vecheslavov_saw(x: f64) -> f64 {
    if x <= 0.25 {
        4.0 * x
    } else if (0.5 - x).abs() <= 0.25 {
        4.0 * (0.5 - x)
    } else {
        4.0 * (x - 1.0)
    }
}

/// Standard Map with the sine kick replaced by the Vecheslavov sawtooth.
pub fn sawsine_step(p: Point<f64>, k: f64) -> Point<f64> {
    let kick = k * vecheslavov_saw(p.y);
    Point::new((p.x + kick).rem_euclid(1.0), (p.x + kick + p.y).rem_euclid(1.0))
}

/// Centred sawtooth: x - floor(x) - 1/2.
pub fn saw_std(x: f64) -> f64 {
    x - x.floor() - 0.5
}

/// The Sawtooth Standard Map (conjugate to Df): stiffness k = 2cos(theta) - 2.
pub fn stsaw_step(p: Point<f64>, k_saw: f64) -> Point<f64> {
    let kick = k_saw * saw_std(p.y);
    Point::new((p.x + kick).rem_euclid(1.0), (p.x + kick + p.y).rem_euclid(1.0))
}

/// Web map (kicked harmonic oscillator at rotation w):
/// rotate (x + K sin y, y) clockwise by w.
pub fn kho_step(p: Point<f64>, k: f64, w: f64) -> Point<f64> {
    let u = p.x + k * p.y.sin();
    Point::new(
        u * w.cos() + p.y * w.sin(),
        -u * w.sin() + p.y * w.cos(),
    )
}

/// Harper kicked map: (x, p) -> (x - K1 sin(p + K2 sin x), p + K2 sin x).
pub fn hkm_step(p: Point<f64>, k1: f64, k2: f64) -> Point<f64> {
    let momentum = p.y + k2 * p.x.sin();
    Point::new(p.x - k1 * momentum.sin(), momentum)
}

/// Dissipative KHO with the discontinuity line on the y-axis.
pub fn dkho_step(p: Point<f64>, w: f64) -> Point<f64> {
    let u = p.x - sgn(p.y);
    Point::new(-p.y * w.sin() + u * w.cos(), p.y * w.cos() + u * w.sin())
}

/// The 'Y' variant of the dissipative KHO: kicks depend on y and land on x,
/// which aligns the web with the x-axis.
pub fn dkhoy_step(p: Point<f64>, w: f64) -> Point<f64> {
    let u = p.x - sgn(p.y);
    Point::new(u * w.cos() + p.y * w.sin(), -u * w.sin() + p.y * w.cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    const W5: f64 = TAU / 5.0;

    #[test]
    fn adc_examples() {
        let z = adc_step(Point::new(0.0, 0.0), -0.8);
        assert_eq!((z.x, z.y), (0.0, 0.0));
        let z = adc_step(Point::new(1.0, 0.0), -0.8);
        assert_eq!((z.x, z.y), (0.0, 0.0));
        let a = 2.0 * W5.cos();
        let z = adc_step(Point::new(0.5, -0.5), a);
        assert!((z.x - -0.5).abs() < 1e-15);
        assert!((z.y - (a * 0.5 + 0.5)).abs() < 1e-15);
        assert!((z.y - 0.809017).abs() < 1e-6);
    }

    #[test]
    fn std_fixed_points_and_twist() {
        for k in [0.5, 1.0, 3.0] {
            let p = std_step(Point::new(0.0, 0.0), k);
            assert!((p.x, p.y) == (0.0, 0.0));
            let q = std_step(Point::new(0.5, 0.0), k);
            assert!((q.x - 0.5).abs() < 1e-12 && q.y.abs() < 1e-12);
        }
        let t = std_step(Point::new(0.25, 0.1), 0.0);
        assert!((t.x - 0.35).abs() < 1e-15 && (t.y - 0.1).abs() < 1e-15);
    }

    #[test]
    fn vecheslavov_profile() {
        assert_eq!(vecheslavov_saw(0.125), 0.5);
        assert_eq!(vecheslavov_saw(0.5), 0.0);
        assert_eq!(vecheslavov_saw(0.875), -0.5);
    }

    #[test]
    fn stsaw_fixed_point() {
        assert_eq!(saw_std(0.75), 0.25);
        let k = 2.0 * (TAU / 14.0).cos() - 2.0;
        assert!((k - -0.198062).abs() < 1e-6);
        let p = stsaw_step(Point::new(0.0, 0.5), k);
        assert!((p.x, p.y) == (0.0, 0.5));
    }

    #[test]
    fn kho_special_cases() {
        // K = 0, w = pi/2: pure clockwise rotation.
        let p = kho_step(Point::new(1.0, 0.0), 0.0, std::f64::consts::FRAC_PI_2);
        assert!(p.x.abs() < 1e-15 && (p.y - -1.0).abs() < 1e-15);
        // w = 2pi/4: equals (x, y) -> (y, -(x + K sin y)).
        let k = 1.5;
        let q = Point::new(0.3, -0.7);
        let got = kho_step(q.clone(), k, TAU / 4.0);
        assert!((got.x - q.y).abs() < 1e-15);
        assert!((got.y - -(q.x + k * q.y.sin())).abs() < 1e-15);
        let o = kho_step(Point::new(0.0, 0.0), 1.5, W5);
        assert!((o.x, o.y) == (0.0, 0.0));
    }

    #[test]
    fn hkm_examples() {
        let o = hkm_step(Point::new(0.0, 0.0), 1.5, 1.5);
        assert!((o.x, o.y) == (0.0, 0.0));
        let p = Point::new(0.77, -0.15);
        let id = hkm_step(p.clone(), 0.0, 0.0);
        assert_eq!((id.x, id.y), (p.x, p.y));
        let h = hkm_step(Point::new(std::f64::consts::FRAC_PI_2, 0.0), 1.5, 1.5);
        assert!((h.x - (std::f64::consts::FRAC_PI_2 - 1.5 * 1.5f64.sin())).abs() < 1e-14);
        assert!((h.y - 1.5).abs() < 1e-15);
    }

    #[test]
    fn dkhoy_kickless_on_axis() {
        // (x, 0): no kick, pure rotation by -w.
        let w = TAU / 7.0;
        let p = dkhoy_step(Point::new(2.0, 0.0), w);
        assert!((p.x - 2.0 * w.cos()).abs() < 1e-15);
        assert!((p.y - -2.0 * w.sin()).abs() < 1e-15);
        let o = dkho_step(Point::new(0.0, 0.0), w);
        assert!((o.x, o.y) == (0.0, 0.0));
        // (1,1) under dkhoy with w = 2pi/5: (sin w, cos w).
        let q = dkhoy_step(Point::new(1.0, 1.0), W5);
        assert!((q.x - W5.sin()).abs() < 1e-15 && (q.y - W5.cos()).abs() < 1e-15);
    }

    #[test]
    fn area_preservation_finite_difference() {
        // Jacobian determinant 1 where differentiable, checked by finite
        // differences at random points.
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut rnd = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let h = 1e-6;
        let maps: Vec<(&str, Box<dyn Fn(Point<f64>) -> Point<f64>>)> = vec![
            ("std", Box::new(|p| std_step(p, 1.3))),
            ("stsaw", Box::new(|p| stsaw_step(p, -0.198))),
            ("kho", Box::new(|p| kho_step(p, 1.5, TAU / 5.0))),
            ("hkm", Box::new(|p| hkm_step(p, 1.5, 1.5))),
        ];
        for (name, f) in &maps {
            let mut checked = 0;
            while checked < 1000 {
                let p = Point::new(rnd() * 0.8 + 0.05, rnd() * 0.8 + 0.05);
                // keep clear of mod-1 wraps for the finite difference
                let probe = [
                    f(Point::new(p.x + h, p.y)),
                    f(Point::new(p.x - h, p.y)),
                    f(Point::new(p.x, p.y + h)),
                    f(Point::new(p.x, p.y - h)),
                ];
                let spread = probe
                    .iter()
                    .flat_map(|q| [q.x, q.y])
                    .fold((f64::MAX, f64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
                if spread.1 - spread.0 > 0.5 {
                    continue; // straddles a discontinuity or wrap
                }
                let dxx = (probe[0].x - probe[1].x) / (2.0 * h);
                let dyx = (probe[0].y - probe[1].y) / (2.0 * h);
                let dxy = (probe[2].x - probe[3].x) / (2.0 * h);
                let dyy = (probe[2].y - probe[3].y) / (2.0 * h);
                let det = dxx * dyy - dxy * dyx;
                assert!((det - 1.0).abs() < 1e-6, "{name}: det = {det} at {p:?}");
                checked += 1;
            }
        }
    }
}
