//! Property tests for the map and field invariants.

use proptest::prelude::*;

use num_bigint::BigInt;
use num_rational::BigRational;

use polydyn::conjugacy::stsaw_to_df;
use polydyn::exact::AlgebraicReal;
use polydyn::geometry::Point;
use polydyn::maps::{df_step, goetz_toral_step, s_classify, sawtooth_f, stsaw_step};
use polydyn::symbolic::{step_sequence, winding_number, Alphabet, SymbolSequence};

const TAU: f64 = std::f64::consts::TAU;

fn near_odd_integer(z: f64, eps: f64) -> bool {
    let r = (z.abs() + 1.0) % 2.0;
    r < eps || r > 2.0 - eps
}

proptest! {
    #[test]
    fn sawtooth_range(z in -100.0f64..100.0) {
        let f = sawtooth_f(z);
        prop_assert!((-1.0..1.0).contains(&f), "f({z}) = {f}");
    }

    #[test]
    fn sawtooth_odd_off_boundaries(z in -4.9f64..4.9) {
        prop_assume!(!near_odd_integer(z, 1e-9));
        prop_assert_eq!(sawtooth_f(-z), -sawtooth_f(z));
    }

    #[test]
    fn sawtooth_is_a_two_shift(z in -4.9f64..4.9) {
        let f = sawtooth_f(z);
        let k = (z - f) / 2.0;
        prop_assert_eq!(k, k.round(), "shift {} not an even integer", z - f);
    }

    #[test]
    fn df_kick_decomposition(x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let a = 2.0 * (TAU / 14.0).cos();
        let q = df_step(Point::new(x, y), a);
        let lin_y = -x + a * y;
        let kick = q.y - lin_y;
        prop_assert_eq!(q.x, y);
        prop_assert!(
            kick.abs() < 1e-12 || (kick.abs() - 2.0).abs() < 1e-12,
            "kick {kick}"
        );
        // classifier odd symmetry off the lines
        if !near_odd_integer(lin_y, 1e-9) {
            prop_assert_eq!(
                s_classify(&Point::new(x, y), a),
                -s_classify(&Point::new(-x, -y), a)
            );
        }
    }

    #[test]
    fn stsaw_df_commutation(x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let theta = TAU / 14.0;
        let a = 2.0 * theta.cos();
        let lhs = stsaw_to_df(stsaw_step(Point::new(x, y), a - 2.0));
        let rhs = df_step(stsaw_to_df(Point::new(x, y)), a);
        prop_assert!((lhs.x - rhs.x).abs() < 1e-9 && (lhs.y - rhs.y).abs() < 1e-9);
    }

    #[test]
    fn goetz_toral_stays_on_torus(x in 0.0f64..1.0, y in 0.0f64..1.0, w in 0.05f64..3.0) {
        let q = goetz_toral_step(Point::new(x, y), w, 0.0);
        prop_assert!((0.0..1.0).contains(&q.x) && (0.0..1.0).contains(&q.y));
    }

    #[test]
    fn constant_steps_wind_exactly(k in 1i64..=7, reps in 1usize..40) {
        let n = 7u32;
        let steps = SymbolSequence::new(vec![k; reps], Alphabet::Corner(n), "t").unwrap();
        let w = winding_number(&steps, n).unwrap();
        prop_assert!((w - k as f64 / n as f64).abs() < 1e-15);
    }

    #[test]
    fn step_sequences_stay_in_alphabet(corners in proptest::collection::vec(1i64..=9, 2..50)) {
        let seq = SymbolSequence::new(corners, Alphabet::Corner(9), "t").unwrap();
        let steps = step_sequence(&seq).unwrap();
        prop_assert!(steps.symbols.iter().all(|s| (1..=9).contains(s)));
    }

    #[test]
    fn algebraic_serde_roundtrip(
        n in prop::sample::select(vec![5u32, 7, 10, 14]),
        nums in proptest::collection::vec(-50i64..50, 1..6),
    ) {
        let d = polydyn::exact::field(n).unwrap().degree();
        let g = AlgebraicReal::generator(n).unwrap();
        let mut acc = AlgebraicReal::zero(n).unwrap();
        for v in nums.iter().take(d) {
            acc = acc.try_mul(&g).unwrap();
            let q = BigRational::new(BigInt::from(*v), BigInt::from(17));
            acc = acc.try_add(&AlgebraicReal::from_rational(n, q).unwrap()).unwrap();
        }
        let json = serde_json::to_string(&acc).unwrap();
        let back: AlgebraicReal = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, acc);
    }

    #[test]
    fn exact_float_sawtooth_agree(v in -300i64..300) {
        let q = BigRational::new(BigInt::from(v), BigInt::from(100));
        let z = AlgebraicReal::from_rational(14, q).unwrap();
        let exact = polydyn::maps::sawtooth_f_exact(&z).unwrap();
        let float = sawtooth_f(v as f64 / 100.0);
        prop_assert!((exact.to_f64() - float).abs() < 1e-12);
    }
}
