use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use bolza_core::deform::{self, linspace};
use bolza_core::hyp::{distance, DiskPoint, Isometry};
use bolza_core::quad::{self, build_square, build_square_with_placement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_isometry(rng: &mut ChaCha8Rng) -> Isometry {
    let r = rng.gen_range(0.0..0.9f64);
    let th = rng.gen_range(-PI..PI);
    let p = DiskPoint::new(r * th.cos(), r * th.sin()).unwrap();
    Isometry::rotation(rng.gen_range(-PI..PI)).compose(&Isometry::to_origin(p))
}

#[test]
fn measured_square_matches_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let eps = rng.gen_range(0.0..PI / 4.0 - 0.05);
        let sq = build_square(eps).unwrap();
        for side in sq.measured_sides() {
            assert_abs_diff_eq!(
                side,
                quad::side_length_formula(eps).unwrap().value(),
                epsilon = 1e-9
            );
        }
        let ac = distance(sq.a, sq.c).value();
        assert_abs_diff_eq!(
            ac,
            quad::diagonal_length_formula(eps).unwrap().value(),
            epsilon = 1e-9
        );
        let perp = sq.perpendiculars();
        let y = quad::perpendicular_width(eps).unwrap().value();
        assert_abs_diff_eq!(perp.mn_length, y, epsilon = 1e-9);
        assert_abs_diff_eq!(perp.pq_length, y, epsilon = 1e-9);
        assert_abs_diff_eq!(perp.angle_mon, PI, epsilon = 1e-9);
        assert_abs_diff_eq!(perp.angle_poq, PI, epsilon = 1e-9);
        assert_abs_diff_eq!(
            distance(sq.center, sq.a).value(),
            distance(sq.center, sq.c).value(),
            epsilon = 1e-9
        );
        let ang = sq.measured_angles();
        assert_abs_diff_eq!(ang[0], PI / 4.0 + eps, epsilon = 1e-9);
        assert_abs_diff_eq!(ang[1], PI / 4.0 - eps, epsilon = 1e-9);
        assert_abs_diff_eq!(sq.area(), PI, epsilon = 1e-9);
    }
}

#[test]
fn squares_from_random_placements_are_congruent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let eps = rng.gen_range(0.0..PI / 12.0);
        let reference = build_square(eps).unwrap();
        let other = build_square_with_placement(eps, &random_isometry(&mut rng)).unwrap();
        let (d0, d1) = (reference.distance_matrix(), other.distance_matrix());
        for (r0, r1) in d0.iter().zip(d1.iter()) {
            for (x, y) in r0.iter().zip(r1) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-9);
            }
        }
        // explicit isometry carrying one onto the other
        let map = Isometry::from_point_pairs(reference.a, reference.b, other.a, other.b);
        for (p, q) in reference.vertices().iter().zip(other.vertices()) {
            assert!(distance(map.apply(*p), q).value() < 1e-9);
        }
    }
}

#[test]
fn width_identity_on_grid() {
    for eps in linspace(0.0, PI / 4.0 - 1e-3, 100) {
        let y = quad::perpendicular_width(eps).unwrap().value();
        assert!((y.cosh() - (2f64.sqrt() * eps.cos() + 1.0)).abs() < 1e-12);
    }
}

#[test]
fn lengths_by_hand() {
    // cosh l = cot(π/8 − ε/2) cot(π/8 + ε/2)
    let cot = |t: f64| 1.0 / t.tan();
    for eps in linspace(0.0, PI / 12.0, 13) {
        let s = deform::sample(eps).unwrap();
        let l = (cot(PI / 8.0 - eps / 2.0) * cot(PI / 8.0 + eps / 2.0)).acosh();
        assert_abs_diff_eq!(s.l, l, epsilon = 1e-12);
        assert!(s.l <= s.x + 1e-12);
        assert_abs_diff_eq!(s.sys, 2.0 * s.l.min(s.x), epsilon = 0.0);
    }
}

#[test]
fn finite_differences_of_cosh_lengths() {
    let h = 1e-5;
    for eps in linspace(0.01, PI / 12.0 - 0.01, 25) {
        let cl = |e: f64| quad::side_length_formula(e).unwrap().value().cosh();
        let cx = |e: f64| quad::diagonal_length_formula(e).unwrap().value().cosh();
        let fd_l = (cl(eps + h) - cl(eps - h)) / (2.0 * h);
        let fd_x = (cx(eps + h) - cx(eps - h)) / (2.0 * h);
        assert!(((quad::cosh_side_derivative(eps) - fd_l) / fd_l).abs() < 1e-6);
        assert!(((quad::cosh_diagonal_derivative(eps) - fd_x) / fd_x).abs() < 1e-6);
    }
}
