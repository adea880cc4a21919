use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use bolza_core::hyp::{
    distance, law_of_cosines_side, realize_triangle, right_adjacent, right_hypotenuse,
    right_opposite, side_from_angles, Angle, DiskPoint, HypLength, Isometry,
};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = DiskPoint> {
    (0.0..0.95f64, -PI..PI).prop_map(|(r, th)| DiskPoint::new(r * th.cos(), r * th.sin()).unwrap())
}

fn isometry() -> impl Strategy<Value = Isometry> {
    (point(), -PI..PI, any::<bool>()).prop_map(|(p, th, rev)| {
        let iso = Isometry::rotation(th).compose(&Isometry::to_origin(p));
        if rev {
            iso.compose(&Isometry::conjugation())
        } else {
            iso
        }
    })
}

fn len(v: f64) -> HypLength {
    HypLength::positive(v).unwrap()
}

fn ang(v: f64) -> Angle {
    Angle::new(v).unwrap()
}

proptest! {
    #[test]
    fn isometries_preserve_distance(iso in isometry(), p in point(), q in point()) {
        let before = distance(p, q).value();
        let after = distance(iso.apply(p), iso.apply(q)).value();
        prop_assert!((before - after).abs() < 1e-10 * before.max(1.0));
    }

    #[test]
    fn composition_is_associative(f in isometry(), g in isometry(), h in isometry(), p in point()) {
        let left = f.compose(&g).compose(&h).apply(p);
        let right = f.compose(&g.compose(&h)).apply(p);
        prop_assert!(distance(left, right).value() < 1e-9);
    }

    #[test]
    fn inverse_undoes(f in isometry(), p in point()) {
        prop_assert!(distance(f.inverse().apply(f.apply(p)), p).value() < 1e-9);
    }

    #[test]
    fn metric_axioms(p in point(), q in point(), r in point()) {
        let (pq, qp) = (distance(p, q).value(), distance(q, p).value());
        prop_assert!((pq - qp).abs() < 1e-12 * pq.max(1.0));
        prop_assert!(distance(p, p).value() == 0.0);
        let pr = distance(p, r).value();
        let qr = distance(q, r).value();
        prop_assert!(pr <= pq + qr + 1e-9);
    }

    #[test]
    fn reflection_is_involution(p in point(), q in point(), s in point()) {
        prop_assume!(distance(p, q).value() > 1e-3);
        let r = Isometry::reflect_across_geodesic(p, q);
        prop_assert!(distance(r.compose(&r).apply(s), s).value() < 1e-9);
        prop_assert!(distance(r.apply(p), p).value() < 1e-9);
    }

    // Build a right triangle from its legs in the disk and read off every
    // quantity the right-triangle formulas predict.
    #[test]
    fn right_triangle_formulas_agree(a in 0.05..3.0f64, b in 0.05..3.0f64) {
        let right = DiskPoint::ORIGIN;
        let pa = DiskPoint::polar(a, 0.0);
        let pb = DiskPoint::polar(b, PI / 2.0);
        let c = distance(pa, pb).value();
        let alpha = bolza_core::hyp::angle_at(pb, pa, right); // opposite a
        let beta = bolza_core::hyp::angle_at(pa, pb, right); // opposite b

        prop_assert!((right_hypotenuse(len(a), len(b)).unwrap().value() - c).abs() < 1e-9);
        prop_assert!((right_opposite(ang(alpha), len(c)).unwrap().value() - a).abs() < 1e-9);
        // angle β is adjacent to leg a
        prop_assert!((right_adjacent(ang(beta), len(b)).unwrap().value() - a).abs() < 1e-9);
        let via_cosines = law_of_cosines_side(len(a), len(b), Angle::pi_frac(1, 2).unwrap());
        prop_assert!((via_cosines.unwrap().value() - c).abs() < 1e-9);
    }

    #[test]
    fn angles_sides_angles_round_trip(w in prop::array::uniform3(0.05..1.0f64)) {
        let s: f64 = w.iter().sum();
        let scale = 0.97 * PI / s.max(PI);
        let [al, be, ga] = w.map(|x| ang(x * scale));
        let tri = realize_triangle(al, be, ga).unwrap();
        let sides = tri.sides.map(|h| h.value());
        // rebuild each angle from the three sides by the law of cosines
        let recover = |opp: f64, s1: f64, s2: f64| {
            ((s1.cosh() * s2.cosh() - opp.cosh()) / (s1.sinh() * s2.sinh())).clamp(-1.0, 1.0).acos()
        };
        let got = [
            recover(sides[0], sides[1], sides[2]),
            recover(sides[1], sides[0], sides[2]),
            recover(sides[2], sides[0], sides[1]),
        ];
        for (g, want) in got.iter().zip([al, be, ga]) {
            prop_assert!((g - want.radians()).abs() < 1e-9);
        }
        let c = law_of_cosines_side(tri.sides[0], tri.sides[1], ga).unwrap().value();
        prop_assert!((c - side_from_angles(al, be, ga).unwrap().value()).abs() < 1e-9);
        let measured = tri.measured_angles();
        for (m, want) in measured.iter().zip([al, be, ga]) {
            prop_assert!((m - want.radians()).abs() < 1e-9);
        }
    }

    #[test]
    fn realization_unique_up_to_isometry(iso in isometry(), w in prop::array::uniform3(0.1..1.0f64)) {
        let s: f64 = w.iter().sum();
        let [al, be, ga] = w.map(|x| ang(x * 0.9 * PI / s));
        let tri = realize_triangle(al, be, ga).unwrap();
        let moved = tri.transformed(&iso);
        let [p0, p1, p2] = tri.vertices;
        let [q0, q1, q2] = moved.vertices;
        let mut map = Isometry::from_point_pairs(p0, p1, q0, q1);
        if distance(map.apply(p2), q2).value() > 1e-6 {
            // mirror image: fold across the first side before matching
            map = map.compose(&Isometry::reflect_across_geodesic(p0, p1));
        }
        for (p, q) in tri.vertices.iter().zip(moved.vertices) {
            prop_assert!(distance(map.apply(*p), q).value() < 1e-9);
        }
    }
}

/// Hyperbolic area of a geodesic triangle by quadrature in the Klein model,
/// where geodesics are chords and the area element is `(1 − |k|²)^(−3/2)`.
fn klein_area(v: [DiskPoint; 3], n: usize) -> f64 {
    let k = v.map(|p| p.to_klein());
    let density = |x: f64, y: f64| (1.0 - x * x - y * y).powf(-1.5);
    let at = |i: f64, j: f64| {
        let (u, w) = (i / n as f64, j / n as f64);
        [
            k[0][0] + u * (k[1][0] - k[0][0]) + w * (k[2][0] - k[0][0]),
            k[0][1] + u * (k[1][1] - k[0][1]) + w * (k[2][1] - k[0][1]),
        ]
    };
    let jac = ((k[1][0] - k[0][0]) * (k[2][1] - k[0][1])
        - (k[2][0] - k[0][0]) * (k[1][1] - k[0][1]))
        .abs();
    let cell = jac / (2.0 * (n * n) as f64);
    let mut total = 0.0;
    // edge-midpoint rule on each of the n² sub-triangles
    let mut tri = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| {
        let mid = |p: [f64; 2], q: [f64; 2]| density((p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0);
        total += cell * (mid(a, b) + mid(b, c) + mid(c, a)) / 3.0;
    };
    for i in 0..n {
        for j in 0..n - i {
            let (fi, fj) = (i as f64, j as f64);
            tri(at(fi, fj), at(fi + 1.0, fj), at(fi, fj + 1.0));
            if i + j + 1 < n {
                tri(at(fi + 1.0, fj), at(fi + 1.0, fj + 1.0), at(fi, fj + 1.0));
            }
        }
    }
    total
}

#[test]
fn angle_defect_matches_quadrature() {
    for (al, be, ga) in [
        (PI / 3.0, PI / 4.0, PI / 6.0),
        (PI / 2.0, PI / 5.0, PI / 7.0),
    ] {
        let tri = realize_triangle(ang(al), ang(be), ang(ga)).unwrap();
        let numeric = klein_area(tri.vertices, 400);
        assert_abs_diff_eq!(tri.area(), PI - al - be - ga, epsilon = 1e-12);
        assert!(
            (numeric - tri.area()).abs() < 1e-5 * tri.area(),
            "{numeric} vs {}",
            tri.area()
        );
    }
}

#[test]
fn equilateral_sixth_turn_triangle() {
    let tri = realize_triangle(ang(PI / 6.0), ang(PI / 6.0), ang(PI / 6.0)).unwrap();
    for s in tri.measured_sides() {
        assert_abs_diff_eq!(s, 2.553_373_736_760_691, epsilon = 1e-9);
    }
}

#[test]
fn euclidean_angle_sum_rejected() {
    let t = ang(PI / 3.0);
    assert!(side_from_angles(t, t, t).is_err());
    assert!(realize_triangle(t, t, t).is_err());
}
