//! Property tests for the kernel: incidence of constructed objects, duality,
//! and exactness of the polynomial predicates on the rational backend.

use circlekit::kernel::{
    circle_through, circles_orthogonal, meet_lines, polar_line, pole_of_line, power_of_point,
    radical_axis, Circle, Line, Point, Rat, Scalar, ToleranceContext,
};
use proptest::prelude::*;

fn ctx() -> ToleranceContext {
    ToleranceContext::default()
}

/// Dyadic coordinate strategy: exactly representable on both backends.
fn coord() -> impl Strategy<Value = f64> {
    (-(1i64 << 20)..=(1i64 << 20)).prop_map(|n| n as f64 / (1 << 20) as f64)
}

fn point() -> impl Strategy<Value = Point<f64>> {
    (coord(), coord()).prop_map(|(x, y)| Point::xy(x, y))
}

fn line() -> impl Strategy<Value = Line<f64>> {
    (point(), point())
        .prop_filter("distinct points", |(p, q)| p.dist2(q) > 1e-6)
        .prop_map(|(p, q)| Line::through(&p, &q, &ctx()).unwrap())
}

fn circle() -> impl Strategy<Value = Circle<f64>> {
    (point(), 0.05f64..1.5)
        .prop_map(|(c, r)| Circle::new(c, r * r).unwrap())
}

fn rat_point() -> impl Strategy<Value = Point<Rat>> {
    ((-64i64..=64, 1i64..=16), (-64i64..=64, 1i64..=16))
        .prop_map(|((nx, dx), (ny, dy))| Point::finite(Rat::new(nx, dx), Rat::new(ny, dy)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// The meet of two lines lies on both lines.
    #[test]
    fn meet_lies_on_both_lines(l1 in line(), l2 in line()) {
        let c = ctx();
        match meet_lines(&l1, &l2, &c) {
            Ok(p) if p.is_finite() => {
                prop_assert!(l1.eval(&p).abs() <= 1e-9);
                prop_assert!(l2.eval(&p).abs() <= 1e-9);
            }
            Ok(p) => {
                // Parallel: the common direction annihilates both normals.
                let d = p.direction();
                prop_assert!(l1.normal().dot(&d).abs() <= 1e-9);
                prop_assert!(l2.normal().dot(&d).abs() <= 1e-9);
            }
            Err(_) => {} // coincident under tolerance
        }
    }

    /// Any point of the radical axis has equal powers to the two circles.
    #[test]
    fn radical_axis_has_equal_powers(c1 in circle(), c2 in circle(), probe in point()) {
        let c = ctx();
        if let Ok(axis) = radical_axis(&c1, &c2, &c) {
            let on_axis = axis.project(&probe);
            let diff = power_of_point(&on_axis, &c1) - power_of_point(&on_axis, &c2);
            prop_assert!(diff.abs() <= 1e-9, "diff = {diff}");
        }
    }

    /// polar_line and pole_of_line are mutually inverse.
    #[test]
    fn pole_polar_inverse(p in point(), c in circle()) {
        let tol = ctx();
        prop_assume!(p.dist2(c.center()) > 1e-4);
        let polar = polar_line(&p, &c, &tol).unwrap();
        let back = pole_of_line(&polar, &c, &tol).unwrap();
        prop_assert!(back.approx_eq(&p, &ToleranceContext::new(1e-6, 1e-6, 1.0)));
    }

    /// La Hire: Q on the polar of P iff P on the polar of Q. Both normalized
    /// incidence defects rescale to the same symmetric bilinear form
    /// (P - O).(Q - O) - r^2, so the defect of one vanishes exactly when the
    /// other does.
    #[test]
    fn la_hire_symmetry(p in point(), q in point(), c in circle()) {
        let tol = ctx();
        prop_assume!(p.dist2(c.center()) > 1e-4 && q.dist2(c.center()) > 1e-4);
        let polar_p = polar_line(&p, &c, &tol).unwrap();
        let polar_q = polar_line(&q, &c, &tol).unwrap();
        let d1 = polar_p.eval(&q).abs() * p.dist2(c.center()).sqrt();
        let d2 = polar_q.eval(&p).abs() * q.dist2(c.center()).sqrt();
        prop_assert!((d1 - d2).abs() <= 1e-9 * (1.0 + d1.abs()), "{d1} vs {d2}");
    }

    /// circle_through passes through its three defining points.
    #[test]
    fn circle_through_contains_inputs(p in point(), q in point(), r in point()) {
        let tol = ctx();
        if let Ok(c) = circle_through(&p, &q, &r, &tol) {
            for pt in [&p, &q, &r] {
                prop_assert!(c.on_circle_defect(pt) <= 1e-9);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Exact power of a point on the rational backend: d^2 - r^2 with no
    /// rounding at all.
    #[test]
    fn rational_power_is_exact(p in rat_point(), c in rat_point(), rn in 1i64..=40, rd in 1i64..=8) {
        let r2 = Rat::new(rn, rd);
        let circle = Circle::new(c.clone(), r2.clone()).unwrap();
        let pow = power_of_point(&p, &circle);
        let expect = p.dist2(&c) - r2;
        prop_assert_eq!(pow, expect);
    }

    /// Constructed orthogonal circle pairs have residual exactly zero on the
    /// rational backend: center distance squared is declared as r1^2 + r2^2.
    #[test]
    fn rational_orthogonality_is_exact(
        c1 in rat_point(),
        c2 in rat_point(),
        rn in 1i64..=30,
        rd in 1i64..=6,
    ) {
        let d2 = c1.dist2(&c2);
        prop_assume!(d2 > Rat::new(0, 1));
        let r1 = Rat::new(rn, rd);
        prop_assume!(d2.clone() - r1.clone() > Rat::new(0, 1));
        let r2 = d2 - r1.clone();
        let a = Circle::new(c1, r1).unwrap();
        let b = Circle::new(c2, r2).unwrap();
        prop_assert!(circles_orthogonal(&a, &b).is_zero_exact());
    }

    /// Line normalization is stable: renormalizing scaled coefficients gives
    /// identical lines on the rational backend.
    #[test]
    fn rational_line_normalization_canonical(
        p in rat_point(),
        q in rat_point(),
        sn in 1i64..=20,
        sd in 1i64..=20,
    ) {
        let tol = ctx();
        prop_assume!(p != q);
        let l = Line::through(&p, &q, &tol).unwrap();
        let (a, b, c) = l.coeffs();
        let s = Rat::new(sn, sd);
        let scaled = Line::from_coeffs(a * s.clone(), b * s.clone(), c * s).unwrap();
        prop_assert_eq!(l, scaled);
    }
}
