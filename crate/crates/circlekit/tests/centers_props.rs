//! Invariants of the centers module: antiparallel midpoints, isogonal
//! involution, rank-k cevian concurrency, the nine-point relations, and
//! Sylvester's relation, over seeded random triangle streams.

use circlekit::centers::{CenterId, Triangle, Vertex};
use circlekit::kernel::{meet_lines, Line, Point, Rat, ToleranceContext};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dyadic(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let t = rng.gen_range(0..=(1 << 20)) as f64 / (1 << 20) as f64;
    lo + t * (hi - lo)
}

/// Random scalene triangle with the generator's conditioning policy.
fn scalene(rng: &mut ChaCha8Rng) -> Triangle<f64> {
    loop {
        let pts: Vec<(f64, f64)> = (0..3)
            .map(|_| (dyadic(rng, -1.0, 1.0), dyadic(rng, -1.0, 1.0)))
            .collect();
        let d = |p: (f64, f64), q: (f64, f64)| ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt();
        let (a, b, c) = (d(pts[1], pts[2]), d(pts[2], pts[0]), d(pts[0], pts[1]));
        let min = a.min(b).min(c);
        let max = a.max(b).max(c);
        if min < 0.15 || max / min > 5.0 {
            continue;
        }
        if (a - b).abs() < 0.05 * max || (b - c).abs() < 0.05 * max || (c - a).abs() < 0.05 * max {
            continue;
        }
        let ctx = ToleranceContext::with_scale(max);
        if let Ok(t) = Triangle::from_xy([pts[0], pts[1], pts[2]], &ctx) {
            return t;
        }
    }
}

#[test]
fn antiparallel_midpoints_lie_on_the_symmedian() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let t = scalene(&mut rng);
        let foot = t.cevian_foot_rank_k(Vertex::A, &2.0).unwrap();
        let u = dyadic(&mut rng, 0.1, 0.9);
        let q = t.va().lerp(&foot, u);
        let anti = t.antiparallel_through(Vertex::A, &q).unwrap();
        let ctx = *t.ctx();
        let ab = Line::through(t.va(), t.vb(), &ctx).unwrap();
        let ac = Line::through(t.va(), t.vc(), &ctx).unwrap();
        let m = meet_lines(&anti, &ab, &ctx).unwrap();
        let n = meet_lines(&anti, &ac, &ctx).unwrap();
        let mid = m.midpoint(&n);
        let sym = t.symmedian_line(Vertex::A).unwrap();
        let resid = sym.dist2(&mid).sqrt() / ctx.scale;
        assert!(resid <= 1e-9, "residual {resid}");
    }
}

#[test]
fn isogonal_conjugation_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let t = scalene(&mut rng);
        // Interior point away from the boundary.
        let (u, v) = loop {
            let u = dyadic(&mut rng, 0.1, 0.8);
            let v = dyadic(&mut rng, 0.1, 0.8);
            if u + v < 0.9 {
                break (u, v);
            }
        };
        let p = circlekit::kernel::affine_combination(&[
            (u, t.va()),
            (v, t.vb()),
            (1.0 - u - v, t.vc()),
        ])
        .unwrap();
        let q = t.isogonal_conjugate(&p).unwrap();
        let back = t.isogonal_conjugate(&q).unwrap();
        let resid = back.dist2(&p).sqrt() / t.ctx().scale;
        assert!(resid < 1e-8, "residual {resid}");
    }
}

/// Rank-k cevians from the three vertices are concurrent (generalized Ceva),
/// for integer and random real ranks.
#[test]
fn rank_k_cevians_are_concurrent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..300 {
        let t = scalene(&mut rng);
        let mut ks = vec![-1.0, 0.0, 1.0, 2.0, 3.0];
        for _ in 0..5 {
            ks.push(dyadic(&mut rng, -2.0, 3.0));
        }
        for k in ks {
            let ctx = *t.ctx();
            let fa = t.cevian_foot_rank_k(Vertex::A, &k).unwrap();
            let fb = t.cevian_foot_rank_k(Vertex::B, &k).unwrap();
            let fc = t.cevian_foot_rank_k(Vertex::C, &k).unwrap();
            let la = Line::through(t.va(), &fa, &ctx).unwrap();
            let lb = Line::through(t.vb(), &fb, &ctx).unwrap();
            let lc = Line::through(t.vc(), &fc, &ctx).unwrap();
            let p12 = meet_lines(&la, &lb, &ctx).unwrap();
            let p13 = meet_lines(&la, &lc, &ctx).unwrap();
            assert!(p12.is_finite() && p13.is_finite(), "trial {trial} k {k}");
            let resid = p12.dist2(&p13).sqrt() / ctx.scale;
            assert!(resid <= 1e-7, "trial {trial} k {k} residual {resid}");
        }
    }
}

#[test]
fn nine_point_center_is_oh_midpoint_with_half_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..500 {
        let t = scalene(&mut rng);
        let o = t.circumcenter();
        let h = t.orthocenter();
        let n = t.center(CenterId::NinePoint).unwrap();
        assert!(n.dist2(&o.midpoint(&h)).sqrt() < 1e-10 * t.ctx().scale);
        // Nine-point radius = R/2, via the medial circumcircle.
        let medial = t
            .derived_triangle(circlekit::centers::DerivedTriangleId::Medial)
            .unwrap();
        let r9 = medial.circumradius_sq();
        let rel = (r9 - t.circumradius_sq() / 4.0).abs() / t.circumradius_sq();
        assert!(rel < 1e-10);
        assert!(medial.circumcenter().dist2(&n).sqrt() < 1e-9 * t.ctx().scale);
    }
}

#[test]
fn sylvester_relation_exact_on_rational_triangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let ctx = ToleranceContext::default();
    for _ in 0..100 {
        let mut nums = Vec::new();
        for _ in 0..6 {
            nums.push(Rat::new(rng.gen_range(-48..48), rng.gen_range(1..12)));
        }
        let t = match Triangle::new(
            Point::finite(nums[0].clone(), nums[1].clone()),
            Point::finite(nums[2].clone(), nums[3].clone()),
            Point::finite(nums[4].clone(), nums[5].clone()),
            &ctx,
        ) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let o = t.circumcenter();
        let h = t.orthocenter();
        let lhs = o.vec_to(&h);
        let rhs = o
            .vec_to(t.va())
            .add(&o.vec_to(t.vb()))
            .add(&o.vec_to(t.vc()));
        assert_eq!(lhs, rhs);
    }
}

/// Brocard points from the exact barycentric weights satisfy the defining
/// equal-angle property within float tolerance.
#[test]
fn brocard_point_has_equal_angles() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..200 {
        let t = scalene(&mut rng);
        let w = t.center(CenterId::Brocard1).unwrap();
        let angle_at = |apex: &Point<f64>, to_w: &Point<f64>, arm: &Point<f64>| -> f64 {
            let d1 = apex.vec_to(to_w);
            let d2 = apex.vec_to(arm);
            (d1.cross(&d2))
                .atan2(d1.dot(&d2))
                .abs()
        };
        let w1 = angle_at(t.va(), &w, t.vb());
        let w2 = angle_at(t.vb(), &w, t.vc());
        let w3 = angle_at(t.vc(), &w, t.va());
        assert!((w1 - w2).abs() < 1e-8 && (w2 - w3).abs() < 1e-8);
        // And the common value is the Brocard angle.
        assert!((w1 - t.brocard_angle()).abs() < 1e-8);
    }
}
