//! Checks for the Neuberg circles and the Lucas inner circles.

use super::gen::{
    collinear_residual, concurrency_residual, on_circle_residual, on_line_residual,
    point_eq_residual, rel_diff, rel_spread, scalar_eq_residual, CheckCtx, TriFilter,
};
use super::Result;
use crate::centers::{Triangle, Vertex};
use crate::circles::{apollonius_rank_k, lucas_circle, neuberg_circle};
use crate::kernel::{meet_lines, Line, Point, Scalar};

fn dist<S: Scalar>(p: &Point<S>, q: &Point<S>) -> f64 {
    p.dist2(q).to_f64().max(0.0).sqrt()
}

/// Distances from O to the Neuberg centers are proportional to the cubes of
/// the sides; their product is R^3 and the weighted sum gives cot w.
pub fn n_p1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Any);
    cx.rec_triangle(&t);
    let o = t.circumcenter();
    let sides = t.side_lengths()?.map(|s| s.to_f64());
    let mut on = [0.0f64; 3];
    for (i, v) in Vertex::ALL.into_iter().enumerate() {
        let res = neuberg_circle(&t, v)?;
        on[i] = dist(&o, res.circle.center());
    }
    let r_ratio = rel_spread(&[
        on[0] / sides[0].powi(3),
        on[1] / sides[1].powi(3),
        on[2] / sides[2].powi(3),
    ]);
    let r_cubed = t.circumradius_sq().to_f64().powf(1.5);
    let r_product = rel_diff(on[0] * on[1] * on[2], r_cubed);
    let cot = t.cot_brocard().to_f64();
    let r_sum = rel_diff(on[0] / sides[0] + on[1] / sides[1] + on[2] / sides[2], cot);
    Ok(r_ratio.max(r_product).max(r_sum))
}

/// Squared distance between Neuberg centers matches the closed form
/// ((a^2+b^2)(a^4+b^4) - a^2 b^2 c^2) / (16 S^2), cyclically.
pub fn n_p2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Any);
    cx.rec_triangle(&t);
    let centers: Vec<Point<S>> = Vertex::ALL
        .iter()
        .map(|v| neuberg_circle(&t, *v).map(|r| r.circle.center().clone()))
        .collect::<std::result::Result<_, crate::circles::Error>>()?;
    let s2 = [
        t.side_sq(Vertex::A).to_f64(),
        t.side_sq(Vertex::B).to_f64(),
        t.side_sq(Vertex::C).to_f64(),
    ];
    let area16 = 16.0 * t.area().to_f64().powi(2);
    let mut worst = 0.0f64;
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let d2 = centers[i].dist2(&centers[j]).to_f64();
        let closed =
            ((s2[i] + s2[j]) * (s2[i] * s2[i] + s2[j] * s2[j]) - s2[i] * s2[j] * s2[k]) / area16;
        worst = worst.max(rel_diff(d2, closed));
    }
    Ok(worst)
}

/// For a right angle at A the B- and C-Neuberg circles are orthogonal.
/// Exact on the rational backend.
pub fn n_p4<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.right_triangle_at_a();
    cx.rec_triangle(&t);
    let nb = neuberg_circle(&t, Vertex::B)?;
    let nc = neuberg_circle(&t, Vertex::C)?;
    let d2 = nb.circle.center().dist2(nc.circle.center());
    let sum = nb.circle.radius_squared() + nc.circle.radius_squared();
    Ok(scalar_eq_residual(&d2, &sum, cx.scale(), 2))
}

/// Defining locus: points of the A-Neuberg circle see BC under the Brocard
/// angle of the original triangle (equibrocardian triangles).
pub fn n_loc<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let res = neuberg_circle(&t, Vertex::A)?;
    let tan_omega = t.tan_brocard().to_f64();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let m = cx.point_on_circle(&res.circle, &[]);
        let tm = Triangle::new(m, t.vb().clone(), t.vc().clone(), &cx.tol)?;
        worst = worst.max(rel_diff(tm.tan_brocard().to_f64(), tan_omega));
    }
    cx.rec_circle("neuberg_A", &res.circle);
    Ok(worst)
}

/// Lucas circles: pairwise externally tangent, each internally tangent to the
/// circumcircle (squared-form tangency tests).
pub fn lu_t1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Any);
    cx.rec_triangle(&t);
    let mut centers = Vec::new();
    let mut radii = Vec::new();
    for v in Vertex::ALL {
        let (c, l) = t.lucas_center_radius(v)?;
        centers.push(c);
        radii.push(l.to_f64());
    }
    let o = t.circumcenter();
    let rr = t.circumradius_sq().to_f64().sqrt();
    let mut worst = 0.0f64;
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let d2 = centers[i].dist2(&centers[j]).to_f64();
        worst = worst.max(rel_diff(d2, (radii[i] + radii[j]).powi(2)));
    }
    for i in 0..3 {
        let d2 = o.dist2(&centers[i]).to_f64();
        worst = worst.max(rel_diff(d2, (rr - radii[i]).powi(2)));
    }
    Ok(worst)
}

/// Third-type pencil: the A-Apollonius circle and the B-, C-Lucas circles are
/// mutually tangent at the contact point N1 of the two Lucas circles, and the
/// meet of L_b L_c with BC is the external-symmedian foot (ratio b^2 : c^2).
pub fn lu_t3<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let (t, o_a) = loop {
        let t = cx.triangle(TriFilter::Scalene);
        let (lb, _) = t.lucas_center_radius(Vertex::B)?;
        let (lc, _) = t.lucas_center_radius(Vertex::C)?;
        let line_bc = t.side_line(Vertex::A);
        let line_l = Line::through(&lb, &lc, &cx.tol)?;
        let meet = meet_lines(&line_l, &line_bc, &cx.tol)?;
        if meet.is_finite() {
            break (t, meet);
        }
        // L_b L_c parallel to BC happens for a right angle at A; resample.
    };
    cx.rec_triangle(&t);
    let (lb, rb) = t.lucas_center_radius(Vertex::B)?;
    let (lc, rc) = t.lucas_center_radius(Vertex::C)?;
    let apo = apollonius_rank_k(&t, Vertex::A, &S::one())?;

    // O_A is the external symmedian foot: |O_A B| / |O_A C| = c^2 / b^2
    // (squares of the adjacent sides; the source prints the ratio with B and
    // C exchanged).
    let b2 = t.side_sq(Vertex::B).to_f64();
    let c2 = t.side_sq(Vertex::C).to_f64();
    let r_ratio = rel_diff(dist(&o_a, t.vb()) / dist(&o_a, t.vc()), c2 / b2);
    let r_center = point_eq_residual(&o_a, apo.circle.center(), cx.scale());

    // Contact point of the two Lucas circles.
    let total = rb.clone() + rc.clone();
    let n1 = lb.lerp(&lc, rb.clone() / total);
    let r_on = on_circle_residual(&n1, &apo.circle, cx.scale());

    // Tangency (internal or external) of the Apollonius circle with each
    // Lucas circle: (d^2 - r1^2 - r2^2)^2 = 4 r1^2 r2^2.
    let tangency = |center: &Point<S>, r2: f64| -> f64 {
        let d2 = apo.circle.center().dist2(center).to_f64();
        let r1sq = apo.circle.radius_squared().to_f64();
        let r2sq = r2 * r2;
        rel_diff((d2 - r1sq - r2sq).powi(2), 4.0 * r1sq * r2sq)
    };
    let r_tan = tangency(&lb, rb.to_f64()).max(tangency(&lc, rc.to_f64()));

    cx.rec_point("N1", &n1);
    cx.rec_circle("apollonius_A", &apo.circle);
    Ok(r_ratio.max(r_center).max(r_on).max(r_tan))
}

/// Mutation control for LU.T3: the rank-2 Apollonius circle replaces the
/// rank-1 circle; the pencil degenerates and the tangency tests fail.
pub fn lu_t3_mutated<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    let (lb, rb) = t.lucas_center_radius(Vertex::B)?;
    let (lc, rc) = t.lucas_center_radius(Vertex::C)?;
    let apo = apollonius_rank_k(&t, Vertex::A, &S::two())?;
    let total = rb.clone() + rc.clone();
    let n1 = lb.lerp(&lc, rb.clone() / total);
    let r_on = on_circle_residual(&n1, &apo.circle, cx.scale());
    let tangency = |center: &Point<S>, r2: f64| -> f64 {
        let d2 = apo.circle.center().dist2(center).to_f64();
        let r1sq = apo.circle.radius_squared().to_f64();
        let r2sq = r2 * r2;
        rel_diff((d2 - r1sq - r2sq).powi(2), 4.0 * r1sq * r2sq)
    };
    let r_tan = tangency(&lb, rb.to_f64()).max(tangency(&lc, rc.to_f64()));
    Ok(r_on.max(r_tan))
}

/// ABC and the Lucas triangle are homological with center O and the
/// Apollonius line O_A O_B O_C as axis.
pub fn lu_p1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let (t, cuts) = 'scene: loop {
        let t = cx.triangle(TriFilter::Scalene);
        let centers = t.lucas_centers()?;
        // Side-by-side meets of corresponding sides.
        let mut cuts = Vec::new();
        for (i, j, v) in [(1, 2, Vertex::A), (2, 0, Vertex::B), (0, 1, Vertex::C)] {
            let lucas_side = Line::through(&centers[i], &centers[j], &cx.tol)?;
            let m = meet_lines(&lucas_side, &t.side_line(v), &cx.tol)?;
            if m.is_infinite() {
                continue 'scene;
            }
            cuts.push(m);
        }
        break (t, cuts);
    };
    cx.rec_triangle(&t);
    let centers = t.lucas_centers()?;
    let o = t.circumcenter();

    // Homology center: A L_a, B L_b, C L_c concur at O.
    let la = Line::through(t.va(), &centers[0], &cx.tol)?;
    let lb = Line::through(t.vb(), &centers[1], &cx.tol)?;
    let lc = Line::through(t.vc(), &centers[2], &cx.tol)?;
    let r_conc = concurrency_residual(&la, &lb, &lc, &cx.tol);
    let r_center = on_line_residual(&o, &la, cx.scale())
        .max(on_line_residual(&o, &lb, cx.scale()))
        .max(on_line_residual(&o, &lc, cx.scale()));

    // Homology axis = the line of the Apollonius centers.
    let r_axis = collinear_residual(&cuts[0], &cuts[1], &cuts[2], cx.scale());
    let apo_a = apollonius_rank_k(&t, Vertex::A, &S::one())?;
    let apo_b = apollonius_rank_k(&t, Vertex::B, &S::one())?;
    let apo_line = Line::through(apo_a.circle.center(), apo_b.circle.center(), &cx.tol)?;
    let r_on_axis = cuts
        .iter()
        .map(|p| on_line_residual(p, &apo_line, cx.scale()))
        .fold(0.0f64, f64::max);

    Ok(r_conc.max(r_center).max(r_axis).max(r_on_axis))
}

/// The tangential and Lucas triangles are orthological; one orthology center
/// is O (perpendiculars from the Lucas centers to the tangent lines).
pub fn lu_p2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::AcuteScalene);
    cx.rec_triangle(&t);
    let tang = t.tangential_vertices()?;
    let lucas = t.lucas_centers()?;
    let o = t.circumcenter();

    // Perpendiculars from T_x onto the opposite Lucas side.
    let mut perps_t = Vec::new();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let lucas_side = Line::through(&lucas[j], &lucas[k], &cx.tol)?;
        perps_t.push(lucas_side.perpendicular_through(&tang[i]));
    }
    let r1 = concurrency_residual(&perps_t[0], &perps_t[1], &perps_t[2], &cx.tol);

    // Perpendiculars from L_x onto the opposite tangential side concur at O.
    let mut perps_l = Vec::new();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let tang_side = Line::through(&tang[j], &tang[k], &cx.tol)?;
        perps_l.push(tang_side.perpendicular_through(&lucas[i]));
    }
    let r2 = concurrency_residual(&perps_l[0], &perps_l[1], &perps_l[2], &cx.tol);
    let r_o = perps_l
        .iter()
        .map(|l| on_line_residual(&o, l, cx.scale()))
        .fold(0.0f64, f64::max);

    Ok(r1.max(r2).max(r_o))
}

/// The A-Apollonius and A-Lucas circles are orthogonal. Exact on the rational
/// backend over triangles with rational side lengths.
pub fn lu_r2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = if S::EXACT {
        cx.heronian_triangle(true)
    } else {
        cx.triangle(TriFilter::Scalene)
    };
    cx.rec_triangle(&t);
    let apo = apollonius_rank_k(&t, Vertex::A, &S::one())?;
    let luc = lucas_circle(&t, Vertex::A)?;
    let d2 = apo.circle.center().dist2(luc.circle.center());
    let sum = apo.circle.radius_squared() + luc.circle.radius_squared();
    Ok(scalar_eq_residual(&d2, &sum, cx.scale(), 2))
}

