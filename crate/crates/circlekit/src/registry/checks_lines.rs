//! Checks built on transversals, parallels through vertices, orthology and
//! the complete quadrilateral: generalized Simson lines, the parallel-chord
//! concurrences, the dual orthocenter statements and the Aubert line.

use super::gen::{
    collinear_residual, on_circle_residual, on_line_residual, parallel_residual,
    perpendicular_residual, point_eq_residual, CheckCtx, TriFilter,
};
use super::Result;
use crate::centers::{isogonal_direction, Triangle, Vertex};
use crate::kernel::{meet_lines, Line, Point, Scalar, ToleranceContext, Vec2};

fn rot<S: Scalar>(d: &Vec2<S>, phi: f64) -> Vec2<S> {
    let (x, y) = (d.x.to_f64(), d.y.to_f64());
    let (s, c) = phi.sin_cos();
    Vec2::new(S::from_f64(c * x - s * y), S::from_f64(s * x + c * y))
}

fn dist<S: Scalar>(p: &Point<S>, q: &Point<S>) -> f64 {
    p.dist2(q).to_f64().max(0.0).sqrt()
}

/// Feet on the three sides of the equal-angle lines from a circumcircle point.
fn equal_angle_feet<S: Scalar>(
    t: &Triangle<S>,
    m: &Point<S>,
    phi: f64,
    tol: &ToleranceContext,
) -> Result<Option<[Point<S>; 3]>> {
    let mut feet = Vec::new();
    for v in Vertex::ALL {
        let side = t.side_line(v);
        let dir = rot(&side.direction(), phi);
        let line = Line::with_direction(m, &dir)?;
        let foot = meet_lines(&line, &side, tol)?;
        if foot.is_infinite() {
            return Ok(None);
        }
        feet.push(foot);
    }
    Ok(Some([feet[0].clone(), feet[1].clone(), feet[2].clone()]))
}

/// Generalized Simson line: lines from a circumcircle point meeting the sides
/// under one directed angle have collinear feet.
pub fn r_l1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let circ = t.circumcircle();
    let avoid = [t.va().clone(), t.vb().clone(), t.vc().clone()];
    loop {
        let m = cx.point_on_circle(&circ, &avoid);
        let phi = cx.uniform(0.3, std::f64::consts::PI - 0.3);
        if let Some([a1, b1, c1]) = equal_angle_feet(&t, &m, phi, &cx.tol)? {
            cx.rec_point("M", &m);
            cx.rec_point("A1", &a1);
            cx.rec_point("B1", &b1);
            cx.rec_point("C1", &c1);
            return Ok(collinear_residual(&a1, &b1, &c1, cx.scale()));
        }
    }
}

/// With A' the second circumcircle intersection of the equal-angle line
/// through BC, the chord AA' is parallel to the foot line A1 B1.
pub fn r_l2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let circ = t.circumcircle();
    let avoid = [t.va().clone(), t.vb().clone(), t.vc().clone()];
    loop {
        let m = cx.point_on_circle(&circ, &avoid);
        let phi = cx.uniform(0.3, std::f64::consts::PI - 0.3);
        let Some([a1, b1, _c1]) = equal_angle_feet(&t, &m, phi, &cx.tol)? else {
            continue;
        };
        let dir = rot(&t.side_line(Vertex::A).direction(), phi);
        let line_ma1 = Line::with_direction(&m, &dir)?;
        let a_second = circ.second_intersection(&line_ma1, &m);
        if dist(&a_second, t.va()) < 0.03 * cx.scale()
            || dist(&a1, &b1) < 0.03 * cx.scale()
        {
            continue;
        }
        let chord = t.va().vec_to(&a_second);
        let foot_line = a1.vec_to(&b1);
        cx.rec_point("M", &m);
        cx.rec_point("A_prime", &a_second);
        return Ok(parallel_residual(&chord, &foot_line));
    }
}

/// Chords through the vertices parallel to a common direction; a circle point
/// M joined to their far ends cuts the sides in collinear points on a line
/// parallel to the chords (Aubert).
pub fn r_t1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let circ = t.circumcircle();
    'outer: loop {
        let theta = cx.angle();
        let dir = Vec2::new(S::from_f64(theta.cos()), S::from_f64(theta.sin()));
        let mut far = Vec::new();
        for v in Vertex::ALL {
            let chord = Line::with_direction(t.vertex(v), &dir)?;
            let second = circ.second_intersection(&chord, t.vertex(v));
            if dist(&second, t.vertex(v)) < 0.03 * cx.scale() {
                continue 'outer;
            }
            far.push(second);
        }
        let avoid: Vec<Point<S>> = [t.va(), t.vb(), t.vc()]
            .into_iter()
            .cloned()
            .chain(far.iter().cloned())
            .collect();
        let m = cx.point_on_circle(&circ, &avoid);
        let mut cuts = Vec::new();
        for (i, v) in Vertex::ALL.into_iter().enumerate() {
            let join = Line::through(&m, &far[i], &cx.tol)?;
            let cut = meet_lines(&join, &t.side_line(v), &cx.tol)?;
            if cut.is_infinite() {
                continue 'outer;
            }
            cuts.push(cut);
        }
        let r_coll = collinear_residual(&cuts[0], &cuts[1], &cuts[2], cx.scale());
        // The transversal is parallel to the chords; read its direction from
        // the two best-separated cut points.
        let (p, q) = farthest_pair(&cuts);
        if dist(p, q) < 0.03 * cx.scale() {
            continue 'outer;
        }
        let r_par = parallel_residual(&p.vec_to(q), &dir);
        cx.rec_point("M", &m);
        return Ok(r_coll.max(r_par));
    }
}

fn farthest_pair<S: Scalar>(pts: &[Point<S>]) -> (&Point<S>, &Point<S>) {
    let mut best = (0, 1);
    let mut best_d = -1.0;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = pts[i].dist2(&pts[j]).to_f64();
            if d > best_d {
                best_d = d;
                best = (i, j);
            }
        }
    }
    (&pts[best.0], &pts[best.1])
}

/// M'Kensie: chords parallel to a transversal joined to its side cuts concur
/// on the circumcircle.
pub fn r_t2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let circ = t.circumcircle();
    'outer: loop {
        // Transversal through a point of segment BC.
        let u = S::from_f64(cx.uniform(0.15, 0.85));
        let a1 = t.vb().lerp(t.vc(), u);
        let theta = cx.angle();
        let dir = Vec2::new(S::from_f64(theta.cos()), S::from_f64(theta.sin()));
        let transversal = Line::with_direction(&a1, &dir)?;
        let b1 = meet_lines(&transversal, &t.side_line(Vertex::B), &cx.tol)?;
        let c1 = meet_lines(&transversal, &t.side_line(Vertex::C), &cx.tol)?;
        if b1.is_infinite() || c1.is_infinite() {
            continue 'outer;
        }
        let cuts = [a1.clone(), b1, c1];
        let mut joins = Vec::new();
        for (i, v) in Vertex::ALL.into_iter().enumerate() {
            let chord = Line::with_direction(t.vertex(v), &dir)?;
            let second = circ.second_intersection(&chord, t.vertex(v));
            if dist(&second, t.vertex(v)) < 0.03 * cx.scale()
                || dist(&second, &cuts[i]) < 0.03 * cx.scale()
            {
                continue 'outer;
            }
            joins.push(Line::through(&cuts[i], &second, &cx.tol)?);
        }
        let m12 = meet_lines(&joins[0], &joins[1], &cx.tol)?;
        let m13 = meet_lines(&joins[0], &joins[2], &cx.tol)?;
        if m12.is_infinite() || m13.is_infinite() {
            continue 'outer;
        }
        let r_meet = point_eq_residual(&m12, &m13, cx.scale());
        let r_on = on_circle_residual(&m12, &circ, cx.scale());
        cx.rec_point("M", &m12);
        return Ok(r_meet.max(r_on));
    }
}

/// Beltrami: the isogonals of three parallels through the vertices concur on
/// the circumcircle; conversely the isogonals of concurrent circle cevians
/// are parallel.
pub fn r_t3<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let circ = t.circumcircle();
    let theta = cx.angle();
    let dir = Vec2::new(S::from_f64(theta.cos()), S::from_f64(theta.sin()));
    let arms = [
        (Vertex::A, Vertex::B, Vertex::C),
        (Vertex::B, Vertex::C, Vertex::A),
        (Vertex::C, Vertex::A, Vertex::B),
    ];
    let mut iso_lines = Vec::new();
    for (apex, u, v) in arms {
        let d = isogonal_direction(t.vertex(apex), t.vertex(u), t.vertex(v), &dir);
        iso_lines.push(Line::with_direction(t.vertex(apex), &d)?);
    }
    let m12 = meet_lines(&iso_lines[0], &iso_lines[1], &cx.tol)?;
    let m13 = meet_lines(&iso_lines[0], &iso_lines[2], &cx.tol)?;
    if m12.is_infinite() || m13.is_infinite() {
        return Ok(1.0);
    }
    let r_meet = point_eq_residual(&m12, &m13, cx.scale());
    let r_on = on_circle_residual(&m12, &circ, cx.scale());

    // Converse: isogonals of the cevians toward a circle point are parallel.
    let avoid = [t.va().clone(), t.vb().clone(), t.vc().clone()];
    let m = cx.point_on_circle(&circ, &avoid);
    let mut iso_dirs = Vec::new();
    for (apex, u, v) in arms {
        let toward = t.vertex(apex).vec_to(&m);
        iso_dirs.push(isogonal_direction(
            t.vertex(apex),
            t.vertex(u),
            t.vertex(v),
            &toward,
        ));
    }
    let r_par = parallel_residual(&iso_dirs[0], &iso_dirs[1])
        .max(parallel_residual(&iso_dirs[0], &iso_dirs[2]));
    cx.rec_point("concurrence", &m12);
    Ok(r_meet.max(r_on).max(r_par))
}

/// Orthology of the medial and tangential triangles: centers O9 and O, and
/// the Euler line is perpendicular to the homology axis.
pub fn or_p<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::AcuteScalene);
    cx.rec_triangle(&t);
    let tang = t.tangential_vertices()?;
    let mids = [
        t.vb().midpoint(t.vc()),
        t.vc().midpoint(t.va()),
        t.va().midpoint(t.vb()),
    ];
    let o = t.circumcenter();
    let h = t.orthocenter();
    let o9 = o.midpoint(&h);

    // Perpendiculars from the midpoints onto the tangential sides meet at O9.
    let mut r1 = 0.0f64;
    let mut perps = Vec::new();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let tang_side = Line::through(&tang[j], &tang[k], &cx.tol)?;
        let perp = tang_side.perpendicular_through(&mids[i]);
        r1 = r1.max(on_line_residual(&o9, &perp, cx.scale()));
        perps.push(perp);
    }
    // Perpendiculars from the tangential vertices onto the sides meet at O.
    let mut r2 = 0.0f64;
    for (i, v) in Vertex::ALL.into_iter().enumerate() {
        let perp = t.side_line(v).perpendicular_through(&tang[i]);
        r2 = r2.max(on_line_residual(&o, &perp, cx.scale()));
    }
    // Euler line perpendicular to the homology axis.
    let mut cuts = Vec::new();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let med_side = Line::through(&mids[j], &mids[k], &cx.tol)?;
        let tang_side = Line::through(&tang[j], &tang[k], &cx.tol)?;
        let m = meet_lines(&med_side, &tang_side, &cx.tol)?;
        if m.is_infinite() {
            return Ok(1.0);
        }
        cuts.push(m);
        let _ = i;
    }
    let r_axis_coll = collinear_residual(&cuts[0], &cuts[1], &cuts[2], cx.scale());
    let (p, q) = farthest_pair(&cuts);
    let r_perp = perpendicular_residual(&p.vec_to(q), &o.vec_to(&h));
    Ok(r1.max(r2).max(r_axis_coll).max(r_perp))
}

/// Perpendiculars from H to three concurrent cevians meet the opposite sides
/// in collinear points.
pub fn do_t1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let (t, q) = loop {
        let t = cx.triangle(TriFilter::Scalene);
        let h = t.orthocenter();
        let q = cx.interior_point(&t);
        if dist(&q, &h) > 0.06 * cx.scale() {
            break (t, q);
        }
    };
    cx.rec_triangle(&t);
    cx.rec_point("Q", &q);
    let h = t.orthocenter();
    let mut cuts = Vec::new();
    for v in Vertex::ALL {
        let cevian = Line::through(t.vertex(v), &q, &cx.tol)?;
        let perp = cevian.perpendicular_through(&h);
        let cut = meet_lines(&perp, &t.side_line(v), &cx.tol)?;
        if cut.is_infinite() {
            return Ok(1.0);
        }
        cuts.push(cut);
    }
    Ok(collinear_residual(&cuts[0], &cuts[1], &cuts[2], cx.scale()))
}

/// Bobillier transversal points of a triangle with respect to M: the feet on
/// the sides of the perpendiculars at M to MA, MB, MC. None when degenerate.
fn bobillier_points<S: Scalar>(
    vertices: [&Point<S>; 3],
    m: &Point<S>,
    tol: &ToleranceContext,
) -> Result<Option<[Point<S>; 3]>> {
    let mut out = Vec::new();
    for i in 0..3 {
        let v = vertices[i];
        let s1 = vertices[(i + 1) % 3];
        let s2 = vertices[(i + 2) % 3];
        if m.dist2(v).to_f64() < 1e-18 {
            return Ok(None);
        }
        let ray = Line::through(m, v, tol)?;
        let perp = ray.perpendicular_through(m);
        let side = Line::through(s1, s2, tol)?;
        let cut = meet_lines(&perp, &side, tol)?;
        if cut.is_infinite() {
            return Ok(None);
        }
        out.push(cut);
    }
    Ok(Some([out[0].clone(), out[1].clone(), out[2].clone()]))
}

/// Bobillier's theorem: the three transversal points are collinear.
pub fn au_t1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    loop {
        let t = cx.triangle(TriFilter::Scalene);
        let h = t.orthocenter();
        let m = Point::<S>::xy(cx.uniform(-1.4, 1.4), cx.uniform(-1.4, 1.4));
        if dist(&m, &h) < 0.06 * cx.scale()
            || [t.va(), t.vb(), t.vc()]
                .iter()
                .any(|v| dist(&m, v) < 0.06 * cx.scale())
        {
            continue;
        }
        let Some([am, bm, cm]) = bobillier_points([t.va(), t.vb(), t.vc()], &m, &cx.tol)? else {
            continue;
        };
        cx.rec_triangle(&t);
        cx.rec_point("M", &m);
        cx.rec_point("Am", &am);
        cx.rec_point("Bm", &bm);
        cx.rec_point("Cm", &cm);
        return Ok(collinear_residual(&am, &bm, &cm, cx.scale()));
    }
}

/// Dual of the orthocenter theorem: perpendiculars at W to the transversal
/// rays, cut against the Bobillier transversal, give concurrent cevians.
pub fn do_t2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    'outer: loop {
        let t = cx.triangle(TriFilter::Scalene);
        let h = t.orthocenter();
        let w = Point::<S>::xy(cx.uniform(-1.3, 1.3), cx.uniform(-1.3, 1.3));
        if dist(&w, &h) < 0.06 * cx.scale()
            || [t.va(), t.vb(), t.vc()]
                .iter()
                .any(|v| dist(&w, v) < 0.06 * cx.scale())
        {
            continue;
        }
        let Some(bob) = bobillier_points([t.va(), t.vb(), t.vc()], &w, &cx.tol)? else {
            continue;
        };
        // Keep the transversal points near the figure: far feet make the
        // downstream meets ill-conditioned.
        if bob.iter().any(|p| dist(p, &w) > 6.0 * cx.scale()) {
            continue;
        }
        let (bp, bq) = farthest_pair(&bob);
        if dist(bp, bq) < 0.05 * cx.scale() {
            continue;
        }
        let bob_line = Line::through(bp, bq, &cx.tol)?;

        // A random transversal cutting the three side lines.
        let u = S::from_f64(cx.uniform(0.15, 0.85));
        let a2 = t.vb().lerp(t.vc(), u);
        let theta = cx.angle();
        let dir = Vec2::new(S::from_f64(theta.cos()), S::from_f64(theta.sin()));
        let transversal = Line::with_direction(&a2, &dir)?;
        let b2 = meet_lines(&transversal, &t.side_line(Vertex::B), &cx.tol)?;
        let c2 = meet_lines(&transversal, &t.side_line(Vertex::C), &cx.tol)?;
        if b2.is_infinite() || c2.is_infinite() {
            continue;
        }

        let mut cevians = Vec::new();
        for (v, cut) in [(Vertex::A, &a2), (Vertex::B, &b2), (Vertex::C, &c2)] {
            if dist(&w, cut) < 0.03 * cx.scale() || dist(&w, cut) > 6.0 * cx.scale() {
                continue 'outer;
            }
            let ray = Line::through(&w, cut, &cx.tol)?;
            let perp = ray.perpendicular_through(&w);
            let on_bob = meet_lines(&perp, &bob_line, &cx.tol)?;
            if on_bob.is_infinite()
                || dist(&on_bob, t.vertex(v)) < 0.03 * cx.scale()
                || dist(&on_bob, &w) > 8.0 * cx.scale()
            {
                continue 'outer;
            }
            cevians.push(Line::through(t.vertex(v), &on_bob, &cx.tol)?);
        }
        cx.rec_triangle(&t);
        cx.rec_point("W", &w);
        return Ok(super::gen::concurrency_residual(
            &cevians[0],
            &cevians[1],
            &cevians[2],
            &cx.tol,
        ));
    }
}

/// Aubert line: the four orthocenters of a complete quadrilateral are
/// collinear, on a line perpendicular to the Newton-Gauss line.
pub fn au_t3<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let (_lines, verts) = cx.four_general_lines();
    quad_orthocenter_residual(cx, &verts)
}

/// Mutation control for AU.T3: one orthocenter is replaced by the centroid of
/// its triangle; the collinearity collapses.
pub fn au_t3_mutated<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let (_lines, verts) = cx.four_general_lines();
    let tri_sets = quad_triangles(&verts);
    let mut hs = Vec::new();
    for (i, [p, q, r]) in tri_sets.iter().enumerate() {
        let tri = Triangle::new(p.clone(), q.clone(), r.clone(), &cx.tol)?;
        if i == 0 {
            hs.push(tri.center(crate::centers::CenterId::Centroid)?);
        } else {
            hs.push(tri.orthocenter());
        }
    }
    let mut worst = 0.0f64;
    for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        worst = worst.max(collinear_residual(&hs[i], &hs[j], &hs[k], cx.scale()));
    }
    Ok(worst)
}

/// The four triangles of a complete quadrilateral with vertex pairs
/// (v01..v23) in the order produced by `four_general_lines`.
fn quad_triangles<S: Scalar>(verts: &[Point<S>; 6]) -> [[Point<S>; 3]; 4] {
    let [v01, v02, v03, v12, v13, v23] = verts.clone();
    // Triangle of lines (1,2,3) omits line 0, and so on.
    [
        [v12.clone(), v13.clone(), v23.clone()],
        [v02.clone(), v03.clone(), v23.clone()],
        [v01.clone(), v03.clone(), v13.clone()],
        [v01.clone(), v02.clone(), v12.clone()],
    ]
}

fn quad_orthocenter_residual<S: Scalar>(
    cx: &mut CheckCtx<S>,
    verts: &[Point<S>; 6],
) -> Result<f64> {
    let tri_sets = quad_triangles(verts);
    let mut hs = Vec::new();
    for [p, q, r] in tri_sets {
        let tri = Triangle::new(p, q, r, &cx.tol)?;
        hs.push(tri.orthocenter());
    }
    let mut r_coll = 0.0f64;
    for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        r_coll = r_coll.max(collinear_residual(&hs[i], &hs[j], &hs[k], cx.scale()));
    }
    // Newton-Gauss line of the diagonal midpoints.
    let [v01, v02, v03, v12, v13, v23] = verts.clone();
    let m1 = v01.midpoint(&v23);
    let m2 = v02.midpoint(&v13);
    let m3 = v03.midpoint(&v12);
    let (hp, hq) = farthest_pair(&hs);
    let mids = [m1, m2, m3];
    let (mp, mq) = farthest_pair(&mids);
    if dist(hp, hq) < 0.02 * cx.scale() || dist(mp, mq) < 0.02 * cx.scale() {
        return Ok(1.0);
    }
    let r_perp = perpendicular_residual(&hp.vec_to(hq), &mp.vec_to(mq));
    for (i, h) in hs.iter().enumerate() {
        cx.rec_point(&format!("H{}", i + 1), h);
    }
    Ok(r_coll.max(r_perp))
}

/// Bobillier transversals of the four triangles of a convex quadrilateral
/// with respect to one point are concurrent.
pub fn au_t4<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    'outer: loop {
        let quad = cx.convex_quadrilateral();
        let m = Point::<S>::xy(cx.uniform(-1.2, 1.2), cx.uniform(-1.2, 1.2));
        // Triangles ABC, BCD, CDA, DAB.
        let tris = [
            [&quad[0], &quad[1], &quad[2]],
            [&quad[1], &quad[2], &quad[3]],
            [&quad[2], &quad[3], &quad[0]],
            [&quad[3], &quad[0], &quad[1]],
        ];
        let mut transversals = Vec::new();
        for tri in tris {
            // The transversal must exist: M away from vertices and from the
            // triangle's orthocenter.
            let t = match Triangle::new(tri[0].clone(), tri[1].clone(), tri[2].clone(), &cx.tol)
            {
                Ok(t) => t,
                Err(_) => continue 'outer,
            };
            if dist(&m, &t.orthocenter()) < 0.05 * cx.scale()
                || tri.iter().any(|v| dist(&m, v) < 0.05 * cx.scale())
            {
                continue 'outer;
            }
            let Some(pts) = bobillier_points([tri[0], tri[1], tri[2]], &m, &cx.tol)? else {
                continue 'outer;
            };
            let (p, q) = farthest_pair(&pts);
            if dist(p, q) < 0.05 * cx.scale() {
                continue 'outer;
            }
            transversals.push(Line::through(p, q, &cx.tol)?);
        }
        let base = meet_lines(&transversals[0], &transversals[1], &cx.tol)?;
        if base.is_infinite() {
            continue 'outer;
        }
        let mut worst = 0.0f64;
        for tr in &transversals[2..] {
            let m2 = meet_lines(&transversals[0], tr, &cx.tol)?;
            worst = worst.max(point_eq_residual(&base, &m2, cx.scale()));
        }
        for (i, p) in quad.iter().enumerate() {
            cx.rec_point(&format!("Q{}", i + 1), p);
        }
        cx.rec_point("M", &m);
        return Ok(worst);
    }
}
