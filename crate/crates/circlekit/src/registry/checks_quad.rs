//! The harmonic-quadrilateral suite and the six-point-circle checks.

use super::gen::{
    on_circle_residual, on_line_residual, point_eq_residual, rel_diff, rel_spread, CheckCtx,
    TriFilter,
};
use super::Result;
use crate::centers::{Triangle, Vertex};
use crate::circles::{apollonius_rank_k, six_point_circle, six_point_circle_of_pair};
use crate::kernel::{
    meet_lines, power_of_point, radical_axis, Circle, Line, Point, Scalar, ToleranceContext,
};

fn dist<S: Scalar>(p: &Point<S>, q: &Point<S>) -> f64 {
    p.dist2(q).to_f64().max(0.0).sqrt()
}

/// A harmonic quadrilateral: base triangle, its X-symmedian chord extended to
/// the circumcircle, vertices relabeled in convex cyclic order (X, Y, D, Z).
struct HarmonicQuad<S> {
    a: Point<S>,
    b: Point<S>,
    c: Point<S>,
    d: Point<S>,
    circ: Circle<S>,
}

impl<S: Scalar> HarmonicQuad<S> {
    fn vertices(&self) -> [&Point<S>; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    fn sides(&self) -> [f64; 4] {
        [
            dist(&self.a, &self.b),
            dist(&self.b, &self.c),
            dist(&self.c, &self.d),
            dist(&self.d, &self.a),
        ]
    }

    fn side_lines(&self, tol: &ToleranceContext) -> Result<[Line<S>; 4]> {
        Ok([
            Line::through(&self.a, &self.b, tol)?,
            Line::through(&self.b, &self.c, tol)?,
            Line::through(&self.c, &self.d, tol)?,
            Line::through(&self.d, &self.a, tol)?,
        ])
    }

    /// Area as the sum of the two diagonal triangles.
    fn area(&self) -> f64 {
        let t1 = self.a.vec_to(&self.b).cross(&self.a.vec_to(&self.c)).to_f64() / 2.0;
        let t2 = self.a.vec_to(&self.c).cross(&self.a.vec_to(&self.d)).to_f64() / 2.0;
        t1.abs() + t2.abs()
    }
}

fn harmonic_quad<S: Scalar>(cx: &mut CheckCtx<S>, mutated: bool) -> Result<HarmonicQuad<S>> {
    loop {
        let t = cx.triangle(TriFilter::Scalene);
        let circ = t.circumcircle();
        let rank = if mutated { S::zero() } else { S::two() };
        // Chord from X through the rank-2 (symmedian) or rank-0 (median,
        // mutation control) foot.
        let foot = t.cevian_foot_rank_k(Vertex::A, &rank)?;
        let chord = Line::through(t.va(), &foot, &cx.tol)?;
        let d_pt = circ.second_intersection(&chord, t.va());
        if dist(&d_pt, t.va()) < 0.08 * cx.scale()
            || dist(&d_pt, t.vb()) < 0.08 * cx.scale()
            || dist(&d_pt, t.vc()) < 0.08 * cx.scale()
        {
            continue;
        }
        // Convex cyclic order: X, Y, D, Z (D on arc YZ away from X). Keep the
        // sub-triangles scalene enough for the Apollonius legs.
        let quad = HarmonicQuad {
            a: t.va().clone(),
            b: t.vb().clone(),
            c: d_pt,
            d: t.vc().clone(),
            circ,
        };
        let s = quad.sides();
        let min = s.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = s.iter().cloned().fold(0.0f64, f64::max);
        let kite_guard = (s[0] - s[3]).abs() > 0.04 * max
            && (s[1] - s[2]).abs() > 0.04 * max
            && (s[0] - s[1]).abs() > 0.04 * max;
        if min > 0.05 * max && kite_guard {
            return Ok(quad);
        }
    }
}

/// The harmonic-quadrilateral property suite: the defining side-product
/// equality, the symmedian diagonals, distance proportionality, the minimum
/// property, tangent intersections, the PKQ orthocenter, and the Apollonius
/// circle properties of the sub-triangles.
pub fn hq_all<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let q = harmonic_quad(cx, false)?;
    let [a, b, c, d] = q.vertices();
    let s = q.sides();
    let mut worst = 0.0f64;

    // Defining equality: AB * CD = BC * AD.
    worst = worst.max(rel_diff(s[0] * s[2], s[1] * s[3]));

    // Diagonal intersection.
    let ac = Line::through(a, c, &cx.tol)?;
    let bd = Line::through(b, d, &cx.tol)?;
    let k = meet_lines(&ac, &bd, &cx.tol)?;
    if k.is_infinite() {
        return Ok(1.0);
    }
    cx.rec_point("K", &k);

    // The diagonals are symmedians of the four sub-triangles: foot ratios
    // (BA/BC)^2 on AC for the cevian from B, and cyclically.
    let ratio = |p: &Point<S>, foot: &Point<S>, q1: &Point<S>, q2: &Point<S>| -> f64 {
        // foot divides q1 q2; cevian from p: (p q1 / p q2)^2.
        rel_diff(
            dist(foot, q1) / dist(foot, q2),
            (dist(p, q1) / dist(p, q2)).powi(2),
        )
    };
    worst = worst.max(ratio(b, &k, a, c));
    worst = worst.max(ratio(d, &k, a, c));
    worst = worst.max(ratio(a, &k, b, d));
    worst = worst.max(ratio(c, &k, b, d));

    // Distances from K to the sides are proportional to the side lengths.
    let lines = q.side_lines(&cx.tol)?;
    let dists: Vec<f64> = lines
        .iter()
        .map(|l| l.dist2(&k).to_f64().max(0.0).sqrt())
        .collect();
    worst = worst.max(rel_spread(&[
        dists[0] / s[0],
        dists[1] / s[1],
        dists[2] / s[2],
        dists[3] / s[3],
    ]));

    // K minimizes the sum of squared side distances, with minimum
    // 4 S^2 / (a^2 + b^2 + c^2 + d^2); checked against 200 random interior
    // points.
    let sum_sq = |p: &Point<S>| -> f64 {
        lines.iter().map(|l| l.dist2(p).to_f64().max(0.0)).sum()
    };
    let f_k = sum_sq(&k);
    let area = q.area();
    let denom: f64 = s.iter().map(|x| x * x).sum();
    worst = worst.max(rel_diff(f_k, 4.0 * area * area / denom));
    let scale2 = cx.scale() * cx.scale();
    for _ in 0..200 {
        let mut w = [0.0f64; 4];
        let mut total = 0.0;
        for wi in &mut w {
            *wi = cx.uniform(0.05, 1.0);
            total += *wi;
        }
        let m = crate::kernel::affine_combination(&[
            (S::from_f64(w[0] / total), a),
            (S::from_f64(w[1] / total), b),
            (S::from_f64(w[2] / total), c),
            (S::from_f64(w[3] / total), d),
        ])
        .expect("weights sum to 1");
        let f_m = sum_sq(&m);
        worst = worst.max((f_k - f_m).max(0.0) / scale2);
    }

    // Tangents at B and D meet on AC; tangents at A and C meet on BD.
    let tan = |p: &Point<S>| q.circ.tangent_at(p);
    let p_t = meet_lines(&tan(b)?, &tan(d)?, &cx.tol)?;
    let q_t = meet_lines(&tan(a)?, &tan(c)?, &cx.tol)?;
    if p_t.is_infinite() || q_t.is_infinite() {
        return Ok(1.0);
    }
    worst = worst.max(on_line_residual(&p_t, &ac, cx.scale()));
    worst = worst.max(on_line_residual(&q_t, &bd, cx.scale()));
    cx.rec_point("P", &p_t);
    cx.rec_point("Q", &q_t);

    // The orthocenter of P K Q is the circumcenter O.
    let o = q.circ.center();
    let pkq = Triangle::new(p_t.clone(), k.clone(), q_t.clone(), &cx.tol)?;
    worst = worst.max(point_eq_residual(&pkq.orthocenter(), o, cx.scale()));

    // On the sub-triangle ABD (with the quadrilateral's vertex A): the
    // A-Apollonius center is the external symmedian foot, and the circle
    // recuts the circumcircle along the internal symmedian from A.
    let tri = Triangle::new(a.clone(), b.clone(), d.clone(), &cx.tol)?;
    let apo = apollonius_rank_k(&tri, Vertex::A, &S::one())?;
    let foot2 = tri.cevian_foot_rank_k(Vertex::A, &S::two())?;
    let ext = crate::centers::harmonic_conjugate(&foot2, tri.vb(), tri.vc(), &cx.tol)?;
    if ext.is_infinite() {
        return Ok(1.0);
    }
    worst = worst.max(point_eq_residual(apo.circle.center(), &ext, cx.scale()));
    let hits = apo.circle.intersect_circle(&q.circ, &cx.tol)?;
    if hits.len() != 2 {
        return Ok(1.0);
    }
    let sym = Line::through(a, &foot2, &cx.tol)?;
    let second = if dist(&hits[0], a) > dist(&hits[1], a) {
        &hits[0]
    } else {
        &hits[1]
    };
    worst = worst.max(on_line_residual(second, &sym, cx.scale()));

    // The Apollonius circles of the two vertices of a diagonal coincide
    // (center Q_t through A and C for diagonal AC), and the radical axis of
    // the two diagonal circles passes through O and K.
    let apo_abd = apollonius_rank_k(&Triangle::new(a.clone(), b.clone(), d.clone(), &cx.tol)?, Vertex::A, &S::one())?;
    let apo_cbd = apollonius_rank_k(&Triangle::new(c.clone(), b.clone(), d.clone(), &cx.tol)?, Vertex::A, &S::one())?;
    worst = worst.max(point_eq_residual(
        apo_abd.circle.center(),
        apo_cbd.circle.center(),
        cx.scale(),
    ));
    worst = worst.max(
        (apo_abd.circle.radius_squared().to_f64() - apo_cbd.circle.radius_squared().to_f64())
            .abs()
            / scale2,
    );
    worst = worst.max(point_eq_residual(apo_abd.circle.center(), &q_t, cx.scale()));
    worst = worst.max(rel_diff(
        apo_abd.circle.radius_squared().to_f64(),
        q_t.dist2(a).to_f64(),
    ));
    // The diagonal circles: center Q_t radius Q_tA, center P_t radius P_tB.
    let circle_q = Circle::with_point(q_t.clone(), a)?;
    let circle_p = Circle::with_point(p_t.clone(), b)?;
    let axis = radical_axis(&circle_q, &circle_p, &cx.tol)?;
    worst = worst.max(on_line_residual(o, &axis, cx.scale()));
    worst = worst.max(on_line_residual(&k, &axis, cx.scale()));
    // O and K have equal powers to both circles, stated directly as well.
    let pow_diff_o = power_of_point(o, &circle_q).to_f64() - power_of_point(o, &circle_p).to_f64();
    let pow_diff_k =
        power_of_point(&k, &circle_q).to_f64() - power_of_point(&k, &circle_p).to_f64();
    worst = worst.max(pow_diff_o.abs() / scale2);
    worst = worst.max(pow_diff_k.abs() / scale2);

    Ok(worst)
}

/// Mutation control for HQ.ALL: the chord is drawn through the median foot
/// instead of the symmedian foot; the defining product equality fails.
pub fn hq_all_mutated<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let q = harmonic_quad(cx, true)?;
    let s = q.sides();
    Ok(rel_diff(s[0] * s[2], s[1] * s[3]))
}

/// Six-point circle: the projections of an isogonal pair on the sides are
/// concyclic about the midpoint of the pair.
pub fn sp_t1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let p1 = cx.interior_point(&t);
    let res = six_point_circle(&t, &p1)?;
    cx.rec_point("P1", &p1);
    cx.rec_circle("six_point", &res.circle);
    let mut worst = 0.0f64;
    for (_, w) in &res.witnesses {
        worst = worst.max(on_circle_residual(w, &res.circle, cx.scale()));
    }
    // Independent concyclicity through a fitted circle.
    let pts = res.witness_points();
    worst = worst.max(crate::kernel::concyclicity_residual(&pts, &cx.tol)?.to_f64());
    Ok(worst)
}

/// With P1 = H the six projections and the three midpoints of A P1, B P1,
/// C P1 all lie on the Euler circle: center mid(OH), radius R/2.
pub fn sp_p2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::AcuteScalene);
    cx.rec_triangle(&t);
    let h = t.orthocenter();
    let o = t.circumcenter();
    let res = six_point_circle_of_pair(&t, &h, &o)?;
    let euler_center = o.midpoint(&h);
    let mut worst = point_eq_residual(res.circle.center(), &euler_center, cx.scale());
    worst = worst.max(rel_diff(
        res.circle.radius_squared().to_f64(),
        t.circumradius_sq().to_f64() / 4.0,
    ));
    let mut pts = res.witness_points();
    pts.push(t.va().midpoint(&h));
    pts.push(t.vb().midpoint(&h));
    pts.push(t.vc().midpoint(&h));
    for p in &pts {
        worst = worst.max(on_circle_residual(p, &res.circle, cx.scale()));
    }
    cx.rec_circle("euler", &res.circle);
    Ok(worst)
}
