//! Checks for the two Droz-Farny chapters.

use super::gen::{point_eq_residual, rel_diff, rel_spread, scalar_eq_residual, CheckCtx, TriFilter};
use super::Result;
use crate::centers::{Triangle, Vertex};
use crate::circles::{droz_farny, DrozFarnyOrder};
use crate::kernel::{circle_through, concyclicity_residual, Circle, Line, Point, Scalar};

fn dist<S: Scalar>(p: &Point<S>, q: &Point<S>) -> f64 {
    p.dist2(q).to_f64().max(0.0).sqrt()
}

fn midline<S: Scalar>(t: &Triangle<S>, v: Vertex) -> Line<S> {
    let (p, q) = v.others();
    let m1 = t.vertex(v).midpoint(t.vertex(p));
    let m2 = t.vertex(v).midpoint(t.vertex(q));
    Line::through(&m1, &m2, t.ctx()).expect("nondegenerate")
}

/// A circle about H cuts the three midlines in six points equidistant from
/// the respective opposite vertices, with the squared distance
/// rho^2 + (R^2 - OH^2)/2.
pub fn df1_t1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Any);
    cx.rec_triangle(&t);
    let h = t.orthocenter();
    let o = t.circumcenter();
    // Radius large enough to cut all three midlines.
    let mut need = 0.0f64;
    for v in Vertex::ALL {
        need = need.max(midline(&t, v).dist2(&h).to_f64().sqrt());
    }
    let rho = need * (1.05 + cx.uniform(0.0, 1.2));
    let circle = Circle::new(h.clone(), S::from_f64(rho * rho))?;
    cx.rec_circle("about_H", &circle);
    let mut d = Vec::new();
    for v in Vertex::ALL {
        let pts = circle.intersect_line(&midline(&t, v), &cx.tol)?;
        if pts.len() != 2 {
            return Ok(1.0);
        }
        d.push(dist(t.vertex(v), &pts[0]));
        d.push(dist(t.vertex(v), &pts[1]));
    }
    let r_equal = rel_spread(&d);
    let expected_sq = rho * rho
        + (t.circumradius_sq().to_f64() - o.dist2(&h).to_f64()) / 2.0;
    let r_value = rel_diff(d[0] * d[0], expected_sq);
    Ok(r_equal.max(r_value))
}

/// Circles centered at the altitude feet through O cut the sides in six
/// points of one circle centered at H (the first Droz-Farny circle).
pub fn df1_t3<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Any);
    cx.rec_triangle(&t);
    let res = droz_farny(&t, DrozFarnyOrder::First)?;
    let w = res.witness_points();
    if w.len() != 6 {
        return Ok(1.0);
    }
    let r_cyc = concyclicity_residual(&w, &cx.tol)?.to_f64();
    let fit = circle_through(&w[0], &w[2], &w[4], &cx.tol)?;
    let h = t.orthocenter();
    let r_center = point_eq_residual(fit.center(), &h, cx.scale());
    let formula = 5.0 * t.circumradius_sq().to_f64() - t.sum_side_sq().to_f64() / 2.0;
    let r_radius = rel_diff(fit.radius_squared().to_f64(), formula);
    cx.rec_circle("droz_farny_1", &res.circle);
    Ok(r_cyc.max(r_center).max(r_radius))
}

/// Mutation control for DF1.T3: the altitude-feet circles pass through the
/// centroid instead of the circumcenter; concyclicity collapses.
pub fn df1_t3_mutated<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Any);
    let wrong = t.center(crate::centers::CenterId::Centroid)?;
    let mut pts = Vec::new();
    for v in Vertex::ALL {
        let foot = t.altitude_foot(v);
        let aux = Circle::with_point(foot, &wrong)?;
        let cuts = aux.intersect_line(&t.side_line(v), &cx.tol)?;
        if cuts.len() != 2 {
            return Ok(1.0);
        }
        pts.extend(cuts);
    }
    Ok(concyclicity_residual(&pts, &cx.tol)?.to_f64())
}

/// Forward direction of the altitude-feet family: radii chosen with radical
/// center O give six concyclic points about H; deliberately unequal powers
/// must break the concyclicity by a wide margin.
pub fn df1_t4<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    // Reject scenes where O sits on an altitude foot (right triangles): the
    // vertex circle there would be a point.
    let (t, feet, min_d2) = loop {
        let t = cx.triangle(TriFilter::Any);
        let o = t.circumcenter();
        let feet: Vec<Point<S>> = Vertex::ALL.iter().map(|v| t.altitude_foot(*v)).collect();
        let min_d2 = feet
            .iter()
            .map(|f| o.dist2(f).to_f64())
            .fold(f64::INFINITY, f64::min);
        if min_d2 > 1e-4 * cx.scale() * cx.scale() {
            break (t, feet, min_d2);
        }
    };
    cx.rec_triangle(&t);
    let o = t.circumcenter();
    let kappa = min_d2 * cx.uniform(0.05, 0.6);

    let collect = |factors: [f64; 3], cx: &mut CheckCtx<S>| -> Result<Vec<Point<S>>> {
        let mut pts = Vec::new();
        for (i, v) in Vertex::ALL.into_iter().enumerate() {
            let r2 = o.dist2(&feet[i]) - S::from_f64(kappa * factors[i]);
            let aux = Circle::new(feet[i].clone(), r2)?;
            let cuts = aux.intersect_line(&t.side_line(v), &cx.tol)?;
            pts.extend(cuts);
        }
        Ok(pts)
    };

    // Equal powers towards O: radical center is O.
    let good = collect([1.0, 1.0, 1.0], cx)?;
    if good.len() != 6 {
        return Ok(1.0);
    }
    let r_cyc = concyclicity_residual(&good, &cx.tol)?.to_f64();
    let fit = circle_through(&good[0], &good[2], &good[4], &cx.tol)?;
    let r_center = point_eq_residual(fit.center(), &t.orthocenter(), cx.scale());

    // Counterexample leg: distinct powers; the six points must not be
    // concyclic (residual beyond 10x the pass threshold).
    let bad = collect([1.0, 0.45, 0.8], cx)?;
    let r_bad = if bad.len() == 6 {
        concyclicity_residual(&bad, &cx.tol)?.to_f64()
    } else {
        f64::INFINITY
    };
    let r_control = if r_bad > 10.0 * cx.thr { 0.0 } else { 1.0 };

    Ok(r_cyc.max(r_center).max(r_control))
}

/// Second Droz-Farny circle: midpoint circles through H cut the sides in six
/// points concyclic about O with R2^2 = 5R^2 - (a^2+b^2+c^2)/2. On the
/// rational backend the radius identity (against (R^2 + OH^2)/2) is checked
/// exactly; the side cuts need square roots and are float-path only.
pub fn df2_t1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Any);
    cx.rec_triangle(&t);
    let o = t.circumcenter();
    let h = t.orthocenter();
    let lhs = S::from_int(5) * t.circumradius_sq() - t.sum_side_sq().half();
    let rhs = (t.circumradius_sq() + o.dist2(&h)).half();
    let r_identity = scalar_eq_residual(&lhs, &rhs, cx.scale(), 2);
    if S::EXACT {
        return Ok(r_identity);
    }
    let res = droz_farny(&t, DrozFarnyOrder::Second)?;
    let w = res.witness_points();
    if w.len() != 6 {
        return Ok(1.0);
    }
    let r_cyc = concyclicity_residual(&w, &cx.tol)?.to_f64();
    let fit = circle_through(&w[0], &w[2], &w[4], &cx.tol)?;
    let r_center = point_eq_residual(fit.center(), &o, cx.scale());
    let r_radius = rel_diff(fit.radius_squared().to_f64(), lhs.to_f64());
    cx.rec_circle("droz_farny_2", &res.circle);
    Ok(r_identity.max(r_cyc).max(r_center).max(r_radius))
}

/// Midpoint circles of radii sqrt(k + side^2)/2 cut the sides in six
/// concyclic points; unequal perturbations of the radii must break it.
pub fn df2_p2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Any);
    cx.rec_triangle(&t);
    let min2 = [
        t.side_sq(Vertex::A).to_f64(),
        t.side_sq(Vertex::B).to_f64(),
        t.side_sq(Vertex::C).to_f64(),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min);
    let k = -0.7 * min2 + cx.uniform(0.0, 3.0) * min2;

    let collect = |factors: [f64; 3], cx: &mut CheckCtx<S>| -> Result<Vec<Point<S>>> {
        let mut pts = Vec::new();
        for (i, v) in Vertex::ALL.into_iter().enumerate() {
            let (p, q) = v.others();
            let mid = t.vertex(p).midpoint(t.vertex(q));
            let r2 = (t.side_sq(v) + S::from_f64(k)) / S::from_int(4)
                * S::from_f64(factors[i]);
            if r2 <= S::zero() {
                return Ok(Vec::new());
            }
            let aux = Circle::new(mid, r2)?;
            let cuts = aux.intersect_line(&t.side_line(v), &cx.tol)?;
            pts.extend(cuts);
        }
        Ok(pts)
    };

    let good = collect([1.0, 1.0, 1.0], cx)?;
    if good.len() != 6 {
        return Ok(1.0);
    }
    let r_cyc = concyclicity_residual(&good, &cx.tol)?.to_f64();
    let fit = circle_through(&good[0], &good[2], &good[4], &cx.tol)?;
    let r_center = point_eq_residual(fit.center(), &t.circumcenter(), cx.scale());

    let bad = collect([1.0, 1.45, 0.7], cx)?;
    let r_bad = if bad.len() == 6 {
        concyclicity_residual(&bad, &cx.tol)?.to_f64()
    } else {
        f64::INFINITY
    };
    let r_control = if r_bad > 10.0 * cx.thr { 0.0 } else { 1.0 };

    Ok(r_cyc.max(r_center).max(r_control))
}
