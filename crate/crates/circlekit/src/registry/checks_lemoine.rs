//! Checks for the Lemoine-circle chapters: the two generating chains, the
//! side-division ratios, the radical axis, and the generalized construction.

use super::gen::{
    on_line_residual, parallel_residual, perpendicular_residual, point_eq_residual, rel_diff,
    rel_spread, scalar_eq_residual, CheckCtx, TriFilter,
};
use super::Result;
use crate::centers::{CenterId, Vertex};
use crate::circles::{generalized_lemoine, lemoine_circle, LemoineOrder};
use crate::kernel::{
    circle_through, concyclicity_residual, meet_lines, power_of_point, radical_axis, Line, Point,
    Scalar,
};

fn dist<S: Scalar>(p: &Point<S>, q: &Point<S>) -> f64 {
    p.dist2(q).to_f64().max(0.0).sqrt()
}

/// The first Lemoine chain: parallel through K, then alternating
/// antiparallels and parallels; the chain closes and the six points are
/// concyclic.
pub fn l1_t1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let tol = cx.tol;
    let k = t.center(CenterId::SymmedianPoint)?;
    let ab = Line::through(t.va(), t.vb(), &tol).map_err(crate::centers::Error::Kernel)?;
    let ac = Line::through(t.va(), t.vc(), &tol).map_err(crate::centers::Error::Kernel)?;
    let bc = t.side_line(Vertex::A);

    // A1A2 parallel to BC through K.
    let l_par_bc = bc.parallel_through(&k);
    let a1 = meet_lines(&l_par_bc, &ab, &tol)?;
    let a2 = meet_lines(&l_par_bc, &ac, &tol)?;
    // Antiparallel to AB through A2 (tangent direction at C) -> B1 on BC.
    let anti_ab = t.tangent_at_vertex(Vertex::C).parallel_through(&a2);
    let b1 = meet_lines(&anti_ab, &bc, &tol)?;
    // Parallel to AC through B1 -> B2 on AB.
    let l_par_ac = ac.parallel_through(&b1);
    let b2 = meet_lines(&l_par_ac, &ab, &tol)?;
    // Antiparallel to BC through B2 (tangent direction at A) -> C1 on AC.
    let anti_bc = t.tangent_at_vertex(Vertex::A).parallel_through(&b2);
    let c1 = meet_lines(&anti_bc, &ac, &tol)?;
    // Parallel to AB through C1 -> C2 on BC.
    let l_par_ab = ab.parallel_through(&c1);
    let c2 = meet_lines(&l_par_ab, &bc, &tol)?;

    for (n, p) in [("A1", &a1), ("A2", &a2), ("B1", &b1), ("B2", &b2), ("C1", &c1), ("C2", &c2)] {
        cx.rec_point(n, p);
    }

    // (i) C2A1 is antiparallel to AC: parallel to the tangent at B.
    let r_anti = if c2.is_finite() && a1.is_finite() {
        parallel_residual(
            &c2.vec_to(&a1),
            &t.tangent_at_vertex(Vertex::B).direction(),
        )
    } else {
        1.0
    };
    // (ii) the parallels B1B2 and C1C2 pass back through K.
    let meet_k = meet_lines(&l_par_ac, &l_par_ab, &tol)?;
    let r_close = point_eq_residual(&meet_k, &k, cx.scale());
    // (iii) six concyclic points.
    let pts = [a1, a2, b1, b2, c1, c2];
    let r_cyc = concyclicity_residual(&pts, &tol)?.to_f64();
    Ok(r_anti.max(r_close).max(r_cyc))
}

/// The second Lemoine chain: antiparallel through K, alternating parallels
/// and antiparallels; closes through K, six concyclic points centered at K.
pub fn l1_t2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let tol = cx.tol;
    let k = t.center(CenterId::SymmedianPoint)?;
    let ab = Line::through(t.va(), t.vb(), &tol).map_err(crate::centers::Error::Kernel)?;
    let ac = Line::through(t.va(), t.vc(), &tol).map_err(crate::centers::Error::Kernel)?;
    let bc = t.side_line(Vertex::A);

    // A1A2 antiparallel to BC through K.
    let anti_bc = t.tangent_at_vertex(Vertex::A).parallel_through(&k);
    let a1 = meet_lines(&anti_bc, &ab, &tol)?;
    let a2 = meet_lines(&anti_bc, &ac, &tol)?;
    // A2B1 parallel to AB -> B1 on BC.
    let par_ab = ab.parallel_through(&a2);
    let b1 = meet_lines(&par_ab, &bc, &tol)?;
    // B1B2 antiparallel to AC (tangent direction at B) -> B2 on AB.
    let anti_ac = t.tangent_at_vertex(Vertex::B).parallel_through(&b1);
    let b2 = meet_lines(&anti_ac, &ab, &tol)?;
    // B2C1 parallel to BC -> C1 on AC.
    let par_bc = bc.parallel_through(&b2);
    let c1 = meet_lines(&par_bc, &ac, &tol)?;
    // C1C2 antiparallel to AB (tangent direction at C) -> C2 on BC.
    let anti_ab = t.tangent_at_vertex(Vertex::C).parallel_through(&c1);
    let c2 = meet_lines(&anti_ab, &bc, &tol)?;

    // (i) C2A1 parallel to AC.
    let r_par = if c2.is_finite() && a1.is_finite() {
        parallel_residual(&c2.vec_to(&a1), &ac.direction())
    } else {
        1.0
    };
    // (ii) the antiparallels B1B2, C1C2 meet at K.
    let meet_k = meet_lines(&anti_ac, &anti_ab, &tol)?;
    let r_close = point_eq_residual(&meet_k, &k, cx.scale());
    // (iii) concyclic, centered at K.
    let pts = [a1, a2, b1, b2, c1, c2];
    let r_cyc = concyclicity_residual(&pts, &tol)?.to_f64();
    let fit = circle_through(&pts[0], &pts[2], &pts[4], &tol)?;
    let r_center = point_eq_residual(fit.center(), &k, cx.scale());
    Ok(r_par.max(r_close).max(r_cyc).max(r_center))
}

/// Center of the first Lemoine circle = midpoint of [OK], via an independent
/// circle fit through three chain points.
pub fn l1_r<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let res = lemoine_circle(&t, LemoineOrder::First)?;
    let w = res.witness_points();
    let fit = circle_through(&w[0], &w[2], &w[4], &cx.tol)?;
    let o = t.circumcenter();
    let k = t.center(CenterId::SymmedianPoint)?;
    Ok(point_eq_residual(fit.center(), &o.midpoint(&k), cx.scale()))
}

/// Side division by the first Lemoine circle: BC2 : C2B1 : B1C = c^2 : a^2 : b^2,
/// with the closed forms a c^2/(a^2+b^2+c^2) etc.
pub fn l2_t1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let res = lemoine_circle(&t, LemoineOrder::First)?;
    let b1 = res.witness("B1").unwrap();
    let c2 = res.witness("C2").unwrap();
    let [a, b, c] = t
        .side_lengths()
        .map_err(crate::circles::Error::Centers)?
        .map(|s| s.to_f64());
    let bc2 = dist(t.vb(), c2);
    let c2b1 = dist(c2, b1);
    let b1c = dist(b1, t.vc());
    let r_ratio = rel_spread(&[bc2 / (c * c), c2b1 / (a * a), b1c / (b * b)]);
    let sum = a * a + b * b + c * c;
    let r_closed = rel_diff(bc2, a * c * c / sum)
        .max(rel_diff(b1c, a * b * b / sum))
        .max(rel_diff(c2b1, a * a * a / sum));
    Ok(r_ratio.max(r_closed))
}

/// Triplicate-ratio property: the three chords of the first Lemoine circle
/// are proportional to the cubes of the sides.
pub fn l2_c2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let res = lemoine_circle(&t, LemoineOrder::First)?;
    let [a, b, c] = t
        .side_lengths()
        .map_err(crate::circles::Error::Centers)?
        .map(|s| s.to_f64());
    let chord_bc = dist(res.witness("B1").unwrap(), res.witness("C2").unwrap());
    let chord_ca = dist(res.witness("A2").unwrap(), res.witness("C1").unwrap());
    let chord_ab = dist(res.witness("A1").unwrap(), res.witness("B2").unwrap());
    Ok(rel_spread(&[
        chord_bc / (a * a * a),
        chord_ca / (b * b * b),
        chord_ab / (c * c * c),
    ]))
}

/// Cosine-circle property: second Lemoine chords over the opposite angle
/// cosines all equal 2 R_L2.
pub fn l2_p3<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    // Acute filter keeps the cosines comfortably away from zero.
    let t = cx.triangle(TriFilter::AcuteScalene);
    cx.rec_triangle(&t);
    let res = lemoine_circle(&t, LemoineOrder::Second)?;
    let [a, b, c] = t
        .side_lengths()
        .map_err(crate::circles::Error::Centers)?
        .map(|s| s.to_f64());
    let cos_a = (b * b + c * c - a * a) / (2.0 * b * c);
    let cos_b = (c * c + a * a - b * b) / (2.0 * c * a);
    let cos_c = (a * a + b * b - c * c) / (2.0 * a * b);
    let chord_bc = dist(res.witness("B1").unwrap(), res.witness("C2").unwrap());
    let chord_ca = dist(res.witness("A2").unwrap(), res.witness("C1").unwrap());
    let chord_ab = dist(res.witness("A1").unwrap(), res.witness("B2").unwrap());
    let two_rl2 = 2.0 * res.metadata["R_L2_sq"].to_f64().sqrt();
    Ok(rel_spread(&[
        chord_bc / cos_a,
        chord_ca / cos_b,
        chord_ab / cos_c,
        two_rl2,
    ]))
}

/// Radical axis of the two Lemoine circles: perpendicular to OK at K, with
/// the power premise pow(K, first) = -R_L2^2. Exact on the rational backend.
pub fn l3_p1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let first = lemoine_circle(&t, LemoineOrder::First)?;
    let second = lemoine_circle(&t, LemoineOrder::Second)?;
    let k = t.center(CenterId::SymmedianPoint)?;
    let o = t.circumcenter();

    let pow = power_of_point(&k, &first.circle);
    let rl2_sq = first.metadata["R_L2_sq"].clone();
    let r_pow = scalar_eq_residual(&pow, &(-rl2_sq), cx.scale(), 2);

    let axis = radical_axis(&first.circle, &second.circle, &cx.tol)?;
    let r_on = on_line_residual(&k, &axis, cx.scale());
    let r_perp = perpendicular_residual(&axis.direction(), &o.vec_to(&k));
    cx.rec_line("radical_axis", &axis);
    Ok(r_pow.max(r_on).max(r_perp))
}

/// General form: if pow(O1, C2) = -R1^2 then the radical axis is the
/// perpendicular at O1 to the line of centers. Exact on the rational backend.
pub fn l3_p2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let x1 = cx.uniform(-1.0, 1.0);
    let y1 = cx.uniform(-1.0, 1.0);
    let mut x2 = cx.uniform(-1.0, 1.0);
    let mut y2 = cx.uniform(-1.0, 1.0);
    while (x1 - x2).abs() + (y1 - y2).abs() < 0.2 {
        x2 = cx.uniform(-1.0, 1.0);
        y2 = cx.uniform(-1.0, 1.0);
    }
    let r1_sq = S::from_f64(cx.uniform(0.05, 1.2));
    let o1 = Point::<S>::xy(x1, y1);
    let o2 = Point::<S>::xy(x2, y2);
    let c1 = crate::kernel::Circle::new(o1.clone(), r1_sq.clone())
        .map_err(crate::circles::Error::Kernel)?;
    // Premise: power of O1 towards C2 equals -R1^2, i.e. r2^2 = d^2 + r1^2.
    let r2_sq = o1.dist2(&o2) + r1_sq;
    let c2 = crate::kernel::Circle::new(o2.clone(), r2_sq)
        .map_err(crate::circles::Error::Kernel)?;
    cx.rec_circle("C1", &c1);
    cx.rec_circle("C2", &c2);
    let axis = radical_axis(&c1, &c2, &cx.tol)?;
    let r_on = on_line_residual(&o1, &axis, cx.scale());
    let r_perp = perpendicular_residual(&axis.direction(), &o1.vec_to(&o2));
    Ok(r_on.max(r_perp))
}

/// Antiparallel midpoints: the midpoint of an antiparallel chord drawn
/// through a point of the symmedian is that point itself (so antiparallel
/// midpoints and the symmedian determine each other).
pub fn l4_l1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let tol = cx.tol;
    let foot = t.cevian_foot_rank_k(Vertex::A, &S::two())?;
    let u = S::from_f64(cx.uniform(0.1, 0.9));
    let q = t.va().lerp(&foot, u);
    let anti = t.antiparallel_through(Vertex::A, &q)?;
    let ab = Line::through(t.va(), t.vb(), &tol).map_err(crate::centers::Error::Kernel)?;
    let ac = Line::through(t.va(), t.vc(), &tol).map_err(crate::centers::Error::Kernel)?;
    let m = meet_lines(&anti, &ab, &tol)?;
    let n = meet_lines(&anti, &ac, &tol)?;
    if m.is_infinite() || n.is_infinite() {
        return Ok(1.0);
    }
    let mid = m.midpoint(&n);
    cx.rec_point("M", &m);
    cx.rec_point("N", &n);
    cx.rec_point("mid", &mid);
    // Forward: the midpoint lies back on the symmedian; since the antiparallel
    // meets the symmedian only at q, the midpoint must be q itself.
    let r_fwd = point_eq_residual(&mid, &q, cx.scale());
    // Converse: the symmedian line carries the midpoint.
    let sym = t.symmedian_line(Vertex::A)?;
    let r_conv = on_line_residual(&mid, &sym, cx.scale());
    Ok(r_fwd.max(r_conv))
}

/// Generalized Lemoine construction: NP parallel to BC, six concyclic points,
/// and the center on the line OK.
pub fn l4_t2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let t_param = S::from_f64(cx.uniform(0.12, 0.98));
    let res = generalized_lemoine(&t, &t_param)?;
    let r_pt = res.witness("R").unwrap();
    let u_pt = res.witness("U").unwrap();
    // NP || BC read through its side cuts R (on AB) and U (on AC).
    let r_par = if r_pt.is_finite() && u_pt.is_finite() {
        parallel_residual(&r_pt.vec_to(u_pt), &t.side_line(Vertex::A).direction())
    } else {
        1.0
    };
    let r_cyc = concyclicity_residual(&res.witness_points(), &cx.tol)?.to_f64();
    let o = t.circumcenter();
    let k = t.center(CenterId::SymmedianPoint)?;
    let ok = Line::through(&o, &k, &cx.tol).map_err(crate::centers::Error::Kernel)?;
    let r_ok = on_line_residual(res.circle.center(), &ok, cx.scale());
    cx.rec_circle("generalized", &res.circle);
    Ok(r_par.max(r_cyc).max(r_ok))
}

/// Mutation control for L3.P1: the second circle is centered at the centroid
/// instead of the symmedian point. The radical axis then misses K.
pub fn l3_p1_mutated<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    let first = lemoine_circle(&t, LemoineOrder::First)?;
    let second = lemoine_circle(&t, LemoineOrder::Second)?;
    let centroid = t.center(CenterId::Centroid)?;
    // One-line perturbation: rebuild the "second Lemoine circle" at the
    // centroid with the same radius.
    let broken = crate::kernel::Circle::new(centroid, second.circle.radius_squared())
        .map_err(crate::circles::Error::Kernel)?;
    let k = t.center(CenterId::SymmedianPoint)?;
    let o = t.circumcenter();
    let axis = radical_axis(&first.circle, &broken, &cx.tol)?;
    let r_on = on_line_residual(&k, &axis, cx.scale());
    let r_perp = perpendicular_residual(&axis.direction(), &o.vec_to(&k));
    Ok(r_on.max(r_perp))
}

