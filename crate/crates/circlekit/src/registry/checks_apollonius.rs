//! Checks for the Apollonius circles of k-th rank and the second-rank circle
//! with its adjoint-circle and second-Brocard connections.

use super::gen::{
    collinear_residual, on_circle_residual, on_line_residual, perpendicular_residual,
    point_eq_residual, rel_diff, rel_spread, CheckCtx, TriFilter,
};
use super::Result;
use crate::centers::{harmonic_conjugate, CenterId, Vertex};
use crate::circles::apollonius_rank_k;
use crate::kernel::{circle_through, power_of_point, radical_axis, Line, Point, Scalar};

fn dist<S: Scalar>(p: &Point<S>, q: &Point<S>) -> f64 {
    p.dist2(q).to_f64().max(0.0).sqrt()
}

/// Newton-Gauss: the diagonal midpoints of a complete quadrilateral are
/// collinear. Exact on the rational backend.
pub fn ak_t2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let (_lines, verts) = cx.four_general_lines();
    let [v01, v02, v03, v12, v13, v23] = verts;
    let m1 = v01.midpoint(&v23);
    let m2 = v02.midpoint(&v13);
    let m3 = v03.midpoint(&v12);
    cx.rec_point("M1", &m1);
    cx.rec_point("M2", &m2);
    cx.rec_point("M3", &m3);
    Ok(collinear_residual(&m1, &m2, &m3, cx.scale()))
}

/// Rank-k Apollonius circles are coaxial; when they intersect, the common
/// points are the rank-k isodynamic points with W A * a^k = W B * b^k = W C * c^k.
pub fn ak_t3<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let sides = t.side_lengths()?.map(|s| s.to_f64());
    let mut worst = 0.0f64;
    let ks = [
        1.0,
        2.0,
        3.0,
        cx.uniform(0.3, 2.9),
        -cx.uniform(0.35, 1.6),
    ];
    for k in ks {
        let ks = S::from_f64(k);
        let ca = apollonius_rank_k(&t, Vertex::A, &ks)?;
        let cb = apollonius_rank_k(&t, Vertex::B, &ks)?;
        let cc = apollonius_rank_k(&t, Vertex::C, &ks)?;
        let axis = radical_axis(&ca.circle, &cb.circle, &cx.tol)?;
        // Probe two points of the axis: equal powers towards all three.
        let anchor = axis.project(t.va());
        let dir = axis.direction();
        let n = dir.norm2().to_f64().sqrt();
        let step = S::from_f64(0.8 * cx.scale() / n.max(1e-12));
        for sgn in [S::one(), -S::one()] {
            let probe = anchor.add_vec(&dir.scale(step.clone() * sgn));
            let pa = power_of_point(&probe, &ca.circle).to_f64();
            let pc = power_of_point(&probe, &cc.circle).to_f64();
            worst = worst.max((pa - pc).abs() / (cx.scale() * cx.scale()));
        }
        // Isodynamic points when the pencil is intersecting.
        let hits = ca.circle.intersect_line(&axis, &cx.tol)?;
        if hits.len() == 2 {
            for w in &hits {
                let da = dist(w, t.va()) * sides[0].powf(k);
                let db = dist(w, t.vb()) * sides[1].powf(k);
                let dc = dist(w, t.vc()) * sides[2].powf(k);
                worst = worst.max(rel_spread(&[da, db, dc]));
            }
        }
    }
    Ok(worst)
}

/// The rank-2 circle meets the circumcircle on the internal and external
/// rank-3 cevians (the antibisector's isogonal and its external cevian).
pub fn ak_t7<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let circ = t.circumcircle();
    let apo = apollonius_rank_k(&t, Vertex::A, &S::two())?;
    let hits = apo.circle.intersect_circle(&circ, &cx.tol)?;
    if hits.len() != 2 {
        return Ok(1.0);
    }
    let three = S::from_int(3);
    let f3 = t.cevian_foot_rank_k(Vertex::A, &three)?;
    let f3x = harmonic_conjugate(&f3, t.vb(), t.vc(), &cx.tol)?;
    let internal = Line::through(t.va(), &f3, &cx.tol)?;
    if f3x.is_infinite() {
        return Ok(1.0);
    }
    let external = Line::through(t.va(), &f3x, &cx.tol)?;
    let d = |p: &Point<S>, l: &Line<S>| on_line_residual(p, l, cx.scale());
    // The two points split between the two cevians.
    let assign1 = d(&hits[0], &internal).max(d(&hits[1], &external));
    let assign2 = d(&hits[0], &external).max(d(&hits[1], &internal));
    cx.rec_point("U", &hits[0]);
    cx.rec_point("V", &hits[1]);
    Ok(assign1.min(assign2))
}

/// Q on the rank-2 circle and the circumcircle (same side of BC as A): QS
/// bisects angle BQC, and QP is a symmedian of QBC (QBPC harmonic).
pub fn a2_p1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    let circ = t.circumcircle();
    let apo = apollonius_rank_k(&t, Vertex::A, &S::two())?;
    let hits = apo.circle.intersect_circle(&circ, &cx.tol)?;
    if hits.len() != 2 {
        return Ok(1.0);
    }
    let bc = t.side_line(Vertex::A);
    let side_of_a = bc.eval(t.va()).to_f64().signum();
    let (q, p) = if bc.eval(&hits[0]).to_f64().signum() == side_of_a {
        (hits[0].clone(), hits[1].clone())
    } else {
        (hits[1].clone(), hits[0].clone())
    };
    let s = t.cevian_foot_rank_k(Vertex::A, &S::two())?;
    // Bisector: QB/QC = SB/SC.
    let r_bis = rel_diff(
        dist(&q, t.vb()) / dist(&q, t.vc()),
        dist(&s, t.vb()) / dist(&s, t.vc()),
    );
    // QP symmedian of QBC: the cyclic quadrilateral Q, B, P, C is harmonic,
    // i.e. QB * PC = BP * QC.
    let r_harm = rel_diff(
        dist(&q, t.vb()) * dist(&p, t.vc()),
        dist(t.vb(), &p) * dist(&q, t.vc()),
    );
    cx.rec_point("Q", &q);
    cx.rec_point("P", &p);
    Ok(r_bis.max(r_harm))
}

/// The two A-adjoint circles, the rank-2 A-Apollonius circle and circle (BOC)
/// all pass through the second Brocard vertex A2; additionally O A2 is
/// perpendicular to the A-symmedian, A2 is the midpoint of the symmedian
/// chord, and O, A2, S' are collinear.
pub fn a2_p2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    'outer: loop {
        let t = cx.triangle(TriFilter::Scalene);
        let c1 = crate::circles::adjoint_circle(&t, Vertex::B, Vertex::A)?;
        let c2 = crate::circles::adjoint_circle(&t, Vertex::C, Vertex::A)?;
        let hits = c1.intersect_circle(&c2, &cx.tol)?;
        if hits.len() != 2 {
            continue 'outer;
        }
        let a2 = if dist(&hits[0], t.va()) > dist(&hits[1], t.va()) {
            hits[0].clone()
        } else {
            hits[1].clone()
        };
        if dist(&a2, t.va()) < 0.03 * cx.scale() {
            continue 'outer;
        }
        let o = t.circumcenter();
        if dist(&a2, &o) < 0.03 * cx.scale() {
            continue 'outer;
        }
        cx.rec_triangle(&t);
        cx.rec_point("A2", &a2);

        let apo = apollonius_rank_k(&t, Vertex::A, &S::two())?;
        let r_apo = on_circle_residual(&a2, &apo.circle, cx.scale());
        let boc = circle_through(t.vb(), &o, t.vc(), &cx.tol)?;
        let r_boc = on_circle_residual(&a2, &boc, cx.scale());

        let k = t.center(CenterId::SymmedianPoint)?;
        let sym = Line::through(t.va(), &k, &cx.tol)?;
        let r_perp = perpendicular_residual(&o.vec_to(&a2), &sym.direction());

        // Midpoint of the symmedian chord of the circumcircle.
        let circ = t.circumcircle();
        let far = circ.second_intersection(&sym, t.va());
        let r_mid = point_eq_residual(&t.va().midpoint(&far), &a2, cx.scale());

        // O, A2 and the external symmedian foot are collinear.
        let s = t.cevian_foot_rank_k(Vertex::A, &S::two())?;
        let sx = harmonic_conjugate(&s, t.vb(), t.vc(), &cx.tol)?;
        if sx.is_infinite() {
            continue 'outer;
        }
        let r_coll = collinear_residual(&o, &a2, &sx, cx.scale());

        return Ok(r_apo.max(r_boc).max(r_perp).max(r_mid).max(r_coll));
    }
}
