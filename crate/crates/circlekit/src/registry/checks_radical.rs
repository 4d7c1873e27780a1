//! Checks for the excircle radical circle and the polars of a radical center.

use super::gen::{
    collinear_residual, on_line_residual, point_eq_residual, scalar_eq_residual, CheckCtx,
    TriFilter,
};
use super::Result;
use crate::centers::{CenterId, Vertex};
use crate::circles::radical_circle_excircles;
use crate::kernel::{
    affine_combination, circle_through, meet_lines, polar_line, power_of_point, radical_axis,
    Circle, Point, Scalar,
};

/// Radical center of the three excircles is the Spieker point.
pub fn e_t1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Any);
    cx.rec_triangle(&t);
    let ex_a = t.excircle(Vertex::A)?;
    let ex_b = t.excircle(Vertex::B)?;
    let ex_c = t.excircle(Vertex::C)?;
    let ax_ab = radical_axis(&ex_a, &ex_b, &cx.tol)?;
    let ax_bc = radical_axis(&ex_b, &ex_c, &cx.tol)?;
    let ax_ca = radical_axis(&ex_c, &ex_a, &cx.tol)?;
    let rc = meet_lines(&ax_ab, &ax_bc, &cx.tol)?;
    let spieker = t.center(CenterId::Spieker)?;
    cx.rec_point("radical_center", &rc);
    cx.rec_point("spieker", &spieker);
    Ok(point_eq_residual(&rc, &spieker, cx.scale())
        .max(on_line_residual(&rc, &ax_ca, cx.scale())))
}

/// Radical center of the incircle with the B- and C-excircles: the excenter
/// of the medial triangle opposite the BC-midpoint.
pub fn e_t2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Any);
    cx.rec_triangle(&t);
    let inc = t.incircle()?;
    let ex_b = t.excircle(Vertex::B)?;
    let ex_c = t.excircle(Vertex::C)?;
    let rc = meet_lines(
        &radical_axis(&inc, &ex_b, &cx.tol)?,
        &radical_axis(&inc, &ex_c, &cx.tol)?,
        &cx.tol,
    )?;
    // Medial triangle A1B1C1 (A1 = midpoint of BC); its excenter opposite A1
    // uses the medial side lengths a/2, b/2, c/2, i.e. the same weights.
    let [a, b, c] = t.side_lengths()?;
    let a1 = t.vb().midpoint(t.vc());
    let b1 = t.vc().midpoint(t.va());
    let c1 = t.va().midpoint(t.vb());
    let target = affine_combination(&[(-a, &a1), (b, &b1), (c, &c1)])
        .expect("excenter weights sum to 2(p - a) > 0");
    cx.rec_point("radical_center", &rc);
    cx.rec_point("medial_excenter", &target);
    Ok(point_eq_residual(&rc, &target, cx.scale()))
}

/// Squared tangent length from the Spieker point to each excircle equals
/// (r^2 + p^2)/4. Exact on the rational backend with rational side lengths.
pub fn e_t3<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = if S::EXACT {
        cx.heronian_triangle(false)
    } else {
        cx.triangle(TriFilter::Any)
    };
    cx.rec_triangle(&t);
    let res = radical_circle_excircles(&t)?;
    let target = res.circle.radius_squared();
    let spieker = t.center(CenterId::Spieker)?;
    let mut worst = 0.0f64;
    for v in Vertex::ALL {
        let pow = power_of_point(&spieker, &t.excircle(v)?);
        worst = worst.max(scalar_eq_residual(&pow, &target, cx.scale(), 2));
    }
    cx.rec_circle("radical_circle", &res.circle);
    Ok(worst)
}

/// Polars of an exterior radical center of three circles through the vertex
/// pairs cut the sides in three collinear points.
pub fn p_t1<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    'scene: for _ in 0..4000 {
        let mut circles = Vec::new();
        for v in Vertex::ALL {
            let (p, q) = v.others();
            let mid = t.vertex(p).midpoint(t.vertex(q));
            let mut s = cx.uniform(-1.4, 1.4);
            if s.abs() < 0.18 {
                s += 0.4;
            }
            let center = mid.add_vec(
                &t.vertex(p)
                    .vec_to(t.vertex(q))
                    .perp()
                    .scale(S::from_f64(s / 2.0)),
            );
            let circle = Circle::with_point(center, t.vertex(p))?;
            circles.push(circle);
        }
        let ax1 = match radical_axis(&circles[0], &circles[1], &cx.tol) {
            Ok(l) => l,
            Err(_) => continue 'scene,
        };
        let ax2 = match radical_axis(&circles[1], &circles[2], &cx.tol) {
            Ok(l) => l,
            Err(_) => continue 'scene,
        };
        let rc = meet_lines(&ax1, &ax2, &cx.tol)?;
        if rc.is_infinite() {
            continue 'scene;
        }
        // The radical center must be strictly outside all three circles.
        let margin = S::from_f64(0.02 * cx.scale() * cx.scale());
        for c in &circles {
            if power_of_point(&rc, c) <= margin {
                continue 'scene;
            }
        }
        let mut cut = Vec::new();
        for (i, v) in Vertex::ALL.into_iter().enumerate() {
            let polar = polar_line(&rc, &circles[i], &cx.tol)?;
            let x = meet_lines(&polar, &t.side_line(v), &cx.tol)?;
            if x.is_infinite() {
                continue 'scene;
            }
            cut.push(x);
        }
        cx.rec_point("radical_center", &rc);
        cx.rec_point("X", &cut[0]);
        cx.rec_point("Y", &cut[1]);
        cx.rec_point("Z", &cut[2]);
        return Ok(collinear_residual(&cut[0], &cut[1], &cut[2], cx.scale()));
    }
    panic!("P.T1 generator exhausted its rejection budget");
}

/// Tangents at M to the circles (MBC), (MAC), (MAB) cut the sides in three
/// collinear points.
pub fn p_t2<S: Scalar>(cx: &mut CheckCtx<S>) -> Result<f64> {
    let t = cx.triangle(TriFilter::Scalene);
    cx.rec_triangle(&t);
    'scene: for _ in 0..4000 {
        let mx = cx.uniform(-1.6, 1.6);
        let my = cx.uniform(-1.6, 1.6);
        let m = Point::<S>::xy(mx, my);
        // Stay away from the side lines so the three circles exist.
        for v in Vertex::ALL {
            let side = t.side_line(v);
            if side.dist2(&m).to_f64().sqrt() < 0.08 * cx.scale() {
                continue 'scene;
            }
        }
        let mut cut = Vec::new();
        for v in Vertex::ALL {
            let (p, q) = v.others();
            let circ = match circle_through(&m, t.vertex(p), t.vertex(q), &cx.tol) {
                Ok(c) => c,
                Err(_) => continue 'scene,
            };
            let tangent = circ.tangent_at(&m)?;
            let x = meet_lines(&tangent, &t.side_line(v), &cx.tol)?;
            if x.is_infinite() {
                continue 'scene;
            }
            cut.push(x);
        }
        cx.rec_point("M", &m);
        cx.rec_point("X", &cut[0]);
        cx.rec_point("Y", &cut[1]);
        cx.rec_point("Z", &cut[2]);
        return Ok(collinear_residual(&cut[0], &cut[1], &cut[2], cx.scale()));
    }
    panic!("P.T2 generator exhausted its rejection budget");
}

