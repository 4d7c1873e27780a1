//! Constructive solvers: the equal-incircle cevian and the fixed point of
//! the PQ mediator. Both are metric constructions and run on f64.

use crate::centers::{CenterId, Triangle, Vertex};
use crate::kernel::{meet_lines, Circle, Line, Point, ToleranceContext, Vec2};

use super::Error;

type Result<T> = std::result::Result<T, Error>;

fn dist(p: &Point<f64>, q: &Point<f64>) -> f64 {
    p.dist2(q).sqrt()
}

/// Inradius of the triangle with the given (assumed nondegenerate) vertices.
fn inradius(p: &Point<f64>, q: &Point<f64>, r: &Point<f64>) -> f64 {
    let area = p.vec_to(q).cross(&p.vec_to(r)).abs() / 2.0;
    let per = dist(p, q) + dist(q, r) + dist(r, p);
    2.0 * area / per
}

/// Difference of the two sub-triangle inradii as a function of the division
/// parameter along BC; strictly increasing in `s`.
pub fn incircle_split_gap(t: &Triangle<f64>, s: f64) -> f64 {
    let d = t.vb().lerp(t.vc(), s);
    inradius(t.va(), t.vb(), &d) - inradius(t.va(), &d, t.vc())
}

/// Bisection oracle for the equal-incircle cevian: the unique point D of BC
/// with equal inradii on both sides, found by bisection on the monotone gap.
pub fn equal_incircle_bisection(t: &Triangle<f64>) -> (Point<f64>, f64) {
    let mut lo = 1e-9;
    let mut hi = 1.0 - 1e-9;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if incircle_split_gap(t, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi);
    let d = t.vb().lerp(t.vc(), s);
    let r = inradius(t.va(), t.vb(), &d);
    (d, r)
}

/// The ruler-and-compass construction of the equal-incircle cevian, checked
/// against the bisection oracle before returning.
///
/// Isosceles AB = AC returns the midpoint of BC directly.
pub fn equal_incircle_cevian(t: &Triangle<f64>) -> Result<(Point<f64>, f64)> {
    let ctx = *t.ctx();
    let [_, b_len, c_len] = t.side_lengths().map_err(crate::circles::Error::Centers)?;
    if (b_len - c_len).abs() <= 1e-12 * ctx.scale.max(1.0) {
        let d = t.vb().midpoint(t.vc());
        let r = inradius(t.va(), t.vb(), &d);
        return Ok((d, r));
    }

    let circ = t.circumcircle();
    let incenter = t.center(CenterId::Incenter)?;
    let bisector = Line::through(t.va(), &incenter, &ctx)?;
    // 1: P, the second intersection of the A-bisector with the circumcircle
    // (the midpoint of arc BC).
    let p_arc = circ.second_intersection(&bisector, t.va());

    // 2: O1 = (perpendicular at C to CP) x (mediator of BC).
    let cp = Line::through(t.vc(), &p_arc, &ctx)?;
    let perp_c = cp.perpendicular_through(t.vc());
    let bc = t.side_line(Vertex::A);
    let mediator = bc.perpendicular_through(&t.vb().midpoint(t.vc()));
    let o1 = meet_lines(&perp_c, &mediator, &ctx)?;
    if o1.is_infinite() {
        return Err(Error::DegenerateConstruction);
    }

    // 3: A' = the intersection of C(O1; O1 C) with the bisector on the same
    // side of BC as A.
    let c_o1 = Circle::with_point(o1.clone(), t.vc())?;
    let hits = c_o1.intersect_line(&bisector, &ctx)?;
    let side_of_a = bc.eval(t.va()).signum();
    let a_prime = hits
        .into_iter()
        .find(|h| bc.eval(h).signum() == side_of_a)
        .ok_or(Error::DegenerateConstruction)?;

    // 4: O1' = (parallel through A to A'O1) x (line I O1), the homothety
    // image of O1 under the center-I homothety sending A' to A.
    let a_o1 = Line::through(&a_prime, &o1, &ctx)?;
    let par = a_o1.parallel_through(t.va());
    let i_o1 = Line::through(&incenter, &o1, &ctx)?;
    let o1p = meet_lines(&par, &i_o1, &ctx)?;
    if o1p.is_infinite() {
        return Err(Error::DegenerateConstruction);
    }

    // 5: I1, I2 = intersections of C(O1'; O1' A) with BI and CI inside the
    // segments; pick the pair making I1 I2 most parallel to BC.
    let c_o1p = Circle::with_point(o1p, t.va())?;
    let pick = |from: &Point<f64>| -> Result<Vec<Point<f64>>> {
        let seg = Line::through(from, &incenter, &ctx)?;
        let hits = c_o1p.intersect_line(&seg, &ctx)?;
        let d2 = from.vec_to(&incenter);
        let n2 = d2.norm2();
        Ok(hits
            .into_iter()
            .filter(|h| {
                let s = from.vec_to(h).dot(&d2) / n2;
                (0.0..=1.0).contains(&s)
            })
            .collect())
    };
    let cands1 = pick(t.vb())?;
    let cands2 = pick(t.vc())?;
    let mut best: Option<(f64, Point<f64>, Point<f64>)> = None;
    for i1 in &cands1 {
        for i2 in &cands2 {
            if dist(i1, i2) < 1e-12 {
                continue;
            }
            let cross = i1.vec_to(i2).cross(&bc.direction()).abs()
                / (dist(i1, i2) * bc.direction().norm2().sqrt());
            if best.as_ref().is_none_or(|(c, _, _)| cross < *c) {
                best = Some((cross, i1.clone(), i2.clone()));
            }
        }
    }
    let (_, i1, i2) = best.ok_or(Error::DegenerateConstruction)?;

    // 6: D = AM x BC with M the midpoint of I1 I2.
    let m = i1.midpoint(&i2);
    let am = Line::through(t.va(), &m, &ctx)?;
    let d = meet_lines(&am, &bc, &ctx)?;
    if d.is_infinite() {
        return Err(Error::DegenerateConstruction);
    }

    // Cross-check against the bisection oracle.
    let (d_oracle, r_oracle) = equal_incircle_bisection(t);
    if dist(&d, &d_oracle) > 1e-9 * ctx.scale.max(1.0) {
        return Err(Error::ConstructionMismatch);
    }
    let r = inradius(t.va(), t.vb(), &d);
    debug_assert!((r - r_oracle).abs() <= 1e-8 * ctx.scale.max(1.0));
    Ok((d, r))
}

/// Fixed point of the PQ mediator: the apex D on the mediator of AB seeing AB
/// under |90 deg - gamma|, on the side away from the arc for acute gamma and
/// on the arc side for obtuse gamma.
pub fn fixed_point(a: &Point<f64>, b: &Point<f64>, gamma: f64) -> Result<Point<f64>> {
    if !(0.0..std::f64::consts::PI).contains(&gamma) || gamma <= 0.0 {
        return Err(Error::InvalidAngle);
    }
    if (gamma - std::f64::consts::FRAC_PI_2).abs() < 1e-12 {
        return Err(Error::RightAngleCase);
    }
    let mid = a.midpoint(b);
    let half = dist(a, b) / 2.0;
    // Unit normal toward the arc half-plane (left of A -> B).
    let dir = a.vec_to(b);
    let n = dir.perp();
    let n_len = n.norm2().sqrt();
    let unit_n = Vec2::new(n.x / n_len, n.y / n_len);
    let apex = (gamma - std::f64::consts::FRAC_PI_2).abs();
    let h = half / (apex / 2.0).tan();
    let signed = if gamma < std::f64::consts::FRAC_PI_2 {
        -h
    } else {
        h
    };
    Ok(mid.add_vec(&unit_n.scale(signed)))
}

/// One scene of the fixed-point configuration: C on the arc seeing AB under
/// gamma, the incircle contacts E (on BC) and F (on AC), and the extensions
/// P, Q. Returns the residual of the claimed invariants against the point D.
pub fn fixed_point_scene_residual(
    a: &Point<f64>,
    b: &Point<f64>,
    gamma: f64,
    arc_parameter: f64,
    ctx: &ToleranceContext,
) -> Result<f64> {
    let scale = ctx.scale;
    let c = point_on_arc(a, b, gamma, arc_parameter);
    // Work with the raw labeled points; a Triangle would renormalize the
    // orientation and scramble the roles.
    let sides = SidesAbc::of(a, b, &c);
    if sides.area < 1e-9 * scale * scale {
        return Err(Error::DegenerateConstruction);
    }
    let incenter = incenter_of(a, b, &c);

    // Contact points: E on BC, F on AC.
    let bc = Line::through(b, &c, ctx)?;
    let ac = Line::through(a, &c, ctx)?;
    let e = bc.project(&incenter);
    let f = ac.project(&incenter);

    // P beyond E with E P = A F = p - a; Q beyond F with F Q = B E = p - b.
    let af = sides.p - sides.a;
    let be = sides.p - sides.b;
    let ie = incenter.vec_to(&e);
    let ie_len = ie.norm2().sqrt();
    let p_pt = e.add_vec(&ie.scale(af / ie_len));
    let if_ = incenter.vec_to(&f);
    let if_len = if_.norm2().sqrt();
    let q_pt = f.add_vec(&if_.scale(be / if_len));

    // PB = QA for every C of the arc. The isosceles-trapezoid shape of ABPQ
    // is specific to C at the arc midpoint (see
    // [`trapezoid_residual_at_arc_midpoint`]); it is not part of the
    // every-scene residual.
    let r_eq = super::gen::rel_diff(dist(&p_pt, b), dist(&q_pt, a));

    if (gamma - std::f64::consts::FRAC_PI_2).abs() < 1e-9 {
        // Right angle: ABPQ is a parallelogram (AB = QP as vectors), for
        // every position of C, and the fixed point escapes to infinity.
        let ab = a.vec_to(b);
        let qp = q_pt.vec_to(&p_pt);
        let r_pg = ((ab.x - qp.x).powi(2) + (ab.y - qp.y).powi(2)).sqrt() / scale;
        return Ok(r_eq.max(r_pg));
    }

    let d = fixed_point(a, b, gamma)?;
    // The mediator of PQ passes through D.
    let pq = Line::through(&p_pt, &q_pt, ctx)?;
    let mediator = pq.perpendicular_through(&p_pt.midpoint(&q_pt));
    let r_d = super::gen::on_line_residual(&d, &mediator, scale);
    Ok(r_eq.max(r_d))
}

/// With C at the midpoint of the arc, ABPQ is an isosceles trapezoid: PQ is
/// parallel to AB and the legs AQ, BP are congruent. Returns that combined
/// residual.
pub fn trapezoid_residual_at_arc_midpoint(
    a: &Point<f64>,
    b: &Point<f64>,
    gamma: f64,
    ctx: &ToleranceContext,
) -> Result<f64> {
    let c = point_on_arc(a, b, gamma, 0.5);
    let sides = SidesAbc::of(a, b, &c);
    if sides.area < 1e-12 {
        return Err(Error::DegenerateConstruction);
    }
    let incenter = incenter_of(a, b, &c);
    let bc = Line::through(b, &c, ctx)?;
    let ac = Line::through(a, &c, ctx)?;
    let e = bc.project(&incenter);
    let f = ac.project(&incenter);
    let af = sides.p - sides.a;
    let be = sides.p - sides.b;
    let ie = incenter.vec_to(&e);
    let p_pt = e.add_vec(&ie.scale(af / ie.norm2().sqrt()));
    let if_ = incenter.vec_to(&f);
    let q_pt = f.add_vec(&if_.scale(be / if_.norm2().sqrt()));
    let r_par = super::gen::parallel_residual(&p_pt.vec_to(&q_pt), &a.vec_to(b));
    let r_legs = super::gen::rel_diff(dist(&q_pt, a), dist(&p_pt, b));
    Ok(r_par.max(r_legs))
}

/// A point of the arc (on the +perp side of A -> B) from which AB subtends
/// the angle gamma; `parameter` in (0, 1) sweeps the open arc.
pub fn point_on_arc(a: &Point<f64>, b: &Point<f64>, gamma: f64, parameter: f64) -> Point<f64> {
    let mid = a.midpoint(b);
    let half = dist(a, b) / 2.0;
    let dir = a.vec_to(b);
    let n = dir.perp();
    let n_len = n.norm2().sqrt();
    let unit_n = Vec2::new(n.x / n_len, n.y / n_len);
    // Center of the gamma-arc: offset half / tan(gamma) (negative for obtuse).
    let offset = half / gamma.tan();
    let center = mid.add_vec(&unit_n.scale(offset));
    let radius = half / gamma.sin();
    let ang_a = (a.y() - center.y()).atan2(a.x() - center.x());
    let ang_b = (b.y() - center.y()).atan2(b.x() - center.x());
    let mut delta = ang_b - ang_a;
    while delta <= 0.0 {
        delta += std::f64::consts::TAU;
    }
    // Stay clear of the endpoints and pick the sweep through the arc side.
    let eps = 0.08;
    let t_param = eps + (1.0 - 2.0 * eps) * parameter;
    let cand = |d: f64| -> Point<f64> {
        let ang = ang_a + d * t_param;
        Point::xy(
            center.x() + radius * ang.cos(),
            center.y() + radius * ang.sin(),
        )
    };
    let c1 = cand(delta);
    if dir.cross(&a.vec_to(&c1)) > 0.0 {
        c1
    } else {
        cand(delta - std::f64::consts::TAU)
    }
}

struct SidesAbc {
    a: f64,
    b: f64,
    p: f64,
    area: f64,
}

impl SidesAbc {
    fn of(a: &Point<f64>, b: &Point<f64>, c: &Point<f64>) -> SidesAbc {
        let sa = dist(b, c);
        let sb = dist(c, a);
        let sc = dist(a, b);
        let p = (sa + sb + sc) / 2.0;
        let area = a.vec_to(b).cross(&a.vec_to(c)).abs() / 2.0;
        SidesAbc { a: sa, b: sb, p, area }
    }
}

fn incenter_of(a: &Point<f64>, b: &Point<f64>, c: &Point<f64>) -> Point<f64> {
    let sa = dist(b, c);
    let sb = dist(c, a);
    let sc = dist(a, b);
    crate::kernel::affine_combination(&[(sa, a), (sb, b), (sc, c)]).expect("positive weights")
}
