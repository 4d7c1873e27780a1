//! Circles and the metric/projective operations built on them.

use super::point::{Line, Point, Vec2};
use super::scalar::{Scalar, ToleranceContext};
use super::Error;

/// Circle stored as finite center plus squared radius, so every polynomial
/// predicate stays exact on the rational backend.
#[derive(Clone, Debug, PartialEq)]
pub struct Circle<S> {
    center: Point<S>,
    r2: S,
}

impl<S: Scalar> Circle<S> {
    pub fn new(center: Point<S>, r2: S) -> Result<Self, Error> {
        if !center.is_finite() {
            return Err(Error::InfinitePointUnsupported);
        }
        if r2 < S::zero() {
            return Err(Error::NegativeRadiusSquared);
        }
        Ok(Circle { center, r2 })
    }

    /// Circle through a center and one of its points.
    pub fn with_point(center: Point<S>, on: &Point<S>) -> Result<Self, Error> {
        let r2 = center.dist2(on);
        Circle::new(center, r2)
    }

    pub fn center(&self) -> &Point<S> {
        &self.center
    }

    pub fn radius_squared(&self) -> S {
        self.r2.clone()
    }

    /// Radius; `None` on the rational backend when `r2` is not a perfect square.
    pub fn radius(&self) -> Option<S> {
        self.r2.sqrt()
    }

    /// |on-circle defect| = | |P - center|^2 - r^2 |.
    pub fn on_circle_defect(&self, p: &Point<S>) -> S {
        (self.center.dist2(p) - self.r2.clone()).abs()
    }

    pub fn contains(&self, p: &Point<S>, ctx: &ToleranceContext) -> bool {
        let eps = S::eps(ctx) * S::from_f64(ctx.scale.max(1.0));
        self.on_circle_defect(p) <= eps
    }

    /// Tangent line at a point of the circle.
    pub fn tangent_at(&self, p: &Point<S>) -> Result<Line<S>, Error> {
        let n = self.center.vec_to(p);
        if n.is_zero(&S::zero()) {
            return Err(Error::PoleAtCenter);
        }
        Line::with_direction(p, &n.perp())
    }

    /// Both intersection points with a line. Tangency within tolerance yields
    /// one (double) point; a missed line yields none. On the rational backend
    /// irrational intersections surface as `ExactSqrtUnavailable`.
    pub fn intersect_line(&self, l: &Line<S>, ctx: &ToleranceContext) -> Result<Vec<Point<S>>, Error> {
        let foot = l.project(&self.center);
        let d2 = self.center.dist2(&foot);
        let disc = self.r2.clone() - d2;
        // Tangency guard in squared length units.
        let eps = S::eps(ctx) * S::from_f64(ctx.scale.max(1.0));
        if disc < -eps.clone() {
            return Ok(vec![]);
        }
        if disc.abs() <= eps {
            return Ok(vec![foot]);
        }
        let dir = l.direction();
        let n2 = dir.norm2();
        // foot +- t * dir with t^2 * |dir|^2 = disc
        let t2 = disc / n2;
        let t = t2.sqrt().ok_or(Error::ExactSqrtUnavailable)?;
        Ok(vec![
            foot.add_vec(&dir.scale(t.clone())),
            foot.add_vec(&dir.scale(-t)),
        ])
    }

    /// Second intersection of a line with the circle, given one known point of
    /// the circle on the line. Exact on both backends (no square root): the
    /// chord is symmetric about the foot of the center. Tangency returns the
    /// known point itself.
    pub fn second_intersection(&self, l: &Line<S>, known: &Point<S>) -> Point<S> {
        let foot = l.project(&self.center);
        let two = S::two();
        Point::finite(
            foot.x() * two.clone() - known.x(),
            foot.y() * two - known.y(),
        )
    }

    pub fn intersect_circle(
        &self,
        other: &Circle<S>,
        ctx: &ToleranceContext,
    ) -> Result<Vec<Point<S>>, Error> {
        let axis = radical_axis(self, other, ctx)?;
        self.intersect_line(&axis, ctx)
    }
}

/// Intersection of two lines. Parallel distinct lines meet at the point at
/// infinity in their common direction.
pub fn meet_lines<S: Scalar>(
    l1: &Line<S>,
    l2: &Line<S>,
    ctx: &ToleranceContext,
) -> Result<Point<S>, Error> {
    let (a1, b1, c1) = l1.coeffs();
    let (a2, b2, c2) = l2.coeffs();
    let det = a1.clone() * b2.clone() - a2.clone() * b1.clone();
    let eps = S::eps(ctx);
    if det.abs() <= eps {
        if l1.approx_eq(l2, ctx) {
            return Err(Error::CoincidentLines);
        }
        return Ok(Point::at_infinity(-b1, a1));
    }
    let x = (b1.clone() * c2.clone() - b2.clone() * c1.clone()) / det.clone();
    let y = (a2 * c1 - a1 * c2) / det;
    Ok(Point::finite(x, y))
}

/// Unique circle through three non-collinear finite points.
pub fn circle_through<S: Scalar>(
    p: &Point<S>,
    q: &Point<S>,
    r: &Point<S>,
    ctx: &ToleranceContext,
) -> Result<Circle<S>, Error> {
    if !(p.is_finite() && q.is_finite() && r.is_finite()) {
        return Err(Error::InfinitePointUnsupported);
    }
    let d1 = p.vec_to(q);
    let d2 = p.vec_to(r);
    let two_area = d1.cross(&d2);
    // Collinearity in squared-length units, scale-aware.
    let eps = S::eps(ctx) * S::from_f64(ctx.scale.max(1.0).powi(2));
    if two_area.abs() <= eps {
        return Err(Error::CollinearPoints);
    }
    // Perpendicular bisector intersection, solved in closed form.
    let pq_mid = p.midpoint(q);
    let pr_mid = p.midpoint(r);
    let det = d1.cross(&d2);
    // center satisfies d1 . (C - pq_mid) = 0 and d2 . (C - pr_mid) = 0
    let rhs1 = d1.dot(&pq_mid.to_vec());
    let rhs2 = d2.dot(&pr_mid.to_vec());
    let x = (rhs1.clone() * d2.y.clone() - rhs2.clone() * d1.y.clone()) / det.clone();
    let y = (d1.x.clone() * rhs2 - d2.x.clone() * rhs1) / det;
    let center = Point::finite(x, y);
    let r2 = center.dist2(p);
    Circle::new(center, r2)
}

/// Power of a finite point: `|PC|^2 - r^2`. Negative inside, zero on, positive
/// outside the circle.
pub fn power_of_point<S: Scalar>(p: &Point<S>, c: &Circle<S>) -> S {
    c.center().dist2(p) - c.radius_squared()
}

/// Locus of equal powers to two non-concentric circles; perpendicular to the
/// line of centers.
pub fn radical_axis<S: Scalar>(
    c1: &Circle<S>,
    c2: &Circle<S>,
    ctx: &ToleranceContext,
) -> Result<Line<S>, Error> {
    let (x1, y1) = c1.center().coords();
    let (x2, y2) = c2.center().coords();
    let dx = x2.clone() - x1.clone();
    let dy = y2.clone() - y1.clone();
    if Vec2::new(dx.clone(), dy.clone()).is_zero(&S::eps(ctx)) {
        return Err(Error::ConcentricCircles);
    }
    let two = S::two();
    let k1 = x1.clone().sq() + y1.clone().sq() - c1.radius_squared();
    let k2 = x2.clone().sq() + y2.clone().sq() - c2.radius_squared();
    Line::from_coeffs(two.clone() * dx, two * dy, k1 - k2)
}

/// Polar line of a point (chord of contact when the point is outside).
pub fn polar_line<S: Scalar>(
    p: &Point<S>,
    c: &Circle<S>,
    ctx: &ToleranceContext,
) -> Result<Line<S>, Error> {
    if !p.is_finite() {
        return Err(Error::InfinitePointUnsupported);
    }
    let d = c.center().vec_to(p);
    if d.is_zero(&S::eps(ctx)) {
        return Err(Error::PoleAtCenter);
    }
    let (x0, y0) = c.center().coords();
    let a = d.x.clone();
    let b = d.y.clone();
    let cc = -(a.clone() * x0 + b.clone() * y0) - c.radius_squared();
    Line::from_coeffs(a, b, cc)
}

/// Pole of a line: the inverse of [`polar_line`].
pub fn pole_of_line<S: Scalar>(
    l: &Line<S>,
    c: &Circle<S>,
    ctx: &ToleranceContext,
) -> Result<Point<S>, Error> {
    let (a, b, _) = l.coeffs();
    let e = l.eval(c.center());
    // For float-normalized lines `e` is the signed center distance.
    if e.abs() <= S::eps(ctx) {
        return Err(Error::LineThroughCenter);
    }
    let t = -c.radius_squared() / e;
    let (x0, y0) = c.center().coords();
    Ok(Point::finite(x0 + t.clone() * a, y0 + t * b))
}

/// Signed orthogonality residual `d^2 - r1^2 - r2^2`; zero iff the circles are
/// orthogonal. Purely polynomial, exact on the rational backend.
pub fn circles_orthogonal<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>) -> S {
    c1.center().dist2(c2.center()) - c1.radius_squared() - c2.radius_squared()
}

/// Fit a circle through the first three points and return the worst on-circle
/// defect of the rest, divided by `scale^2`. Zero iff all points concyclic.
pub fn concyclicity_residual<S: Scalar>(
    points: &[Point<S>],
    ctx: &ToleranceContext,
) -> Result<S, Error> {
    if points.len() < 4 {
        return Err(Error::NotEnoughPoints);
    }
    let circle =
        circle_through(&points[0], &points[1], &points[2], ctx).map_err(|e| match e {
            Error::CollinearPoints => Error::CollinearBase,
            other => other,
        })?;
    let scale2 = S::from_f64(ctx.scale).sq();
    let mut worst = S::zero();
    for p in &points[3..] {
        if !p.is_finite() {
            return Err(Error::InfinitePointUnsupported);
        }
        let defect = circle.on_circle_defect(p) / scale2.clone();
        if defect > worst {
            worst = defect;
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::Rat;

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    #[test]
    fn meet_axes_at_origin() {
        let x_axis = Line::<f64>::from_coeffs(0.0, 1.0, 0.0).unwrap();
        let y_axis = Line::<f64>::from_coeffs(1.0, 0.0, 0.0).unwrap();
        let p = meet_lines(&x_axis, &y_axis, &ctx()).unwrap();
        assert!(p.approx_eq(&Point::xy(0.0, 0.0), &ctx()));
    }

    #[test]
    fn meet_parallel_horizontals_at_infinity() {
        let l1 = Line::<f64>::from_coeffs(0.0, 1.0, 0.0).unwrap();
        let l2 = Line::<f64>::from_coeffs(0.0, 1.0, -1.0).unwrap();
        let p = meet_lines(&l1, &l2, &ctx()).unwrap();
        assert!(p.is_infinite());
        let d = p.direction();
        assert!((d.x.abs() - 1.0).abs() < 1e-15 && d.y.abs() < 1e-15);
    }

    #[test]
    fn meet_unit_square_diagonals() {
        let c = ctx();
        let d1 = Line::through(&Point::<f64>::xy(0.0, 0.0), &Point::xy(1.0, 1.0), &c).unwrap();
        let d2 = Line::through(&Point::<f64>::xy(0.0, 1.0), &Point::xy(1.0, 0.0), &c).unwrap();
        let p = meet_lines(&d1, &d2, &c).unwrap();
        assert!(p.approx_eq(&Point::xy(0.5, 0.5), &c));
    }

    #[test]
    fn meet_coincident_lines_rejected() {
        let l1 = Line::<f64>::from_coeffs(1.0, 2.0, 3.0).unwrap();
        let l2 = Line::<f64>::from_coeffs(2.0, 4.0, 6.0).unwrap();
        assert!(matches!(meet_lines(&l1, &l2, &ctx()), Err(Error::CoincidentLines)));
    }

    #[test]
    fn circle_through_unit_points() {
        let c = circle_through(
            &Point::<f64>::xy(1.0, 0.0),
            &Point::xy(0.0, 1.0),
            &Point::xy(-1.0, 0.0),
            &ctx(),
        )
        .unwrap();
        assert!(c.center().approx_eq(&Point::xy(0.0, 0.0), &ctx()));
        assert!((c.radius_squared() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circle_through_collinear_rejected() {
        let r = circle_through(
            &Point::<f64>::xy(0.0, 0.0),
            &Point::xy(1.0, 0.0),
            &Point::xy(2.0, 0.0),
            &ctx(),
        );
        assert!(matches!(r, Err(Error::CollinearPoints)));
    }

    #[test]
    fn circle_through_right_triangle() {
        let c = circle_through(
            &Point::<f64>::xy(0.0, 3.0),
            &Point::xy(0.0, 0.0),
            &Point::xy(4.0, 0.0),
            &ctx(),
        )
        .unwrap();
        assert!(c.center().approx_eq(&Point::xy(2.0, 1.5), &ctx()));
        assert!((c.radius_squared() - 6.25).abs() < 1e-12);
    }

    #[test]
    fn power_examples() {
        let unit = Circle::new(Point::<f64>::xy(0.0, 0.0), 1.0).unwrap();
        assert_eq!(power_of_point(&Point::xy(0.0, 0.0), &unit), -1.0);
        assert!((power_of_point(&Point::xy(1.0, 0.0), &unit)).abs() < 1e-15);
        assert_eq!(power_of_point(&Point::xy(3.0, 0.0), &unit), 8.0);
    }

    #[test]
    fn radical_axis_examples() {
        let c = ctx();
        let c1 = Circle::new(Point::<f64>::xy(0.0, 0.0), 1.0).unwrap();
        let c2 = Circle::new(Point::<f64>::xy(2.0, 0.0), 1.0).unwrap();
        let ax = radical_axis(&c1, &c2, &c).unwrap();
        assert!(ax.contains(&Point::xy(1.0, 0.0), &c));
        assert!(ax.contains(&Point::xy(1.0, 5.0), &c));

        let c3 = Circle::new(Point::<f64>::xy(3.0, 0.0), 4.0).unwrap();
        let ax = radical_axis(&c1, &c3, &c).unwrap();
        assert!(ax.contains(&Point::xy(1.0, 0.0), &c));

        let c4 = Circle::new(Point::<f64>::xy(0.0, 0.0), 2.0).unwrap();
        assert!(matches!(radical_axis(&c1, &c4, &c), Err(Error::ConcentricCircles)));
    }

    #[test]
    fn polar_and_pole_examples() {
        let c = ctx();
        let unit = Circle::new(Point::<f64>::xy(0.0, 0.0), 1.0).unwrap();
        let polar = polar_line(&Point::xy(2.0, 0.0), &unit, &c).unwrap();
        assert!(polar.contains(&Point::xy(0.5, 0.0), &c));
        assert!(polar.contains(&Point::xy(0.5, 3.0), &c));

        let tangent = polar_line(&Point::xy(1.0, 0.0), &unit, &c).unwrap();
        assert!(tangent.contains(&Point::xy(1.0, -2.0), &c));

        assert!(matches!(
            polar_line(&Point::xy(0.0, 0.0), &unit, &c),
            Err(Error::PoleAtCenter)
        ));

        let p = pole_of_line(&polar, &unit, &c).unwrap();
        assert!(p.approx_eq(&Point::xy(2.0, 0.0), &c));
        let p = pole_of_line(&tangent, &unit, &c).unwrap();
        assert!(p.approx_eq(&Point::xy(1.0, 0.0), &c));

        let through_center = Line::<f64>::from_coeffs(1.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            pole_of_line(&through_center, &unit, &c),
            Err(Error::LineThroughCenter)
        ));
    }

    #[test]
    fn orthogonality_examples() {
        let c1 = Circle::new(Point::<f64>::xy(0.0, 0.0), 1.0).unwrap();
        let c2 = Circle::new(Point::<f64>::xy(2.0, 0.0), 3.0).unwrap();
        assert!(circles_orthogonal(&c1, &c2).abs() < 1e-15);
        let c3 = Circle::new(Point::<f64>::xy(0.0, 0.0), 4.0).unwrap();
        assert_eq!(circles_orthogonal(&c1, &c3), -5.0);
        let c4 = Circle::new(Point::<f64>::xy(2.0, 0.0), 1.0).unwrap();
        assert_eq!(circles_orthogonal(&c1, &c4), 2.0);
    }

    #[test]
    fn orthogonality_exact_on_rational_backend() {
        // Construct an orthogonal pair: d^2 = r1^2 + r2^2 by choice.
        let r1 = Rat::new(7, 3);
        let r2 = Rat::new(5, 2);
        let d2 = r1.clone() + r2.clone();
        // Place the second center on the x-axis at squared distance d2: pick
        // x with x^2 = d2 not needed; instead pick x rational and radii to fit.
        let x = Rat::new(3, 1);
        let c1 = Circle::new(Point::finite(Rat::new(0, 1), Rat::new(0, 1)), r1.clone()).unwrap();
        let r2_fit = x.clone() * x.clone() - r1;
        let c2 = Circle::new(Point::finite(Rat::new(3, 1), Rat::new(0, 1)), r2_fit).unwrap();
        assert!(circles_orthogonal(&c1, &c2).is_zero_exact());
        let _ = (d2, r2);
    }

    #[test]
    fn concyclicity_examples() {
        let c = ctx();
        let on_unit: Vec<Point<f64>> = vec![
            Point::xy(1.0, 0.0),
            Point::xy(0.0, 1.0),
            Point::xy(-1.0, 0.0),
            Point::xy(0.0, -1.0),
        ];
        assert!(concyclicity_residual(&on_unit, &c).unwrap() < 1e-12);

        let square: Vec<Point<f64>> = vec![
            Point::xy(0.0, 0.0),
            Point::xy(1.0, 0.0),
            Point::xy(1.0, 1.0),
            Point::xy(0.0, 1.0),
        ];
        assert!(concyclicity_residual(&square, &c).unwrap() < 1e-12);

        let off: Vec<Point<f64>> = vec![
            Point::xy(1.0, 0.0),
            Point::xy(0.0, 1.0),
            Point::xy(-1.0, 0.0),
            Point::xy(0.0, 2.0),
        ];
        let r = concyclicity_residual(&off, &c).unwrap();
        assert!((r - 3.0).abs() < 1e-12);

        let collinear_base: Vec<Point<f64>> = vec![
            Point::xy(0.0, 0.0),
            Point::xy(1.0, 0.0),
            Point::xy(2.0, 0.0),
            Point::xy(0.0, 2.0),
        ];
        assert!(matches!(
            concyclicity_residual(&collinear_base, &c),
            Err(Error::CollinearBase)
        ));
    }

    #[test]
    fn second_intersection_is_exact() {
        let c = ctx();
        let unit = Circle::new(Point::<f64>::xy(0.0, 0.0), 1.0).unwrap();
        let p = Point::xy(1.0, 0.0);
        let l = Line::through(&p, &Point::xy(0.0, 1.0), &c).unwrap();
        let q = unit.second_intersection(&l, &p);
        assert!(q.approx_eq(&Point::xy(0.0, 1.0), &c));
    }
}
