//! Points (finite and at infinity), vectors, lines and segments.

use super::scalar::{Scalar, ToleranceContext};
use super::Error;

/// Plain 2-vector over the scalar backend.
#[derive(Clone, Debug, PartialEq)]
pub struct Vec2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Vec2<S> {
    pub fn new(x: S, y: S) -> Self {
        Vec2 { x, y }
    }

    pub fn zero() -> Self {
        Vec2::new(S::zero(), S::zero())
    }

    pub fn dot(&self, other: &Vec2<S>) -> S {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    pub fn cross(&self, other: &Vec2<S>) -> S {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn norm2(&self) -> S {
        self.dot(self)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> Vec2<S> {
        Vec2::new(-self.y.clone(), self.x.clone())
    }

    pub fn scale(&self, k: S) -> Vec2<S> {
        Vec2::new(self.x.clone() * k.clone(), self.y.clone() * k)
    }

    pub fn add(&self, other: &Vec2<S>) -> Vec2<S> {
        Vec2::new(self.x.clone() + other.x.clone(), self.y.clone() + other.y.clone())
    }

    pub fn sub(&self, other: &Vec2<S>) -> Vec2<S> {
        Vec2::new(self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }

    pub fn is_zero(&self, eps: &S) -> bool {
        self.x.abs() <= eps.clone() && self.y.abs() <= eps.clone()
    }
}

/// A point of the projective-completed plane: either finite coordinates or a
/// direction at infinity (normalized, nonzero).
#[derive(Clone, Debug, PartialEq)]
pub struct Point<S> {
    x: S,
    y: S,
    infinite: bool,
}

impl<S: Scalar> Point<S> {
    pub fn finite(x: S, y: S) -> Self {
        Point { x, y, infinite: false }
    }

    pub fn xy(x: f64, y: f64) -> Self {
        Point::finite(S::from_f64(x), S::from_f64(y))
    }

    /// Point at infinity in the direction `(dx, dy)`.
    ///
    /// Panics on the zero direction; callers guard with their own tolerance.
    pub fn at_infinity(dx: S, dy: S) -> Self {
        assert!(
            !(dx.is_zero_exact() && dy.is_zero_exact()),
            "zero direction for point at infinity"
        );
        let (x, y) = S::normalize_dir(dx, dy);
        Point { x, y, infinite: true }
    }

    pub fn is_finite(&self) -> bool {
        !self.infinite
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    /// Coordinates of a finite point.
    pub fn coords(&self) -> (S, S) {
        debug_assert!(!self.infinite);
        (self.x.clone(), self.y.clone())
    }

    pub fn x(&self) -> S {
        self.x.clone()
    }

    pub fn y(&self) -> S {
        self.y.clone()
    }

    /// Normalized direction of a point at infinity.
    pub fn direction(&self) -> Vec2<S> {
        debug_assert!(self.infinite);
        Vec2::new(self.x.clone(), self.y.clone())
    }

    pub fn to_vec(&self) -> Vec2<S> {
        Vec2::new(self.x.clone(), self.y.clone())
    }

    pub fn add_vec(&self, v: &Vec2<S>) -> Point<S> {
        debug_assert!(!self.infinite);
        Point::finite(self.x.clone() + v.x.clone(), self.y.clone() + v.y.clone())
    }

    /// Vector from `self` to `other` (both finite).
    pub fn vec_to(&self, other: &Point<S>) -> Vec2<S> {
        debug_assert!(!self.infinite && !other.infinite);
        Vec2::new(other.x.clone() - self.x.clone(), other.y.clone() - self.y.clone())
    }

    pub fn dist2(&self, other: &Point<S>) -> S {
        self.vec_to(other).norm2()
    }

    pub fn midpoint(&self, other: &Point<S>) -> Point<S> {
        Point::finite(
            (self.x.clone() + other.x.clone()).half(),
            (self.y.clone() + other.y.clone()).half(),
        )
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point<S>, t: S) -> Point<S> {
        self.add_vec(&self.vec_to(other).scale(t))
    }

    pub fn approx_eq(&self, other: &Point<S>, ctx: &ToleranceContext) -> bool {
        if self.infinite != other.infinite {
            return false;
        }
        if self.infinite {
            // Normalized directions; same or opposite orientation already
            // canonicalized by the sign convention.
            return self.x.clone().sub_abs_le(&other.x, &S::eps(ctx))
                && self.y.clone().sub_abs_le(&other.y, &S::eps(ctx));
        }
        let eps = S::eps(ctx);
        (self.x.clone() - other.x.clone()).abs() <= eps.clone()
            && (self.y.clone() - other.y.clone()).abs() <= eps
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

trait SubAbsLe: Scalar {
    fn sub_abs_le(self, other: &Self, eps: &Self) -> bool {
        (self - other.clone()).abs() <= eps.clone()
    }
}
impl<S: Scalar> SubAbsLe for S {}

/// Weighted average `(sum w_i P_i) / (sum w_i)`; the barycentric evaluator.
pub fn affine_combination<S: Scalar>(terms: &[(S, &Point<S>)]) -> Option<Point<S>> {
    let mut sx = S::zero();
    let mut sy = S::zero();
    let mut sw = S::zero();
    for (w, p) in terms {
        debug_assert!(p.is_finite());
        sx = sx + w.clone() * p.x();
        sy = sy + w.clone() * p.y();
        sw = sw + w.clone();
    }
    if sw.is_zero_exact() {
        return None;
    }
    Some(Point::finite(sx / sw.clone(), sy / sw))
}

/// Line `{ (x, y) : a x + b y + c = 0 }` with backend-canonical coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Line<S> {
    a: S,
    b: S,
    c: S,
}

impl<S: Scalar> Line<S> {
    pub fn from_coeffs(a: S, b: S, c: S) -> Result<Self, Error> {
        if a.is_zero_exact() && b.is_zero_exact() {
            return Err(Error::ZeroLine);
        }
        let (a, b, c) = S::normalize_line(a, b, c);
        Ok(Line { a, b, c })
    }

    /// Line through two distinct points; either may be at infinity, in which
    /// case it is read as a direction.
    pub fn through(p: &Point<S>, q: &Point<S>, ctx: &ToleranceContext) -> Result<Self, Error> {
        match (p.is_finite(), q.is_finite()) {
            (true, true) => {
                let d = p.vec_to(q);
                if d.is_zero(&S::eps(ctx)) {
                    return Err(Error::CoincidentPoints);
                }
                // normal = perp(direction)
                let a = -d.y.clone();
                let b = d.x.clone();
                let c = d.y.clone() * p.x() - d.x * p.y();
                Line::from_coeffs(a, b, c)
            }
            (true, false) => Line::with_direction(p, &q.direction()),
            (false, true) => Line::with_direction(q, &p.direction()),
            (false, false) => Err(Error::InfinitePointUnsupported),
        }
    }

    /// Line through a finite point with the given direction.
    pub fn with_direction(p: &Point<S>, dir: &Vec2<S>) -> Result<Self, Error> {
        debug_assert!(p.is_finite());
        let a = -dir.y.clone();
        let b = dir.x.clone();
        let c = dir.y.clone() * p.x() - dir.x.clone() * p.y();
        Line::from_coeffs(a, b, c)
    }

    pub fn coeffs(&self) -> (S, S, S) {
        (self.a.clone(), self.b.clone(), self.c.clone())
    }

    /// Signed incidence value `a x + b y + c` (a signed distance when the
    /// normal is unit length, as on the float backend).
    pub fn eval(&self, p: &Point<S>) -> S {
        debug_assert!(p.is_finite());
        self.a.clone() * p.x() + self.b.clone() * p.y() + self.c.clone()
    }

    pub fn normal(&self) -> Vec2<S> {
        Vec2::new(self.a.clone(), self.b.clone())
    }

    pub fn direction(&self) -> Vec2<S> {
        Vec2::new(-self.b.clone(), self.a.clone())
    }

    pub fn contains(&self, p: &Point<S>, ctx: &ToleranceContext) -> bool {
        let eps = S::eps(ctx);
        if p.is_infinite() {
            let d = p.direction();
            return self.normal().dot(&d).abs() <= eps;
        }
        // eval is scale-free in (a, b) on both backends only for float; for
        // rational exact zero is required anyway.
        self.eval(p).abs() <= eps.clone() * S::from_f64(ctx.scale.max(1.0))
    }

    pub fn is_parallel_to(&self, other: &Line<S>, ctx: &ToleranceContext) -> bool {
        self.normal().cross(&other.normal()).abs()
            <= S::eps(ctx) * self.norm_product_guard(other)
    }

    fn norm_product_guard(&self, other: &Line<S>) -> S {
        if S::EXACT {
            S::one()
        } else {
            // Normalized float lines have unit normals; keep a guard of one.
            let _ = other;
            S::one()
        }
    }

    pub fn parallel_through(&self, p: &Point<S>) -> Line<S> {
        debug_assert!(p.is_finite());
        let c = -(self.a.clone() * p.x() + self.b.clone() * p.y());
        Line::from_coeffs(self.a.clone(), self.b.clone(), c).expect("nonzero normal")
    }

    pub fn perpendicular_through(&self, p: &Point<S>) -> Line<S> {
        debug_assert!(p.is_finite());
        let a = self.b.clone();
        let b = -self.a.clone();
        let c = self.a.clone() * p.y() - self.b.clone() * p.x();
        Line::from_coeffs(a, b, c).expect("nonzero normal")
    }

    /// Orthogonal projection of a finite point onto the line.
    pub fn project(&self, p: &Point<S>) -> Point<S> {
        debug_assert!(p.is_finite());
        let n2 = self.a.clone().sq() + self.b.clone().sq();
        let t = self.eval(p) / n2;
        Point::finite(p.x() - self.a.clone() * t.clone(), p.y() - self.b.clone() * t)
    }

    /// Parameter `t` with `project(p) = anchor + t * dir` is not needed by
    /// callers; instead expose the squared distance to the line.
    pub fn dist2(&self, p: &Point<S>) -> S {
        let e = self.eval(p);
        let n2 = self.a.clone().sq() + self.b.clone().sq();
        e.clone() * e / n2
    }

    pub fn approx_eq(&self, other: &Line<S>, ctx: &ToleranceContext) -> bool {
        let eps = S::eps(ctx);
        let ceps = eps.clone() * S::from_f64(ctx.scale.max(1.0));
        (self.a.clone() - other.a.clone()).abs() <= eps.clone()
            && (self.b.clone() - other.b.clone()).abs() <= eps
            && (self.c.clone() - other.c.clone()).abs() <= ceps
    }
}

/// Closed segment between two distinct finite points.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment<S> {
    pub p: Point<S>,
    pub q: Point<S>,
}

impl<S: Scalar> Segment<S> {
    pub fn new(p: Point<S>, q: Point<S>, ctx: &ToleranceContext) -> Result<Self, Error> {
        if !p.is_finite() || !q.is_finite() {
            return Err(Error::InfinitePointUnsupported);
        }
        if p.vec_to(&q).is_zero(&S::eps(ctx)) {
            return Err(Error::CoincidentPoints);
        }
        Ok(Segment { p, q })
    }

    pub fn midpoint(&self) -> Point<S> {
        self.p.midpoint(&self.q)
    }

    pub fn length2(&self) -> S {
        self.p.dist2(&self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::Rat;

    #[test]
    fn join_contains_both_endpoints() {
        let ctx = ToleranceContext::default();
        let p = Point::<f64>::xy(1.0, 2.0);
        let q = Point::<f64>::xy(-3.0, 5.0);
        let l = Line::through(&p, &q, &ctx).unwrap();
        assert!(l.contains(&p, &ctx));
        assert!(l.contains(&q, &ctx));
    }

    #[test]
    fn projection_lands_on_line() {
        let ctx = ToleranceContext::default();
        let l = Line::<f64>::from_coeffs(1.0, 1.0, -1.0).unwrap();
        let p = Point::xy(2.0, 3.0);
        let f = l.project(&p);
        assert!(l.contains(&f, &ctx));
        assert!(l.direction().dot(&f.vec_to(&p)).abs() < 1e-12);
    }

    #[test]
    fn rational_line_exact_membership() {
        let ctx = ToleranceContext::default();
        let p = Point::finite(Rat::new(1, 3), Rat::new(1, 7));
        let q = Point::finite(Rat::new(-2, 5), Rat::new(4, 9));
        let l = Line::through(&p, &q, &ctx).unwrap();
        assert!(l.eval(&p).is_zero_exact());
        assert!(l.eval(&q).is_zero_exact());
    }

    #[test]
    fn infinite_point_directions_normalize() {
        let p = Point::<f64>::at_infinity(2.0, 0.0);
        let q = Point::<f64>::at_infinity(-30.0, 0.0);
        let ctx = ToleranceContext::default();
        assert!(p.approx_eq(&q, &ctx));
    }
}
