//! Triangles, remarkable points, isogonal conjugation, rank-k cevians and
//! derived triangles.
//!
//! Centers with polynomial barycentric weights (centroid, circumcenter,
//! orthocenter, symmedian point, Brocard points) are exact on the rational
//! backend; centers whose weights involve side lengths (incenter, excenters,
//! Spieker) additionally require the lengths to be representable, which on
//! the rational backend means a triangle with rational side lengths.

use crate::kernel::{
    affine_combination, Circle, Error as KernelError, Line, Point, Scalar,
    ToleranceContext, Vec2,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("point lies on the circumcircle; isogonal conjugate is at infinity")]
    OnCircumcircle,
    #[error("point coincides with a vertex")]
    AtVertex,
    #[error("point does not lie on the required line")]
    NotOnLine,
    #[error("point coincides with a segment endpoint")]
    AtEndpoint,
    #[error("point lies on a side line")]
    OnSideLine,
    #[error("triangle has a right angle; tangential triangle undefined")]
    RightAngle,
    #[error("triangle is isosceles; construction degenerates")]
    IsoscelesDegenerate,
    #[error("point lies outside the angle")]
    OutsideAngle,
    #[error("side lengths are not representable on this backend")]
    SidesUnavailable,
    #[error("rank must be an integer on the rational backend")]
    NonIntegerRank,
    #[error("the requested object is the line at infinity")]
    IsLineAtInfinity,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Vertex label; also names the opposite side (`A` names side `BC`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    pub fn index(self) -> usize {
        match self {
            Vertex::A => 0,
            Vertex::B => 1,
            Vertex::C => 2,
        }
    }

    /// The two other vertices, in cyclic order.
    pub fn others(self) -> (Vertex, Vertex) {
        match self {
            Vertex::A => (Vertex::B, Vertex::C),
            Vertex::B => (Vertex::C, Vertex::A),
            Vertex::C => (Vertex::A, Vertex::B),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterId {
    Centroid,
    Circumcenter,
    Orthocenter,
    Incenter,
    ExcenterA,
    ExcenterB,
    ExcenterC,
    NinePoint,
    SymmedianPoint,
    Spieker,
    Brocard1,
    Brocard2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivedTriangleId {
    Medial,
    Tangential,
    SecondBrocard,
    Excentral,
    Lucas,
}

/// Homogeneous barycentric weights with respect to a triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct Barycentric<S> {
    pub u: S,
    pub v: S,
    pub w: S,
}

impl<S: Scalar> Barycentric<S> {
    pub fn new(u: S, v: S, w: S) -> Self {
        Barycentric { u, v, w }
    }

    pub fn sum(&self) -> S {
        self.u.clone() + self.v.clone() + self.w.clone()
    }
}

/// Nondegenerate triangle, normalized counterclockwise at construction.
#[derive(Clone, Debug)]
pub struct Triangle<S> {
    v: [Point<S>; 3],
    /// Squared side lengths `[a^2, b^2, c^2]` with `a = |BC|`, `b = |CA|`, `c = |AB|`.
    side2: [S; 3],
    /// Side lengths when representable on the backend.
    sides: Option<[S; 3]>,
    area: S,
    ctx: ToleranceContext,
}

impl<S: Scalar> Triangle<S> {
    pub fn new(a: Point<S>, b: Point<S>, c: Point<S>, ctx: &ToleranceContext) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::DegenerateTriangle);
        }
        let doubled = a.vec_to(&b).cross(&a.vec_to(&c));
        let eps = S::eps(ctx) * S::from_f64(ctx.scale.max(1.0));
        if doubled.abs() <= eps {
            return Err(Error::DegenerateTriangle);
        }
        // Counterclockwise orientation, enforced by swapping B and C.
        let (b, c, doubled) = if doubled < S::zero() {
            (c, b, -doubled)
        } else {
            (b, c, doubled)
        };
        let a2 = b.dist2(&c);
        let b2 = c.dist2(&a);
        let c2 = a.dist2(&b);
        let sides = match (a2.sqrt(), b2.sqrt(), c2.sqrt()) {
            (Some(x), Some(y), Some(z)) => Some([x, y, z]),
            _ => None,
        };
        Ok(Triangle {
            v: [a, b, c],
            side2: [a2, b2, c2],
            sides,
            area: doubled.half(),
            ctx: *ctx,
        })
    }

    pub fn from_xy(coords: [(f64, f64); 3], ctx: &ToleranceContext) -> Result<Self> {
        Triangle::new(
            Point::xy(coords[0].0, coords[0].1),
            Point::xy(coords[1].0, coords[1].1),
            Point::xy(coords[2].0, coords[2].1),
            ctx,
        )
    }

    pub fn ctx(&self) -> &ToleranceContext {
        &self.ctx
    }

    pub fn vertex(&self, v: Vertex) -> &Point<S> {
        &self.v[v.index()]
    }

    pub fn va(&self) -> &Point<S> {
        &self.v[0]
    }
    pub fn vb(&self) -> &Point<S> {
        &self.v[1]
    }
    pub fn vc(&self) -> &Point<S> {
        &self.v[2]
    }

    /// Squared length of the side opposite the vertex.
    pub fn side_sq(&self, v: Vertex) -> S {
        self.side2[v.index()].clone()
    }

    pub fn sum_side_sq(&self) -> S {
        self.side2[0].clone() + self.side2[1].clone() + self.side2[2].clone()
    }

    /// Side lengths `(a, b, c)`; fails on the rational backend when a squared
    /// length is not a perfect square.
    pub fn side_lengths(&self) -> Result<[S; 3]> {
        self.sides.clone().ok_or(Error::SidesUnavailable)
    }

    pub fn area(&self) -> S {
        self.area.clone()
    }

    pub fn semiperimeter(&self) -> Result<S> {
        let [a, b, c] = self.side_lengths()?;
        Ok((a + b + c).half())
    }

    /// Line of the side opposite the vertex, e.g. `A -> line BC`.
    pub fn side_line(&self, v: Vertex) -> Line<S> {
        let (p, q) = v.others();
        Line::through(self.vertex(p), self.vertex(q), &self.ctx).expect("nondegenerate")
    }

    pub fn circumcenter(&self) -> Point<S> {
        let [a2, b2, c2] = self.side2.clone();
        let wa = a2.clone() * (b2.clone() + c2.clone() - a2.clone());
        let wb = b2.clone() * (c2.clone() + a2.clone() - b2.clone());
        let wc = c2.clone() * (a2 + b2 - c2);
        self.eval_barycentric(&Barycentric::new(wa, wb, wc))
            .expect("circumcenter weights sum to 16 S^2 > 0")
    }

    /// Orthocenter from the Sylvester relation `H = A + B + C - 2 O`; exact on
    /// the rational backend.
    pub fn orthocenter(&self) -> Point<S> {
        let o = self.circumcenter();
        let s = self.va().to_vec().add(&self.vb().to_vec()).add(&self.vc().to_vec());
        Point::finite(
            s.x - S::two() * o.x(),
            s.y - S::two() * o.y(),
        )
    }

    pub fn circumradius_sq(&self) -> S {
        self.circumcenter().dist2(self.va())
    }

    pub fn circumcircle(&self) -> Circle<S> {
        Circle::new(self.circumcenter(), self.circumradius_sq()).expect("valid radius")
    }

    pub fn incircle(&self) -> Result<Circle<S>> {
        let p = self.semiperimeter()?;
        let r = self.area() / p;
        let center = self.center(CenterId::Incenter)?;
        Ok(Circle::new(center, r.clone() * r)?)
    }

    /// Excircle opposite the given vertex.
    pub fn excircle(&self, v: Vertex) -> Result<Circle<S>> {
        let p = self.semiperimeter()?;
        let [a, b, c] = self.side_lengths()?;
        let opp = match v {
            Vertex::A => a,
            Vertex::B => b,
            Vertex::C => c,
        };
        let r = self.area() / (p - opp);
        let center = self.excenter(v)?;
        Ok(Circle::new(center, r.clone() * r)?)
    }

    pub fn excenter(&self, v: Vertex) -> Result<Point<S>> {
        let [a, b, c] = self.side_lengths()?;
        let bary = match v {
            Vertex::A => Barycentric::new(-a, b, c),
            Vertex::B => Barycentric::new(a, -b, c),
            Vertex::C => Barycentric::new(a, b, -c),
        };
        self.eval_barycentric(&bary).ok_or(Error::DegenerateTriangle)
    }

    /// Evaluate homogeneous barycentric weights into a point; `None` when the
    /// weights sum to zero (a point at infinity).
    pub fn eval_barycentric(&self, bary: &Barycentric<S>) -> Option<Point<S>> {
        affine_combination(&[
            (bary.u.clone(), self.va()),
            (bary.v.clone(), self.vb()),
            (bary.w.clone(), self.vc()),
        ])
    }

    /// Barycentric weights of a finite point, normalized to sum 1.
    pub fn barycentric_of(&self, p: &Point<S>) -> Barycentric<S> {
        debug_assert!(p.is_finite());
        let u = p.vec_to(self.vb()).cross(&p.vec_to(self.vc()));
        let v = p.vec_to(self.vc()).cross(&p.vec_to(self.va()));
        let w = p.vec_to(self.va()).cross(&p.vec_to(self.vb()));
        let total = u.clone() + v.clone() + w.clone();
        Barycentric::new(u / total.clone(), v / total.clone(), w / total)
    }

    /// True when the point is strictly inside.
    pub fn contains_strict(&self, p: &Point<S>) -> bool {
        if !p.is_finite() {
            return false;
        }
        let b = self.barycentric_of(p);
        let eps = S::eps(&self.ctx);
        b.u > eps.clone() && b.v > eps.clone() && b.w > eps
    }

    pub fn center(&self, id: CenterId) -> Result<Point<S>> {
        let [a2, b2, c2] = self.side2.clone();
        let bary = match id {
            CenterId::Centroid => Barycentric::new(S::one(), S::one(), S::one()),
            CenterId::Circumcenter => return Ok(self.circumcenter()),
            CenterId::Orthocenter => return Ok(self.orthocenter()),
            CenterId::NinePoint => {
                return Ok(self.circumcenter().midpoint(&self.orthocenter()));
            }
            CenterId::SymmedianPoint => Barycentric::new(a2, b2, c2),
            CenterId::Incenter => {
                let [a, b, c] = self.side_lengths()?;
                Barycentric::new(a, b, c)
            }
            CenterId::Spieker => {
                let [a, b, c] = self.side_lengths()?;
                Barycentric::new(
                    b.clone() + c.clone(),
                    c + a.clone(),
                    a + b,
                )
            }
            CenterId::ExcenterA => return self.excenter(Vertex::A),
            CenterId::ExcenterB => return self.excenter(Vertex::B),
            CenterId::ExcenterC => return self.excenter(Vertex::C),
            CenterId::Brocard1 => Barycentric::new(
                a2.clone() * c2.clone(),
                a2 * b2.clone(),
                b2 * c2,
            ),
            CenterId::Brocard2 => Barycentric::new(
                a2.clone() * b2.clone(),
                b2 * c2.clone(),
                c2 * a2,
            ),
        };
        self.eval_barycentric(&bary).ok_or(Error::DegenerateTriangle)
    }

    /// Cotangent of the Brocard angle, `(a^2 + b^2 + c^2) / (4 S)`; exact.
    pub fn cot_brocard(&self) -> S {
        self.sum_side_sq() / (S::from_int(4) * self.area())
    }

    /// Tangent of the Brocard angle, `4 S / (a^2 + b^2 + c^2)`; exact.
    pub fn tan_brocard(&self) -> S {
        S::from_int(4) * self.area() / self.sum_side_sq()
    }

    /// Brocard angle in radians. Angles are not exact objects; the value is
    /// computed through f64 on either backend.
    pub fn brocard_angle(&self) -> S {
        S::from_f64(self.tan_brocard().to_f64().atan())
    }

    /// Isogonal conjugate. Errors: vertex input, or a point of the
    /// circumcircle (conjugate at infinity).
    pub fn isogonal_conjugate(&self, p: &Point<S>) -> Result<Point<S>> {
        if !p.is_finite() {
            return Err(Error::Kernel(KernelError::InfinitePointUnsupported));
        }
        let b = self.barycentric_of(p);
        let eps = S::eps(&self.ctx);
        let zeros = [&b.u, &b.v, &b.w]
            .iter()
            .filter(|t| t.abs() <= eps.clone())
            .count();
        if zeros >= 2 {
            return Err(Error::AtVertex);
        }
        let [a2, b2, c2] = self.side2.clone();
        let u = a2 * b.v.clone() * b.w.clone();
        let v = b2 * b.w.clone() * b.u.clone();
        let w = c2 * b.u.clone() * b.v.clone();
        let sum = u.clone() + v.clone() + w.clone();
        // Dimension: weights are (length^2) x (dimensionless)^2; compare the
        // sum against eps * scale for a scale-aware circumcircle test.
        let guard = S::eps(&self.ctx) * S::from_f64(self.ctx.scale.max(1.0));
        if sum.abs() <= guard {
            return Err(Error::OnCircumcircle);
        }
        self.eval_barycentric(&Barycentric::new(u, v, w))
            .ok_or(Error::OnCircumcircle)
    }

    /// Foot of the internal cevian of rank `k` from the vertex: for vertex A
    /// the point of `BC` with `BA_k / A_kC = (c/b)^k`.
    pub fn cevian_foot_rank_k(&self, v: Vertex, k: &S) -> Result<Point<S>> {
        let ratio = self.rank_ratio(v, k)?;
        let (p, q) = v.others();
        let t = ratio.clone() / (S::one() + ratio);
        Ok(self.vertex(p).lerp(self.vertex(q), t))
    }

    /// `(c/b)^k` for vertex A and its cyclic analogues: the defining ratio of
    /// the rank-k cevian.
    pub fn rank_ratio(&self, v: Vertex, k: &S) -> Result<S> {
        // For vertex A the defining ratio uses the adjacent sides c = AB and
        // b = AC; cyclically for the others.
        let (num2, den2) = match v {
            Vertex::A => (self.side2[2].clone(), self.side2[1].clone()),
            Vertex::B => (self.side2[0].clone(), self.side2[2].clone()),
            Vertex::C => (self.side2[1].clone(), self.side2[0].clone()),
        };
        let kf = k.to_f64();
        let rounded = kf.round();
        let is_integer = (kf - rounded).abs() < 1e-12;
        if S::EXACT {
            if !is_integer {
                return Err(Error::NonIntegerRank);
            }
            let n = rounded as i64;
            let q = num2 / den2;
            let whole = exact_int_pow(&q, n.div_euclid(2));
            if n.rem_euclid(2) == 1 {
                let root = q.sqrt().ok_or(Error::SidesUnavailable)?;
                Ok(whole * root)
            } else {
                Ok(whole)
            }
        } else {
            let q = num2.to_f64() / den2.to_f64();
            Ok(S::from_f64(q.powf(kf / 2.0)))
        }
    }

    /// Line from a vertex through the symmedian point.
    pub fn symmedian_line(&self, v: Vertex) -> Result<Line<S>> {
        let k = self.center(CenterId::SymmedianPoint)?;
        Ok(Line::through(self.vertex(v), &k, &self.ctx)?)
    }

    /// Foot of the altitude from the vertex onto the opposite side line.
    pub fn altitude_foot(&self, v: Vertex) -> Point<S> {
        self.side_line(v).project(self.vertex(v))
    }

    /// Tangent to the circumcircle at a vertex.
    pub fn tangent_at_vertex(&self, v: Vertex) -> Line<S> {
        self.circumcircle()
            .tangent_at(self.vertex(v))
            .expect("vertex is not the circumcenter")
    }

    /// Trilinear polar of a point: the line through the harmonic conjugates of
    /// its cevian feet. The centroid's polar is the line at infinity, reported
    /// as [`Error::IsLineAtInfinity`].
    pub fn trilinear_polar(&self, p: &Point<S>) -> Result<Line<S>> {
        if !p.is_finite() {
            return Err(Error::Kernel(KernelError::InfinitePointUnsupported));
        }
        let b = self.barycentric_of(p);
        let eps = S::eps(&self.ctx);
        let zeros = [&b.u, &b.v, &b.w]
            .iter()
            .filter(|t| t.abs() <= eps.clone())
            .count();
        if zeros >= 2 {
            return Err(Error::AtVertex);
        }
        if zeros == 1 {
            return Err(Error::OnSideLine);
        }
        let mut conjugates = Vec::new();
        for v in Vertex::ALL {
            let foot = self.cevian_foot_of_point(v, p)?;
            let (pv, qv) = v.others();
            let conj =
                harmonic_conjugate(&foot, self.vertex(pv), self.vertex(qv), &self.ctx)?;
            conjugates.push(conj);
        }
        let finite: Vec<&Point<S>> = conjugates.iter().filter(|p| p.is_finite()).collect();
        match finite.len() {
            0 => Err(Error::IsLineAtInfinity),
            1 => {
                let inf = conjugates.iter().find(|p| p.is_infinite()).unwrap();
                Ok(Line::with_direction(finite[0], &inf.direction())?)
            }
            _ => Ok(Line::through(finite[0], finite[1], &self.ctx)?),
        }
    }

    /// Foot on the opposite side of the cevian from `v` through `p`.
    pub fn cevian_foot_of_point(&self, v: Vertex, p: &Point<S>) -> Result<Point<S>> {
        let cevian = Line::through(self.vertex(v), p, &self.ctx)?;
        let side = self.side_line(v);
        let meet = crate::kernel::meet_lines(&cevian, &side, &self.ctx)?;
        Ok(meet)
    }

    /// Line through `p` antiparallel to the named side (for side `BC`: the
    /// direction of the circumcircle tangent at `A`). `p` must lie strictly
    /// inside the angle at the opposite vertex.
    pub fn antiparallel_through(&self, side_of: Vertex, p: &Point<S>) -> Result<Line<S>> {
        let apex = self.vertex(side_of);
        let (bv, cv) = side_of.others();
        // p = apex + alpha (B - apex) + beta (C - apex), both positive inside.
        let e1 = apex.vec_to(self.vertex(bv));
        let e2 = apex.vec_to(self.vertex(cv));
        let d = apex.vec_to(p);
        let det = e1.cross(&e2);
        let alpha = d.cross(&e2) / det.clone();
        let beta = e1.cross(&d) / det;
        let eps = S::eps(&self.ctx);
        if alpha <= eps.clone() || beta <= eps {
            return Err(Error::OutsideAngle);
        }
        let tangent = self.tangent_at_vertex(side_of);
        Ok(tangent.parallel_through(p))
    }

    /// Whether all three pairwise side-length differences are comfortably
    /// nonzero (squared-length test).
    pub fn is_scalene(&self) -> bool {
        let [a2, b2, c2] = self.side2.clone();
        let guard = S::eps(&self.ctx) * S::from_f64(self.ctx.scale.max(1.0));
        (a2.clone() - b2.clone()).abs() > guard.clone()
            && (b2.clone() - c2.clone()).abs() > guard.clone()
            && (c2 - a2).abs() > guard
    }

    fn has_right_angle(&self) -> bool {
        let guard = S::eps(&self.ctx) * S::from_f64(self.ctx.scale.max(1.0));
        for v in Vertex::ALL {
            let (p, q) = v.others();
            let d1 = self.vertex(v).vec_to(self.vertex(p));
            let d2 = self.vertex(v).vec_to(self.vertex(q));
            if d1.dot(&d2).abs() <= guard {
                return true;
            }
        }
        false
    }

    /// Labeled tangential-triangle vertices `[T_A, T_B, T_C]` (each opposite
    /// the like-named vertex). Fails for right triangles.
    pub fn tangential_vertices(&self) -> Result<[Point<S>; 3]> {
        if self.has_right_angle() {
            return Err(Error::RightAngle);
        }
        let ta = self.tangent_at_vertex(Vertex::A);
        let tb = self.tangent_at_vertex(Vertex::B);
        let tc = self.tangent_at_vertex(Vertex::C);
        let meet = |l1: &Line<S>, l2: &Line<S>| -> Result<Point<S>> {
            let p = crate::kernel::meet_lines(l1, l2, &self.ctx)?;
            if p.is_infinite() {
                return Err(Error::RightAngle);
            }
            Ok(p)
        };
        Ok([meet(&tb, &tc)?, meet(&tc, &ta)?, meet(&ta, &tb)?])
    }

    /// Labeled second-Brocard-triangle vertices: projections of the
    /// circumcenter onto the three symmedians.
    pub fn second_brocard_vertices(&self) -> Result<[Point<S>; 3]> {
        if !self.is_scalene() {
            return Err(Error::IsoscelesDegenerate);
        }
        let o = self.circumcenter();
        let mut out = Vec::with_capacity(3);
        for v in Vertex::ALL {
            let sym = self.symmedian_line(v)?;
            out.push(sym.project(&o));
        }
        Ok([out[0].clone(), out[1].clone(), out[2].clone()])
    }

    /// Labeled Lucas inner-circle centers `[L_a, L_b, L_c]`.
    pub fn lucas_centers(&self) -> Result<[Point<S>; 3]> {
        let mut out = Vec::with_capacity(3);
        for v in Vertex::ALL {
            let (c, _r) = self.lucas_center_radius(v)?;
            out.push(c);
        }
        Ok([out[0].clone(), out[1].clone(), out[2].clone()])
    }

    /// Center and radius of the Lucas inner circle at a vertex:
    /// `l_a = R h_a / (a + h_a)`, the center on segment `O`-vertex at distance
    /// `R - l_a` from `O`.
    pub fn lucas_center_radius(&self, v: Vertex) -> Result<(Point<S>, S)> {
        let [a, b, c] = self.side_lengths()?;
        let side = match v {
            Vertex::A => a.clone(),
            Vertex::B => b.clone(),
            Vertex::C => c.clone(),
        };
        let r_big = a * b * c / (S::from_int(4) * self.area());
        let h = S::two() * self.area() / side.clone();
        let l = r_big.clone() * h.clone() / (side + h);
        let o = self.circumcenter();
        let t = (r_big.clone() - l.clone()) / r_big;
        let center = o.lerp(self.vertex(v), t);
        Ok((center, l))
    }

    pub fn derived_triangle(&self, id: DerivedTriangleId) -> Result<Triangle<S>> {
        let [p, q, r] = match id {
            DerivedTriangleId::Medial => [
                self.vb().midpoint(self.vc()),
                self.vc().midpoint(self.va()),
                self.va().midpoint(self.vb()),
            ],
            DerivedTriangleId::Tangential => self.tangential_vertices()?,
            DerivedTriangleId::SecondBrocard => self.second_brocard_vertices()?,
            DerivedTriangleId::Excentral => [
                self.excenter(Vertex::A)?,
                self.excenter(Vertex::B)?,
                self.excenter(Vertex::C)?,
            ],
            DerivedTriangleId::Lucas => self.lucas_centers()?,
        };
        Triangle::new(p, q, r, &self.ctx)
    }
}

/// Exact integer power of a scalar (negative exponents invert).
fn exact_int_pow<S: Scalar>(x: &S, n: i64) -> S {
    let mut result = S::one();
    let (mut base, mut m) = if n < 0 {
        (S::one() / x.clone(), (-n) as u64)
    } else {
        (x.clone(), n as u64)
    };
    while m > 0 {
        if m & 1 == 1 {
            result = result * base.clone();
        }
        base = base.clone() * base;
        m >>= 1;
    }
    result
}

/// The point `P'` on line `BC` with cross-ratio `(B, C; P, P') = -1`. The
/// midpoint maps to the point at infinity along `BC`.
pub fn harmonic_conjugate<S: Scalar>(
    p: &Point<S>,
    b: &Point<S>,
    c: &Point<S>,
    ctx: &ToleranceContext,
) -> Result<Point<S>> {
    let line = Line::through(b, c, ctx)?;
    if !line.contains(p, ctx) {
        return Err(Error::NotOnLine);
    }
    let d = b.vec_to(c);
    let t = b.vec_to(p).dot(&d) / d.norm2();
    let eps = dimensionless_eps::<S>(ctx);
    if t.abs() <= eps.clone() || (t.clone() - S::one()).abs() <= eps.clone() {
        return Err(Error::AtEndpoint);
    }
    let denom = S::two() * t.clone() - S::one();
    if denom.abs() <= eps {
        return Ok(Point::at_infinity(d.x, d.y));
    }
    Ok(b.lerp(c, t / denom))
}

/// Dimensionless tolerance: effective length tolerance divided by scene scale.
pub fn dimensionless_eps<S: Scalar>(ctx: &ToleranceContext) -> S {
    if S::EXACT {
        S::zero()
    } else {
        S::from_f64(ctx.effective() / ctx.scale.max(f64::MIN_POSITIVE))
    }
}

/// Reflection of the direction `of` in the internal angle bisector at the
/// apex formed by rays toward `arm1` and `arm2`: the isogonal direction.
/// Angle arithmetic runs through f64 on either backend.
pub fn isogonal_direction<S: Scalar>(
    apex: &Point<S>,
    arm1: &Point<S>,
    arm2: &Point<S>,
    of: &Vec2<S>,
) -> Vec2<S> {
    let e1 = apex.vec_to(arm1);
    let e2 = apex.vec_to(arm2);
    let a1 = e1.y.to_f64().atan2(e1.x.to_f64());
    let a2 = e2.y.to_f64().atan2(e2.x.to_f64());
    let ad = of.y.to_f64().atan2(of.x.to_f64());
    // Reflecting across the bisector sends angle t to a1 + a2 - t.
    let reflected = a1 + a2 - ad;
    Vec2::new(S::from_f64(reflected.cos()), S::from_f64(reflected.sin()))
}

/// Residual for two lines being parallel: normalized cross of directions.
pub fn parallelism_residual<S: Scalar>(d1: &Vec2<S>, d2: &Vec2<S>) -> f64 {
    let cross = d1.cross(d2).to_f64().abs();
    let n = (d1.norm2().to_f64() * d2.norm2().to_f64()).sqrt();
    if n == 0.0 {
        f64::INFINITY
    } else {
        cross / n
    }
}

/// Residual for three points being collinear, normalized by the squared scene
/// scale (dimensionless).
pub fn collinearity_residual<S: Scalar>(
    p: &Point<S>,
    q: &Point<S>,
    r: &Point<S>,
    scale: f64,
) -> f64 {
    if p.is_infinite() || q.is_infinite() || r.is_infinite() {
        return f64::INFINITY;
    }
    let area2 = p.vec_to(q).cross(&p.vec_to(r)).to_f64().abs();
    area2 / (scale * scale)
}
