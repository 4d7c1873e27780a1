//! Constructors for the named circles of a triangle.
//!
//! Every constructor assembles its circle twice over: once from the
//! closed-form center/radius and once from the defining construction (the
//! witness points). Agreement is asserted at construction time, so a
//! transcription error in either route fails loudly.

use std::collections::BTreeMap;

use crate::centers::{harmonic_conjugate, CenterId, Error as CentersError, Triangle, Vertex};
use crate::kernel::{
    circle_through, meet_lines, Circle, Error as KernelError, Line, Point, Scalar,
    ToleranceContext,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("point lies outside the triangle")]
    PointOutsideTriangle,
    #[error("adjacent sides are equal; the circle is undefined")]
    IsoscelesUndefined,
    #[error("cevian foot conjugate is at infinity")]
    FootAtInfinity,
    #[error("squared radius is negative for these parameters")]
    ImaginaryRadius,
    #[error("the two named vertices must be distinct")]
    IdenticalVertices,
    #[error("witness point does not lie on the constructed circle")]
    WitnessOffCircle,
    #[error(transparent)]
    Centers(#[from] CentersError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemoineOrder {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrozFarnyOrder {
    First,
    Second,
}

/// A named circle with the points its defining theorem puts on it, plus
/// named scalars (radii, angles, cross-checked formula values) and any
/// auxiliary circles of the construction.
#[derive(Clone, Debug)]
pub struct NamedCircleResult<S> {
    pub circle: Circle<S>,
    pub witnesses: Vec<(String, Point<S>)>,
    pub metadata: BTreeMap<String, S>,
    pub aux_circles: Vec<(String, Circle<S>)>,
}

impl<S: Scalar> NamedCircleResult<S> {
    fn new(circle: Circle<S>) -> Self {
        NamedCircleResult {
            circle,
            witnesses: Vec::new(),
            metadata: BTreeMap::new(),
            aux_circles: Vec::new(),
        }
    }

    fn push_witness(&mut self, name: &str, p: Point<S>) {
        self.witnesses.push((name.to_string(), p));
    }

    fn meta(&mut self, name: &str, v: S) {
        self.metadata.insert(name.to_string(), v);
    }

    fn meta_opt(&mut self, name: &str, v: Option<S>) {
        if let Some(v) = v {
            self.metadata.insert(name.to_string(), v);
        }
    }

    /// Construction-time cross-validation: every witness on the circle.
    fn check_witnesses(&self, ctx: &ToleranceContext) -> Result<()> {
        let guard = S::eps(ctx) * S::from_f64(ctx.scale.max(1.0)) * S::from_int(16);
        for (_, p) in &self.witnesses {
            if self.circle.on_circle_defect(p) > guard {
                return Err(Error::WitnessOffCircle);
            }
        }
        Ok(())
    }

    pub fn witness_points(&self) -> Vec<Point<S>> {
        self.witnesses.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn witness(&self, name: &str) -> Option<&Point<S>> {
        self.witnesses
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
    }
}

fn side_pair<S: Scalar>(t: &Triangle<S>, v: Vertex) -> (Line<S>, Line<S>) {
    // Lines of the two sides adjacent to `v`, in (previous, next) cyclic
    // order: for A that is (AB, AC).
    let (p, q) = v.others();
    let ctx = t.ctx();
    (
        Line::through(t.vertex(v), t.vertex(p), ctx).expect("nondegenerate"),
        Line::through(t.vertex(v), t.vertex(q), ctx).expect("nondegenerate"),
    )
}

/// First or second Lemoine circle.
///
/// Second: centered at the symmedian point `K` with radius
/// `abc / (a^2+b^2+c^2)`, witnesses the six antiparallel cuts. First: centered
/// at the midpoint of `OK` with squared radius `(R^2 + R_L2^2)/4`, witnesses
/// the six parallel cuts; the published closed form for the radius is
/// evaluated into the metadata and must agree.
pub fn lemoine_circle<S: Scalar>(
    t: &Triangle<S>,
    order: LemoineOrder,
) -> Result<NamedCircleResult<S>> {
    let ctx = *t.ctx();
    let k = t.center(CenterId::SymmedianPoint)?;
    let sum = t.sum_side_sq();
    let prod = t.side_sq(Vertex::A) * t.side_sq(Vertex::B) * t.side_sq(Vertex::C);
    let rl2_sq = prod.clone() / sum.clone().sq();
    let r2_circ = t.circumradius_sq();

    let mut result = match order {
        LemoineOrder::Second => {
            let circle = Circle::new(k.clone(), rl2_sq.clone())?;
            let mut res = NamedCircleResult::new(circle);
            // An antiparallel to a side has the direction of the circumcircle
            // tangent at the opposite vertex.
            let labels = [
                (Vertex::A, "A1", "A2"),
                (Vertex::B, "B1", "B2"),
                (Vertex::C, "C1", "C2"),
            ];
            for (v, l_prev, l_next) in labels {
                let tangent = t.tangent_at_vertex(v);
                let anti = tangent.parallel_through(&k);
                let (side_prev, side_next) = side_pair(t, v);
                let p1 = meet_lines(&anti, &side_prev, &ctx)?;
                let p2 = meet_lines(&anti, &side_next, &ctx)?;
                res.push_witness(l_prev, p1);
                res.push_witness(l_next, p2);
            }
            res
        }
        LemoineOrder::First => {
            let o = t.circumcenter();
            let center = o.midpoint(&k);
            let r2 = (r2_circ.clone() + rl2_sq.clone()) / S::from_int(4);
            let circle = Circle::new(center, r2.clone())?;
            let mut res = NamedCircleResult::new(circle);
            // Parallels through K: to BC cutting AB and AC, and cyclically.
            let labels = [
                (Vertex::A, "A1", "A2"),
                (Vertex::B, "B1", "B2"),
                (Vertex::C, "C1", "C2"),
            ];
            for (v, l_prev, l_next) in labels {
                let side = t.side_line(v);
                let par = side.parallel_through(&k);
                let (side_prev, side_next) = side_pair(t, v);
                let p1 = meet_lines(&par, &side_prev, &ctx)?;
                let p2 = meet_lines(&par, &side_next, &ctx)?;
                res.push_witness(l_prev, p1);
                res.push_witness(l_next, p2);
            }
            // Published closed form for the squared radius, kept as a second
            // route: (R^2 (a^2+b^2+c^2)^2 + a^2 b^2 c^2) / (4 (a^2+b^2+c^2)^2).
            let formula = (r2_circ.clone() * sum.clone().sq() + prod.clone())
                / (S::from_int(4) * sum.clone().sq());
            res.meta("R_L1_sq_formula", formula.clone());
            let guard = S::eps(&ctx) * S::from_f64(ctx.scale.max(1.0));
            if (formula - r2).abs() > guard {
                return Err(Error::WitnessOffCircle);
            }
            res
        }
    };

    result.meta("tan_omega", t.tan_brocard());
    result.meta("R_L2_sq", rl2_sq.clone());
    result.meta_opt("R_L2", rl2_sq.sqrt());
    result.meta("R_sq", r2_circ);
    result.check_witnesses(&ctx)?;
    Ok(result)
}

/// Generalized Lemoine circle: `M` on the A-symmedian at parameter `t_param`
/// of segment A->K, parallels `MN || AB` and `MP || AC` closed against the B-
/// and C-symmedians, and the six side cuts of the three parallels (NP comes
/// out parallel to BC, which is asserted).
pub fn generalized_lemoine<S: Scalar>(
    t: &Triangle<S>,
    t_param: &S,
) -> Result<NamedCircleResult<S>> {
    let ctx = *t.ctx();
    if *t_param <= S::zero() || *t_param > S::one() {
        return Err(Error::PointOutsideTriangle);
    }
    let k = t.center(CenterId::SymmedianPoint)?;
    let m = t.va().lerp(&k, t_param.clone());
    if !t.contains_strict(&m) {
        return Err(Error::PointOutsideTriangle);
    }
    let ab = Line::through(t.va(), t.vb(), &ctx).map_err(Error::Kernel)?;
    let ac = Line::through(t.va(), t.vc(), &ctx).map_err(Error::Kernel)?;
    let bc = t.side_line(Vertex::A);
    let bk = Line::through(t.vb(), &k, &ctx).map_err(Error::Kernel)?;
    let ck = Line::through(t.vc(), &k, &ctx).map_err(Error::Kernel)?;

    let mn = ab.parallel_through(&m);
    let mp = ac.parallel_through(&m);
    let n = meet_lines(&mn, &bk, &ctx)?;
    let p = meet_lines(&mp, &ck, &ctx)?;
    if n.is_infinite() || p.is_infinite() {
        return Err(Error::DegenerateTriangle);
    }
    // At t = 1 all of M, N, P collapse onto K and the NP line degenerates to
    // the parallel to BC through K (the first Lemoine configuration).
    let np = match Line::through(&n, &p, &ctx) {
        Ok(l) => l,
        Err(KernelError::CoincidentPoints) => bc.parallel_through(&n),
        Err(e) => return Err(Error::Kernel(e)),
    };
    // The construction forces NP || BC; assert it.
    let cross = np.normal().cross(&bc.normal()).abs();
    if cross > S::eps(&ctx) * S::from_int(64) {
        return Err(Error::WitnessOffCircle);
    }

    // Six side cuts: MN || AB cuts BC and CA; MP || AC cuts AB and BC;
    // NP || BC cuts AB and CA.
    let t_pt = meet_lines(&mn, &bc, &ctx)?;
    let w = meet_lines(&mn, &ac, &ctx)?;
    let s = meet_lines(&mp, &ab, &ctx)?;
    let v = meet_lines(&mp, &bc, &ctx)?;
    let r = meet_lines(&np, &ab, &ctx)?;
    let u = meet_lines(&np, &ac, &ctx)?;

    let circle = circle_through(&r, &s, &t_pt, &ctx)?;
    let mut res = NamedCircleResult::new(circle);
    res.push_witness("R", r);
    res.push_witness("S", s);
    res.push_witness("T", t_pt);
    res.push_witness("U", u);
    res.push_witness("V", v);
    res.push_witness("W", w);
    res.meta("t", t_param.clone());
    res.check_witnesses(&ctx)?;
    Ok(res)
}

/// Squared radius of the Droz-Farny family circle for vertex-circle radius
/// `rho`: `rho^2 + 4 R^2 - (a^2+b^2+c^2)/2`. Exposed separately because the
/// value is meaningful (and sign-indefinite) even when no real circle exists.
pub fn droz_farny_family_radius_sq<S: Scalar>(t: &Triangle<S>, rho: &S) -> S {
    rho.clone().sq() + S::from_int(4) * t.circumradius_sq() - t.sum_side_sq().half()
}

/// First (center `H`) or second (center `O`) Droz-Farny circle; both have
/// squared radius `5 R^2 - (a^2+b^2+c^2)/2 = (R^2 + OH^2)/2`.
pub fn droz_farny<S: Scalar>(
    t: &Triangle<S>,
    order: DrozFarnyOrder,
) -> Result<NamedCircleResult<S>> {
    let ctx = *t.ctx();
    let o = t.circumcenter();
    let h = t.orthocenter();
    let r2 = S::from_int(5) * t.circumradius_sq() - t.sum_side_sq().half();
    if r2 < S::zero() {
        return Err(Error::ImaginaryRadius);
    }
    let oh_sq = o.dist2(&h);
    let alt = (t.circumradius_sq() + oh_sq.clone()).half();
    let guard = S::eps(&ctx) * S::from_f64(ctx.scale.max(1.0)) * S::from_int(16);
    if (alt.clone() - r2.clone()).abs() > guard {
        return Err(Error::WitnessOffCircle);
    }

    let center = match order {
        DrozFarnyOrder::First => h.clone(),
        DrozFarnyOrder::Second => o.clone(),
    };
    let circle = Circle::new(center, r2.clone())?;
    let mut res = NamedCircleResult::new(circle);

    // Witnesses: cuts of the sides by circles centered at the altitude feet
    // through O (first) or at the side midpoints through H (second).
    for (v, base) in [(Vertex::A, "A"), (Vertex::B, "B"), (Vertex::C, "C")] {
        let (p, q) = v.others();
        let side = t.side_line(v);
        let center_i = match order {
            DrozFarnyOrder::First => t.altitude_foot(v),
            DrozFarnyOrder::Second => t.vertex(p).midpoint(t.vertex(q)),
        };
        let through = match order {
            DrozFarnyOrder::First => &o,
            DrozFarnyOrder::Second => &h,
        };
        let aux = Circle::with_point(center_i, through)?;
        match aux.intersect_line(&side, &ctx) {
            Ok(pts) => {
                for (i, pt) in pts.into_iter().enumerate() {
                    res.push_witness(&format!("{base}{}", i + 1), pt);
                }
            }
            Err(KernelError::ExactSqrtUnavailable) => {}
            Err(e) => return Err(Error::Kernel(e)),
        }
        res.aux_circles.push((format!("aux_{base}"), aux));
    }

    res.meta("R2_sq", r2);
    res.meta("OH_sq", oh_sq);
    res.meta("R_sq", t.circumradius_sq());
    res.check_witnesses(&ctx)?;
    Ok(res)
}

/// Generalized first Droz-Farny circle: congruent circles of radius `rho`
/// centered at the vertices cut the medial-triangle side lines in up to six
/// points on a circle centered at `H`. With `rho` too small some or all
/// witnesses are absent; the radius is returned regardless.
pub fn droz_farny_family<S: Scalar>(t: &Triangle<S>, rho: &S) -> Result<NamedCircleResult<S>> {
    let ctx = *t.ctx();
    let r2 = droz_farny_family_radius_sq(t, rho);
    if r2 < S::zero() {
        return Err(Error::ImaginaryRadius);
    }
    let h = t.orthocenter();
    let circle = Circle::new(h, r2.clone())?;
    let mut res = NamedCircleResult::new(circle);
    let rho2 = rho.clone().sq();
    for (v, l1, l2) in [
        (Vertex::A, "P1", "Q1"),
        (Vertex::B, "P2", "Q2"),
        (Vertex::C, "P3", "Q3"),
    ] {
        // Midline parallel to the side opposite `v`, through the two adjacent
        // side midpoints.
        let (p, q) = v.others();
        let m1 = t.vertex(v).midpoint(t.vertex(p));
        let m2 = t.vertex(v).midpoint(t.vertex(q));
        let midline = Line::through(&m1, &m2, &ctx).map_err(Error::Kernel)?;
        let vertex_circle = Circle::new(t.vertex(v).clone(), rho2.clone())?;
        match vertex_circle.intersect_line(&midline, &ctx) {
            Ok(pts) => {
                let names = [l1, l2];
                for (i, pt) in pts.into_iter().enumerate() {
                    res.push_witness(names[i.min(1)], pt);
                }
            }
            Err(KernelError::ExactSqrtUnavailable) => {}
            Err(e) => return Err(Error::Kernel(e)),
        }
    }
    res.meta("R_H_sq", r2);
    res.meta("rho", rho.clone());
    res.check_witnesses(&ctx)?;
    Ok(res)
}

/// Radical circle of the three excircles: centered at the Spieker point with
/// squared radius `(r^2 + p^2)/4`. The three equal Spieker-to-excircle powers
/// are recorded in the metadata; the excircles ride along as aux circles.
pub fn radical_circle_excircles<S: Scalar>(t: &Triangle<S>) -> Result<NamedCircleResult<S>> {
    let ctx = *t.ctx();
    let spieker = t.center(CenterId::Spieker)?;
    let p = t.semiperimeter()?;
    let r_in = t.area() / p.clone();
    let r2 = (r_in.clone().sq() + p.clone().sq()) / S::from_int(4);
    let circle = Circle::new(spieker.clone(), r2.clone())?;
    let mut res = NamedCircleResult::new(circle);
    let guard = S::eps(&ctx) * S::from_f64(ctx.scale.max(1.0)) * S::from_int(16);
    for (v, name) in [(Vertex::A, "I_a"), (Vertex::B, "I_b"), (Vertex::C, "I_c")] {
        let ex = t.excircle(v)?;
        let pow = crate::kernel::power_of_point(&spieker, &ex);
        if (pow.clone() - r2.clone()).abs() > guard {
            return Err(Error::WitnessOffCircle);
        }
        res.meta(&format!("power_{name}"), pow);
        res.aux_circles.push((name.to_string(), ex));
    }
    res.meta("r_in", r_in);
    res.meta("semiperimeter", p);
    res.check_witnesses(&ctx)?;
    Ok(res)
}

/// Neuberg circle for a vertex: center on the perpendicular bisector of the
/// opposite side at distance `(a/2) cot w` on the vertex side, squared radius
/// `(a^2/4)(cot^2 w - 3)`. The vertex itself is the recorded witness.
pub fn neuberg_circle<S: Scalar>(t: &Triangle<S>, v: Vertex) -> Result<NamedCircleResult<S>> {
    let ctx = *t.ctx();
    let (p, q) = v.others();
    let cot = t.cot_brocard();
    let mid = t.vertex(p).midpoint(t.vertex(q));
    // CCW orientation puts the vertex on the left of p -> q, the side of
    // perp(q - p).
    let offset = t
        .vertex(p)
        .vec_to(t.vertex(q))
        .perp()
        .scale(cot.clone().half());
    let center = mid.add_vec(&offset);
    let a2 = t.side_sq(v);
    let mut r2 = a2.clone() / S::from_int(4) * (cot.clone().sq() - S::from_int(3));
    if !S::EXACT && r2 < S::zero() {
        // Round-off guard: the radicand is nonnegative for every triangle.
        r2 = S::zero();
    }
    let circle = Circle::new(center.clone(), r2.clone())?;
    let mut res = NamedCircleResult::new(circle);
    if r2 > S::zero() {
        res.push_witness("vertex", t.vertex(v).clone());
    }
    res.meta("cot_omega", cot);
    res.meta("n_sq", r2);
    let o = t.circumcenter();
    res.meta("ON_sq", o.dist2(&center));
    // ON = a^3 / (4 S) when the side length is representable.
    if let Ok(sides) = t.side_lengths() {
        let a = sides[v.index()].clone();
        res.meta("ON", a2 * a / (S::from_int(4) * t.area()));
    }
    res.check_witnesses(&ctx)?;
    Ok(res)
}

/// Lucas inner circle for a vertex: internally tangent to the circumcircle at
/// the vertex, radius `R h / (a + h)`. Witnesses: the vertex and the two
/// inscribed-square corners on the adjacent sides.
pub fn lucas_circle<S: Scalar>(t: &Triangle<S>, v: Vertex) -> Result<NamedCircleResult<S>> {
    let ctx = *t.ctx();
    let (center, l) = t.lucas_center_radius(v)?;
    let circle = Circle::new(center.clone(), l.clone().sq())?;
    let mut res = NamedCircleResult::new(circle);

    let [a, b, c] = t.side_lengths()?;
    let side = [a.clone(), b.clone(), c.clone()][v.index()].clone();
    let h = S::two() * t.area() / side.clone();
    let x = side.clone() * h.clone() / (side.clone() + h.clone());
    // Square corners on the two adjacent sides at height x over the base.
    let (pv, qv) = v.others();
    let s = x / h;
    let corner1 = t.vertex(pv).lerp(t.vertex(v), s.clone());
    let corner2 = t.vertex(qv).lerp(t.vertex(v), s);
    res.push_witness("vertex", t.vertex(v).clone());
    res.push_witness("corner1", corner1);
    res.push_witness("corner2", corner2);

    // Second published closed form: l = R / (1 + 2 a R / (b c)) for vertex A.
    let r_big = a.clone() * b.clone() * c.clone() / (S::from_int(4) * t.area());
    let (adj1, adj2) = match v {
        Vertex::A => (b.clone(), c.clone()),
        Vertex::B => (c.clone(), a.clone()),
        Vertex::C => (a.clone(), b.clone()),
    };
    let alt_formula =
        r_big.clone() / (S::one() + S::two() * side * r_big.clone() / (adj1 * adj2));
    let guard = S::eps(&ctx) * S::from_f64(ctx.scale.max(1.0)) * S::from_int(16);
    if (alt_formula.clone() - l.clone()).abs() > guard {
        return Err(Error::WitnessOffCircle);
    }
    res.meta("l", l.clone());
    res.meta("l_alt", alt_formula);
    res.meta("R", r_big.clone());
    // Internal tangency: |O L| = R - l, asserted in squared form.
    let o = t.circumcenter();
    let d2 = o.dist2(&center);
    if (d2 - (r_big - l).sq()).abs() > guard {
        return Err(Error::WitnessOffCircle);
    }
    res.check_witnesses(&ctx)?;
    Ok(res)
}

/// Apollonius circle of rank `k` for a vertex: the circle on the diameter cut
/// by the rank-k cevian foot and its harmonic conjugate.
pub fn apollonius_rank_k<S: Scalar>(
    t: &Triangle<S>,
    v: Vertex,
    k: &S,
) -> Result<NamedCircleResult<S>> {
    let ctx = *t.ctx();
    let (p, q) = v.others();
    let guard = S::eps(&ctx) * S::from_f64(ctx.scale.max(1.0));
    // Adjacent sides of `v` are the sides opposite `p` and `q`.
    if (t.side_sq(q).clone() - t.side_sq(p).clone()).abs() <= guard {
        return Err(Error::IsoscelesUndefined);
    }
    let foot = t.cevian_foot_rank_k(v, k)?;
    let conj = harmonic_conjugate(&foot, t.vertex(p), t.vertex(q), &ctx)?;
    if conj.is_infinite() {
        return Err(Error::FootAtInfinity);
    }
    let center = foot.midpoint(&conj);
    let r2 = foot.dist2(&conj) / S::from_int(4);
    let circle = Circle::new(center, r2)?;
    let mut res = NamedCircleResult::new(circle);
    res.push_witness("foot_internal", foot);
    res.push_witness("foot_external", conj);
    res.meta("k", k.clone());
    if let Ok(ratio) = t.rank_ratio(v, k) {
        res.meta("ratio", ratio);
    }
    res.check_witnesses(&ctx)?;
    Ok(res)
}

/// Six-point circle of an interior point and its isogonal conjugate: the six
/// side projections are concyclic about the midpoint of the pair.
pub fn six_point_circle<S: Scalar>(
    t: &Triangle<S>,
    p1: &Point<S>,
) -> Result<NamedCircleResult<S>> {
    if !t.contains_strict(p1) {
        return Err(Error::PointOutsideTriangle);
    }
    let p2 = t.isogonal_conjugate(p1)?;
    six_point_circle_of_pair(t, p1, &p2)
}

/// Same construction for an explicitly supplied isogonal pair (used when the
/// pair is known in closed form, e.g. orthocenter and circumcenter).
pub fn six_point_circle_of_pair<S: Scalar>(
    t: &Triangle<S>,
    p1: &Point<S>,
    p2: &Point<S>,
) -> Result<NamedCircleResult<S>> {
    let ctx = *t.ctx();
    let center = p1.midpoint(p2);
    let mut witnesses = Vec::new();
    for (v, n1, n2) in [
        (Vertex::A, "A1", "A2"),
        (Vertex::B, "B1", "B2"),
        (Vertex::C, "C1", "C2"),
    ] {
        let side = t.side_line(v);
        witnesses.push((n1, side.project(p1)));
        witnesses.push((n2, side.project(p2)));
    }
    let r2 = center.dist2(&witnesses[0].1);
    let circle = Circle::new(center, r2)?;
    let mut res = NamedCircleResult::new(circle);
    for (n, p) in witnesses {
        res.push_witness(n, p);
    }
    res.check_witnesses(&ctx)?;
    Ok(res)
}

/// Adjoint circle: through `through` and `tangent_at`, tangent at `tangent_at`
/// to the side joining `tangent_at` to the remaining vertex.
pub fn adjoint_circle<S: Scalar>(
    t: &Triangle<S>,
    through: Vertex,
    tangent_at: Vertex,
) -> Result<Circle<S>> {
    if through == tangent_at {
        return Err(Error::IdenticalVertices);
    }
    let ctx = *t.ctx();
    let third = Vertex::ALL
        .into_iter()
        .find(|v| *v != through && *v != tangent_at)
        .unwrap();
    let side =
        Line::through(t.vertex(tangent_at), t.vertex(third), &ctx).map_err(Error::Kernel)?;
    let perp = side.perpendicular_through(t.vertex(tangent_at));
    let chord =
        Line::through(t.vertex(through), t.vertex(tangent_at), &ctx).map_err(Error::Kernel)?;
    let bisector =
        chord.perpendicular_through(&t.vertex(through).midpoint(t.vertex(tangent_at)));
    let center = meet_lines(&perp, &bisector, &ctx)?;
    if center.is_infinite() {
        return Err(Error::DegenerateTriangle);
    }
    let circle = Circle::with_point(center, t.vertex(tangent_at))?;
    // Cross-check: `through` is on the circle.
    let guard = S::eps(&ctx) * S::from_f64(ctx.scale.max(1.0)) * S::from_int(16);
    if circle.on_circle_defect(t.vertex(through)) > guard {
        return Err(Error::WitnessOffCircle);
    }
    Ok(circle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::concyclicity_residual;

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    fn right_triangle() -> Triangle<f64> {
        Triangle::from_xy([(0.0, 3.0), (0.0, 0.0), (4.0, 0.0)], &ctx()).unwrap()
    }

    fn scalene() -> Triangle<f64> {
        Triangle::from_xy([(0.23, 2.31), (-1.17, 0.08), (3.79, -0.21)], &ctx()).unwrap()
    }

    #[test]
    fn lemoine_second_reference_values() {
        let t = right_triangle();
        let res = lemoine_circle(&t, LemoineOrder::Second).unwrap();
        let c = ctx();
        assert!(res.circle.center().approx_eq(&Point::xy(0.72, 0.96), &c));
        assert!((res.circle.radius_squared() - 1.44).abs() < 1e-12);
        assert!((res.metadata["tan_omega"] - 0.48).abs() < 1e-12);
        assert_eq!(res.witnesses.len(), 6);
    }

    #[test]
    fn lemoine_first_reference_values() {
        let t = right_triangle();
        let res = lemoine_circle(&t, LemoineOrder::First).unwrap();
        let r = res.circle.radius_squared().sqrt();
        assert!((r - (7.69f64).sqrt() / 2.0).abs() < 1e-12);
        assert!((res.metadata["R_L1_sq_formula"] - res.circle.radius_squared()).abs() < 1e-14);
        assert_eq!(res.witnesses.len(), 6);
        // Center at the midpoint of OK.
        let o = t.circumcenter();
        let k = t.center(CenterId::SymmedianPoint).unwrap();
        assert!(res.circle.center().approx_eq(&o.midpoint(&k), &ctx()));
    }

    #[test]
    fn lemoine_circles_on_equilateral_share_center() {
        let t = Triangle::<f64>::from_xy([(0.0, 0.0), (1.0, 0.0), (0.5, 3f64.sqrt() / 2.0)], &ctx())
            .unwrap();
        let first = lemoine_circle(&t, LemoineOrder::First).unwrap();
        let second = lemoine_circle(&t, LemoineOrder::Second).unwrap();
        assert!(first
            .circle
            .center()
            .approx_eq(second.circle.center(), &ctx()));
        // Both radii are R / sqrt(3).
        let r2 = t.circumradius_sq() / 3.0;
        assert!((first.circle.radius_squared() - r2).abs() < 1e-12);
        assert!((second.circle.radius_squared() - r2).abs() < 1e-12);
    }

    #[test]
    fn generalized_lemoine_at_k_is_first_circle() {
        let t = scalene();
        let gen = generalized_lemoine(&t, &1.0).unwrap();
        let first = lemoine_circle(&t, LemoineOrder::First).unwrap();
        assert!(gen.circle.center().approx_eq(first.circle.center(), &ctx()));
        assert!((gen.circle.radius_squared() - first.circle.radius_squared()).abs() < 1e-9);
    }

    #[test]
    fn generalized_lemoine_rejects_bad_parameter() {
        let t = scalene();
        assert!(matches!(
            generalized_lemoine(&t, &0.0),
            Err(Error::PointOutsideTriangle)
        ));
        assert!(matches!(
            generalized_lemoine(&t, &-0.3),
            Err(Error::PointOutsideTriangle)
        ));
    }

    #[test]
    fn droz_farny_right_triangle_radius_is_circumradius() {
        let t = right_triangle();
        for order in [DrozFarnyOrder::First, DrozFarnyOrder::Second] {
            let res = droz_farny(&t, order).unwrap();
            assert!((res.circle.radius_squared() - 6.25).abs() < 1e-12);
            assert_eq!(res.witnesses.len(), 6);
        }
    }

    #[test]
    fn droz_farny_equilateral_radius() {
        let s = 2.0;
        let t = Triangle::<f64>::from_xy(
            [(0.0, 0.0), (s, 0.0), (s / 2.0, s * 3f64.sqrt() / 2.0)],
            &ctx(),
        )
        .unwrap();
        let res = droz_farny(&t, DrozFarnyOrder::First).unwrap();
        // radius s / sqrt(6)
        assert!((res.circle.radius_squared() - s * s / 6.0).abs() < 1e-12);
    }

    #[test]
    fn droz_farny_family_special_cases() {
        let t = right_triangle();
        let r = t.circumradius_sq().sqrt();
        let family = droz_farny_family(&t, &r).unwrap();
        let first = droz_farny(&t, DrozFarnyOrder::First).unwrap();
        assert!((family.circle.radius_squared() - first.circle.radius_squared()).abs() < 1e-12);
        // rho = 1 on the reference triangle: radius^2 = 1 + 25 - 25 = 1.
        let unit = droz_farny_family(&t, &1.0).unwrap();
        assert!((unit.circle.radius_squared() - 1.0).abs() < 1e-12);
        // rho = 0 value matches (OH^2 - R^2)/2 whatever its sign.
        let v = droz_farny_family_radius_sq(&t, &0.0);
        let oh2 = t.circumcenter().dist2(&t.orthocenter());
        assert!((v - (oh2 - t.circumradius_sq()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn excircle_radical_reference_values() {
        let t = right_triangle();
        let res = radical_circle_excircles(&t).unwrap();
        let c = ctx();
        assert!(res.circle.center().approx_eq(&Point::xy(1.5, 1.0), &c));
        assert!((res.circle.radius_squared() - 37.0 / 4.0).abs() < 1e-12);
        for ex in ["I_a", "I_b", "I_c"] {
            assert!((res.metadata[&format!("power_{ex}")] - 37.0 / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn excircle_radical_equilateral() {
        let s = 1.7;
        let t = Triangle::<f64>::from_xy(
            [(0.0, 0.0), (s, 0.0), (s / 2.0, s * 3f64.sqrt() / 2.0)],
            &ctx(),
        )
        .unwrap();
        let res = radical_circle_excircles(&t).unwrap();
        let centroid = t.center(CenterId::Centroid).unwrap();
        assert!(res.circle.center().approx_eq(&centroid, &ctx()));
        let expected = (s * s / 12.0 + 9.0 * s * s / 4.0) / 4.0;
        assert!((res.circle.radius_squared() - expected).abs() < 1e-12);
    }

    #[test]
    fn neuberg_reference_values() {
        let t = right_triangle();
        let res = neuberg_circle(&t, Vertex::A).unwrap();
        let c = ctx();
        assert!(res
            .circle
            .center()
            .approx_eq(&Point::xy(2.0, 25.0 / 6.0), &c));
        assert!((res.circle.radius_squared() - 193.0 / 36.0).abs() < 1e-12);
        assert!((res.metadata["ON"] - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn neuberg_equilateral_is_point_circle() {
        let t = Triangle::<f64>::from_xy([(0.0, 0.0), (1.0, 0.0), (0.5, 3f64.sqrt() / 2.0)], &ctx())
            .unwrap();
        let res = neuberg_circle(&t, Vertex::A).unwrap();
        assert!(res.circle.radius_squared() < 1e-12);
        assert!(res.circle.center().approx_eq(t.va(), &ctx()));
    }

    #[test]
    fn neuberg_locus_samples_are_equibrocardian() {
        let t = scalene();
        let res = neuberg_circle(&t, Vertex::A).unwrap();
        let tan_omega = t.tan_brocard();
        let center = res.circle.center();
        let r = res.circle.radius_squared().sqrt();
        for i in 0..24 {
            let ang = i as f64 * 0.26;
            let m = Point::xy(center.x() + r * ang.cos(), center.y() + r * ang.sin());
            let tm = Triangle::new(m, t.vb().clone(), t.vc().clone(), &ctx()).unwrap();
            assert!((tm.tan_brocard() - tan_omega).abs() < 1e-8);
        }
    }

    #[test]
    fn lucas_reference_values() {
        let t = right_triangle();
        let res = lucas_circle(&t, Vertex::A).unwrap();
        let l = res.metadata["l"];
        assert!((l - 15.0 / 14.0).abs() < 1e-12);
        assert!((res.metadata["l_alt"] - l).abs() < 1e-12);
        // Tangency |O L_a| = R - l_a.
        let o = t.circumcenter();
        let d = o.dist2(res.circle.center()).sqrt();
        assert!((d - (2.5 - l)).abs() < 1e-12);
    }

    #[test]
    fn lucas_equilateral_radius() {
        let s = 1.0;
        let t = Triangle::<f64>::from_xy(
            [(0.0, 0.0), (s, 0.0), (s / 2.0, s * 3f64.sqrt() / 2.0)],
            &ctx(),
        )
        .unwrap();
        let res = lucas_circle(&t, Vertex::B).unwrap();
        let expected = s / (2.0 + 3f64.sqrt());
        assert!((res.metadata["l"] - expected).abs() < 1e-12);
    }

    #[test]
    fn apollonius_reference_values() {
        let t = right_triangle();
        let res = apollonius_rank_k(&t, Vertex::A, &1.0).unwrap();
        let c = ctx();
        assert!(res.circle.center().approx_eq(&Point::xy(-2.25, 0.0), &c));
        assert!((res.circle.radius_squared() - 3.75f64.powi(2)).abs() < 1e-12);
        let res2 = apollonius_rank_k(&t, Vertex::A, &2.0).unwrap();
        assert!(res2
            .witness("foot_internal")
            .unwrap()
            .approx_eq(&Point::xy(18.0 / 17.0, 0.0), &c));
        assert!(res2
            .witness("foot_external")
            .unwrap()
            .approx_eq(&Point::xy(-2.25, 0.0), &c));
    }

    #[test]
    fn apollonius_isosceles_rejected() {
        let t = Triangle::<f64>::from_xy([(0.0, 0.0), (1.0, 0.0), (0.5, 3f64.sqrt() / 2.0)], &ctx())
            .unwrap();
        assert!(matches!(
            apollonius_rank_k(&t, Vertex::A, &1.0),
            Err(Error::IsoscelesUndefined)
        ));
    }

    #[test]
    fn apollonius_locus_property() {
        // Points on the circle satisfy MB/MC = (c/b)^k.
        let t = scalene();
        let k = 2.0;
        let res = apollonius_rank_k(&t, Vertex::A, &k).unwrap();
        let ratio = res.metadata["ratio"];
        let center = res.circle.center();
        let r = res.circle.radius_squared().sqrt();
        for i in 0..12 {
            let ang = i as f64 * 0.5;
            let m = Point::xy(center.x() + r * ang.cos(), center.y() + r * ang.sin());
            let mb = m.dist2(t.vb()).sqrt();
            let mc = m.dist2(t.vc()).sqrt();
            assert!((mb / mc - ratio).abs() < 1e-8, "angle {ang}");
        }
    }

    #[test]
    fn six_point_circle_of_incenter_is_incircle() {
        let t = scalene();
        let i = t.center(CenterId::Incenter).unwrap();
        let res = six_point_circle(&t, &i).unwrap();
        let incircle = t.incircle().unwrap();
        assert!(res.circle.center().approx_eq(incircle.center(), &ctx()));
        assert!((res.circle.radius_squared() - incircle.radius_squared()).abs() < 1e-12);
    }

    #[test]
    fn six_point_circle_of_orthocenter_is_euler_circle() {
        // Acute triangle so H is interior.
        let t = Triangle::<f64>::from_xy([(0.1, 2.0), (-1.5, 0.0), (1.9, -0.2)], &ctx()).unwrap();
        let h = t.orthocenter();
        let res = six_point_circle(&t, &h).unwrap();
        let o = t.circumcenter();
        assert!(res.circle.center().approx_eq(&o.midpoint(&h), &ctx()));
        assert!((res.circle.radius_squared() - t.circumradius_sq() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn six_point_witnesses_concyclic() {
        let t = scalene();
        let p = Point::xy(0.8, 0.5);
        assert!(t.contains_strict(&p));
        let res = six_point_circle(&t, &p).unwrap();
        let pts = res.witness_points();
        assert!(concyclicity_residual(&pts, &ctx()).unwrap() < 1e-12);
    }

    #[test]
    fn adjoint_circle_properties() {
        let t = right_triangle();
        let c = ctx();
        // Through B, tangent at A to side AC.
        let circle = adjoint_circle(&t, Vertex::B, Vertex::A).unwrap();
        assert!(circle.on_circle_defect(t.va()) < 1e-12);
        assert!(circle.on_circle_defect(t.vb()) < 1e-12);
        // Tangency: center - A is perpendicular to AC.
        let ac = Line::through(t.va(), t.vc(), &c).unwrap();
        let radial = t.va().vec_to(circle.center());
        assert!(ac.direction().dot(&radial).abs() < 1e-12);
        assert!(matches!(
            adjoint_circle(&t, Vertex::A, Vertex::A),
            Err(Error::IdenticalVertices)
        ));
    }

    #[test]
    fn adjoint_circles_meet_on_symmedian() {
        let t = scalene();
        let c = ctx();
        let c1 = adjoint_circle(&t, Vertex::B, Vertex::A).unwrap();
        let c2 = adjoint_circle(&t, Vertex::C, Vertex::A).unwrap();
        let pts = c1.intersect_circle(&c2, &c).unwrap();
        // One intersection is A; the other lies on the A-symmedian.
        let sym = t.symmedian_line(Vertex::A).unwrap();
        let other = pts
            .iter()
            .find(|p| !p.approx_eq(t.va(), &c))
            .expect("two intersections");
        assert!(sym.dist2(other).sqrt() < 1e-9);
    }
}
