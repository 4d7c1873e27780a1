//! Seeded scene generation and residual helpers for the theorem checks.
//!
//! Coordinates are sampled from a dyadic grid so the same draw embeds exactly
//! into both scalar backends. Every residual is dimensionless: lengths are
//! divided by the scene scale, squared lengths by its square.

use std::marker::PhantomData;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::centers::Triangle;
use crate::kernel::{Circle, Line, Point, Scalar, ToleranceContext, Vec2};
use crate::scene::SceneDocument;

const GRID: i64 = 1 << 20;
const MAX_REJECTS: u32 = 100_000;

/// Similarity applied to raw sampled coordinates; used by the scale-invariance
/// tests on the float backend.
#[derive(Clone, Copy, Debug)]
pub struct Similarity {
    pub scale: f64,
    pub angle: f64,
    pub tx: f64,
    pub ty: f64,
}

impl Similarity {
    pub fn identity() -> Self {
        Similarity { scale: 1.0, angle: 0.0, tx: 0.0, ty: 0.0 }
    }

    pub fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        let (s, c) = self.angle.sin_cos();
        (
            self.scale * (c * x - s * y) + self.tx,
            self.scale * (s * x + c * y) + self.ty,
        )
    }
}

/// Triangle shape filters used by the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriFilter {
    /// Min angle and side-ratio conditioning only.
    Any,
    /// Additionally pairwise side differences at least 5% of the longest side.
    Scalene,
    /// Scalene and all angles at most ~80 degrees.
    AcuteScalene,
}

/// Per-trial deterministic context handed to every check function.
pub struct CheckCtx<'a, S: Scalar> {
    rng: ChaCha8Rng,
    /// Pass threshold of the surrounding run; counterexample legs compare
    /// their deliberately-broken residuals against a multiple of it.
    pub thr: f64,
    pub sim: Similarity,
    pub tol: ToleranceContext,
    rec: Option<&'a mut SceneDocument>,
    _ph: PhantomData<S>,
}

impl<'a, S: Scalar> CheckCtx<'a, S> {
    pub fn new(seed: u64, trial: u64, thr: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        CheckCtx {
            rng,
            thr,
            sim: Similarity::identity(),
            tol: ToleranceContext::default(),
            rec: None,
            _ph: PhantomData,
        }
    }

    pub fn with_recorder(mut self, rec: &'a mut SceneDocument) -> Self {
        self.rec = Some(rec);
        self
    }

    pub fn with_similarity(mut self, sim: Similarity) -> Self {
        assert!(!S::EXACT, "similarity transforms are a float-backend device");
        self.sim = sim;
        self
    }

    /// Dyadic sample from the grid, uniform in `[lo, hi]`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let t = self.rng.gen_range(0..=GRID) as f64 / GRID as f64;
        lo + t * (hi - lo)
    }

    /// Dyadic angle in `[0, 2 pi)`.
    pub fn angle(&mut self) -> f64 {
        let t = self.rng.gen_range(0..GRID) as f64 / GRID as f64;
        t * std::f64::consts::TAU
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn scale(&self) -> f64 {
        self.tol.scale
    }

    fn raw_pair(&mut self) -> (f64, f64) {
        let x = self.uniform(-1.0, 1.0);
        let y = self.uniform(-1.0, 1.0);
        self.sim.apply(x, y)
    }

    fn set_scale(&mut self, pts: &[(f64, f64)]) {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (x, y) in pts {
            min.0 = min.0.min(*x);
            min.1 = min.1.min(*y);
            max.0 = max.0.max(*x);
            max.1 = max.1.max(*y);
        }
        let dx = max.0 - min.0;
        let dy = max.1 - min.1;
        let diameter = (dx * dx + dy * dy).sqrt().max(1e-6);
        self.tol = ToleranceContext::with_scale(diameter);
    }

    /// Random nondegenerate triangle per the sampling policy: vertices on the
    /// dyadic grid in [-1,1]^2 (similarity-transformed), min angle >= 10deg,
    /// max/min side ratio <= 6, plus the requested shape filter.
    pub fn triangle(&mut self, filter: TriFilter) -> Triangle<S> {
        for _ in 0..MAX_REJECTS {
            let pa = self.raw_pair();
            let pb = self.raw_pair();
            let pc = self.raw_pair();
            if !triangle_filter_ok(pa, pb, pc, filter) {
                continue;
            }
            self.set_scale(&[pa, pb, pc]);
            let t = Triangle::new(
                Point::xy(pa.0, pa.1),
                Point::xy(pb.0, pb.1),
                Point::xy(pc.0, pc.1),
                &self.tol,
            );
            if let Ok(t) = t {
                return t;
            }
        }
        panic!("triangle generator exhausted its rejection budget");
    }

    /// Triangle with rational side lengths: two right triangles with a shared
    /// leg glued along the altitude, then rotated by a Pythagorean rotation
    /// and translated on the grid. All vertex coordinates and all three side
    /// lengths are exactly representable on the rational backend.
    pub fn heronian_triangle(&mut self, require_scalene: bool) -> Triangle<S> {
        for _ in 0..MAX_REJECTS {
            let h = self.uniform(0.6, 1.6);
            let t = self.uniform(0.18 * h, 0.62 * h);
            let w = self.uniform(0.66 * h, 0.97 * h);
            // Raw f64 preview for the shape filters.
            let b1 = (h * h - t * t) / (2.0 * t);
            let c1 = (h * h - w * w) / (2.0 * w);
            let pa = (0.0, h);
            let pb = (-b1, 0.0);
            let pc = (c1, 0.0);
            let filter = if require_scalene {
                TriFilter::Scalene
            } else {
                TriFilter::Any
            };
            if !triangle_filter_ok(pa, pb, pc, filter) {
                continue;
            }
            // Pythagorean rotation (cos, sin) = ((p^2-q^2)/(p^2+q^2), 2pq/(p^2+q^2)).
            let p = self.rng.gen_range(1..6i64);
            let q = self.rng.gen_range(0..p);
            let tx = self.uniform(-1.0, 1.0);
            let ty = self.uniform(-1.0, 1.0);

            let hs = S::from_f64(h);
            let ts = S::from_f64(t);
            let ws = S::from_f64(w);
            let b1s = (hs.clone().sq() - ts.clone().sq()) / (S::two() * ts);
            let c1s = (hs.clone().sq() - ws.clone().sq()) / (S::two() * ws);
            let p2 = S::from_int(p).sq();
            let q2 = S::from_int(q).sq();
            let dens = p2.clone() + q2.clone();
            let cos_s = (p2 - q2) / dens.clone();
            let sin_s = S::two() * S::from_int(p) * S::from_int(q) / dens;
            let txs = S::from_f64(tx);
            let tys = S::from_f64(ty);
            let place = |x: S, y: S| -> Point<S> {
                Point::finite(
                    cos_s.clone() * x.clone() - sin_s.clone() * y.clone() + txs.clone(),
                    sin_s.clone() * x + cos_s.clone() * y + tys.clone(),
                )
            };
            let a_pt = place(S::zero(), hs);
            let b_pt = place(-b1s, S::zero());
            let c_pt = place(c1s, S::zero());
            let bbox: Vec<(f64, f64)> = [&a_pt, &b_pt, &c_pt]
                .iter()
                .map(|p| p.to_f64_pair())
                .collect();
            self.set_scale(&bbox);
            if let Ok(tri) = Triangle::new(a_pt, b_pt, c_pt, &self.tol) {
                if tri.side_lengths().is_ok() {
                    return tri;
                }
            }
        }
        panic!("heronian generator exhausted its rejection budget");
    }

    /// Right triangle with the right angle at vertex A and rational-exact
    /// coordinates (legs on the grid, Pythagorean rotation).
    pub fn right_triangle_at_a(&mut self) -> Triangle<S> {
        for _ in 0..MAX_REJECTS {
            let u = self.uniform(0.5, 1.8);
            let v = self.uniform(0.5, 1.8);
            if !(0.25..=4.0).contains(&(u / v)) {
                continue;
            }
            let p = self.rng.gen_range(1..6i64);
            let q = self.rng.gen_range(0..p);
            let tx = self.uniform(-1.0, 1.0);
            let ty = self.uniform(-1.0, 1.0);
            let p2 = S::from_int(p).sq();
            let q2 = S::from_int(q).sq();
            let dens = p2.clone() + q2.clone();
            let cos_s = (p2 - q2) / dens.clone();
            let sin_s = S::two() * S::from_int(p) * S::from_int(q) / dens;
            let txs = S::from_f64(tx);
            let tys = S::from_f64(ty);
            let place = |x: S, y: S| -> Point<S> {
                Point::finite(
                    cos_s.clone() * x.clone() - sin_s.clone() * y.clone() + txs.clone(),
                    sin_s.clone() * x + cos_s.clone() * y + tys.clone(),
                )
            };
            let a_pt = place(S::zero(), S::zero());
            let b_pt = place(S::from_f64(u), S::zero());
            let c_pt = place(S::zero(), S::from_f64(v));
            let bbox: Vec<(f64, f64)> = [&a_pt, &b_pt, &c_pt]
                .iter()
                .map(|p| p.to_f64_pair())
                .collect();
            self.set_scale(&bbox);
            if let Ok(tri) = Triangle::new(a_pt, b_pt, c_pt, &self.tol) {
                return tri;
            }
        }
        panic!("right-triangle generator exhausted its rejection budget");
    }

    /// A free point strictly inside the triangle, away from the boundary.
    pub fn interior_point(&mut self, t: &Triangle<S>) -> Point<S> {
        loop {
            let u = self.uniform(0.08, 0.84);
            let v = self.uniform(0.08, 0.84);
            if u + v > 0.92 {
                continue;
            }
            let w = 1.0 - u - v;
            let p = crate::kernel::affine_combination(&[
                (S::from_f64(u), t.va()),
                (S::from_f64(v), t.vb()),
                (S::from_f64(w), t.vc()),
            ])
            .expect("weights sum to 1");
            return p;
        }
    }

    /// A point of a circle at a dyadic angle (float-precision placement).
    pub fn point_on_circle(&mut self, c: &Circle<S>, avoid: &[Point<S>]) -> Point<S> {
        let r = c.radius_squared().to_f64().max(0.0).sqrt();
        let (cx, cy) = c.center().to_f64_pair();
        let min_sep = 0.05 * r.max(1e-9);
        'outer: for _ in 0..MAX_REJECTS {
            let ang = self.angle();
            let p = Point::xy(cx + r * ang.cos(), cy + r * ang.sin());
            for a in avoid {
                if a.is_finite() {
                    let d2 = p.to_f64_pair();
                    let a2 = a.to_f64_pair();
                    let dd = ((d2.0 - a2.0).powi(2) + (d2.1 - a2.1).powi(2)).sqrt();
                    if dd < min_sep {
                        continue 'outer;
                    }
                }
            }
            return p;
        }
        panic!("circle-point generator exhausted its rejection budget");
    }

    /// Four lines in general position: pairwise direction cross at least 0.2,
    /// all six intersections finite, bounded, and pairwise separated. Returns
    /// the lines and the six vertices in pair order (01, 02, 03, 12, 13, 23);
    /// the scene scale is set from the vertices.
    pub fn four_general_lines(&mut self) -> ([Line<S>; 4], [Point<S>; 6]) {
        'outer: for _ in 0..MAX_REJECTS {
            let mut lines: Vec<Line<S>> = Vec::new();
            let mut dirs: Vec<(f64, f64)> = Vec::new();
            for _ in 0..4 {
                let p = (self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0));
                let q = (self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0));
                let d = (q.0 - p.0, q.1 - p.1);
                let n = (d.0 * d.0 + d.1 * d.1).sqrt();
                if n < 0.5 {
                    continue 'outer;
                }
                dirs.push((d.0 / n, d.1 / n));
                match Line::through(&Point::xy(p.0, p.1), &Point::xy(q.0, q.1), &self.tol) {
                    Ok(l) => lines.push(l),
                    Err(_) => continue 'outer,
                }
            }
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let cross = (dirs[i].0 * dirs[j].1 - dirs[i].1 * dirs[j].0).abs();
                    if cross < 0.2 {
                        continue 'outer;
                    }
                }
            }
            let mut verts = Vec::new();
            let mut raw = Vec::new();
            for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
                match crate::kernel::meet_lines(&lines[i], &lines[j], &self.tol) {
                    Ok(m) if m.is_finite() => {
                        let f = m.to_f64_pair();
                        if f.0.abs() > 8.0 || f.1.abs() > 8.0 {
                            continue 'outer;
                        }
                        raw.push(f);
                        verts.push(m);
                    }
                    _ => continue 'outer,
                }
            }
            for i in 0..6 {
                for j in (i + 1)..6 {
                    let dx = raw[i].0 - raw[j].0;
                    let dy = raw[i].1 - raw[j].1;
                    if (dx * dx + dy * dy).sqrt() < 0.12 {
                        continue 'outer;
                    }
                }
            }
            self.set_scale(&raw);
            return (
                [
                    lines[0].clone(),
                    lines[1].clone(),
                    lines[2].clone(),
                    lines[3].clone(),
                ],
                [
                    verts[0].clone(),
                    verts[1].clone(),
                    verts[2].clone(),
                    verts[3].clone(),
                    verts[4].clone(),
                    verts[5].clone(),
                ],
            );
        }
        panic!("complete-quadrilateral generator exhausted its rejection budget");
    }

    /// Convex quadrilateral in counterclockwise order: sorted angles with a
    /// minimum gap around a unit circle, jittered radii, convexity verified.
    pub fn convex_quadrilateral(&mut self) -> [Point<S>; 4] {
        'outer: for _ in 0..MAX_REJECTS {
            let mut angs = [self.angle(), self.angle(), self.angle(), self.angle()];
            angs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for i in 0..4 {
                let next = if i == 3 {
                    angs[0] + std::f64::consts::TAU
                } else {
                    angs[i + 1]
                };
                if next - angs[i] < 0.5 {
                    continue 'outer;
                }
            }
            let mut raw = Vec::new();
            for a in angs {
                let r = self.uniform(0.75, 1.25);
                raw.push((r * a.cos(), r * a.sin()));
            }
            // Convexity: consecutive cross products all positive.
            for i in 0..4 {
                let p = raw[i];
                let q = raw[(i + 1) % 4];
                let r = raw[(i + 2) % 4];
                let cr = (q.0 - p.0) * (r.1 - q.1) - (q.1 - p.1) * (r.0 - q.0);
                if cr < 0.05 {
                    continue 'outer;
                }
            }
            self.set_scale(&raw);
            return [
                Point::xy(raw[0].0, raw[0].1),
                Point::xy(raw[1].0, raw[1].1),
                Point::xy(raw[2].0, raw[2].1),
                Point::xy(raw[3].0, raw[3].1),
            ];
        }
        panic!("convex-quadrilateral generator exhausted its rejection budget");
    }

    pub fn rec_point(&mut self, name: &str, p: &Point<S>) {
        if let Some(rec) = self.rec.as_deref_mut() {
            rec.add_point(name, p);
        }
    }

    pub fn rec_line(&mut self, name: &str, l: &Line<S>) {
        if let Some(rec) = self.rec.as_deref_mut() {
            rec.add_line(name, l);
        }
    }

    pub fn rec_circle(&mut self, name: &str, c: &Circle<S>) {
        if let Some(rec) = self.rec.as_deref_mut() {
            rec.add_circle(name, c);
        }
    }

    pub fn rec_triangle(&mut self, t: &Triangle<S>) {
        if let Some(rec) = self.rec.as_deref_mut() {
            rec.add_point("A", t.va());
            rec.add_point("B", t.vb());
            rec.add_point("C", t.vc());
        }
    }
}

fn triangle_filter_ok(pa: (f64, f64), pb: (f64, f64), pc: (f64, f64), filter: TriFilter) -> bool {
    let d = |p: (f64, f64), q: (f64, f64)| ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt();
    let a = d(pb, pc);
    let b = d(pc, pa);
    let c = d(pa, pb);
    let min_side = a.min(b).min(c);
    let max_side = a.max(b).max(c);
    if min_side < 1e-6 || max_side / min_side > 6.0 {
        return false;
    }
    // Angles via the law of cosines.
    let cos_a = (b * b + c * c - a * a) / (2.0 * b * c);
    let cos_b = (c * c + a * a - b * b) / (2.0 * c * a);
    let cos_c = (a * a + b * b - c * c) / (2.0 * a * b);
    let angles = [cos_a.clamp(-1.0, 1.0).acos(), cos_b.clamp(-1.0, 1.0).acos(), cos_c
        .clamp(-1.0, 1.0)
        .acos()];
    let min_angle = angles.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_angle < 10f64.to_radians() {
        return false;
    }
    match filter {
        TriFilter::Any => true,
        TriFilter::Scalene => {
            (a - b).abs() >= 0.05 * max_side
                && (b - c).abs() >= 0.05 * max_side
                && (c - a).abs() >= 0.05 * max_side
        }
        TriFilter::AcuteScalene => {
            let scalene = (a - b).abs() >= 0.05 * max_side
                && (b - c).abs() >= 0.05 * max_side
                && (c - a).abs() >= 0.05 * max_side;
            let max_angle = angles.iter().cloned().fold(0.0f64, f64::max);
            scalene && max_angle < 80f64.to_radians()
        }
    }
}

// ---- dimensionless residual helpers ----

pub fn rel_diff(x: f64, y: f64) -> f64 {
    let m = x.abs().max(y.abs());
    if m < 1e-300 {
        0.0
    } else {
        (x - y).abs() / m
    }
}

/// Relative spread of a slice of values that are claimed equal.
pub fn rel_spread(values: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 1..values.len() {
        worst = worst.max(rel_diff(values[0], values[i]));
    }
    worst
}

pub fn point_eq_residual<S: Scalar>(p: &Point<S>, q: &Point<S>, scale: f64) -> f64 {
    if p.is_infinite() || q.is_infinite() {
        return 1.0;
    }
    (p.dist2(q).to_f64().max(0.0)).sqrt() / scale
}

pub fn on_line_residual<S: Scalar>(p: &Point<S>, l: &Line<S>, scale: f64) -> f64 {
    if p.is_infinite() {
        return 1.0;
    }
    (l.dist2(p).to_f64().max(0.0)).sqrt() / scale
}

pub fn on_circle_residual<S: Scalar>(p: &Point<S>, c: &Circle<S>, scale: f64) -> f64 {
    if p.is_infinite() {
        return 1.0;
    }
    c.on_circle_defect(p).to_f64() / (scale * scale)
}

/// Collinearity of three points: distance of the third point from the line
/// of the two farthest apart, over the scene scale. Dividing by the longest
/// baseline keeps the residual conditioned when a transversal foot lands far
/// outside the figure.
pub fn collinear_residual<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>, scale: f64) -> f64 {
    if p.is_infinite() || q.is_infinite() || r.is_infinite() {
        return 1.0;
    }
    let d_pq = p.dist2(q).to_f64();
    let d_pr = p.dist2(r).to_f64();
    let d_qr = q.dist2(r).to_f64();
    let longest = d_pq.max(d_pr).max(d_qr);
    if longest < 1e-300 {
        return 0.0;
    }
    let area2 = p.vec_to(q).cross(&p.vec_to(r)).to_f64().abs();
    area2 / (longest.sqrt() * scale)
}

pub fn parallel_residual<S: Scalar>(d1: &Vec2<S>, d2: &Vec2<S>) -> f64 {
    let n = (d1.norm2().to_f64() * d2.norm2().to_f64()).sqrt();
    if n < 1e-300 {
        return 1.0;
    }
    d1.cross(d2).to_f64().abs() / n
}

pub fn perpendicular_residual<S: Scalar>(d1: &Vec2<S>, d2: &Vec2<S>) -> f64 {
    let n = (d1.norm2().to_f64() * d2.norm2().to_f64()).sqrt();
    if n < 1e-300 {
        return 1.0;
    }
    d1.dot(d2).to_f64().abs() / n
}

/// Concurrency of three lines: the distance of one pairwise meet from each
/// remaining line, over the scene scale. Point-to-line distances stay
/// conditioned where pairwise-meet scatter would amplify round-off.
pub fn concurrency_residual<S: Scalar>(
    l1: &Line<S>,
    l2: &Line<S>,
    l3: &Line<S>,
    tol: &ToleranceContext,
) -> f64 {
    match crate::kernel::meet_lines(l1, l2, tol) {
        Ok(p) if p.is_finite() => on_line_residual(&p, l3, tol.scale),
        _ => match crate::kernel::meet_lines(l1, l3, tol) {
            Ok(p) if p.is_finite() => on_line_residual(&p, l2, tol.scale),
            _ => 1.0,
        },
    }
}

/// Exact-capable equality residual: `(x - y)` as a scalar, made dimensionless
/// by dividing by `scale^pow` in f64 after the exact subtraction.
pub fn scalar_eq_residual<S: Scalar>(x: &S, y: &S, scale: f64, pow: i32) -> f64 {
    (x.clone() - y.clone()).abs().to_f64() / scale.powi(pow)
}
