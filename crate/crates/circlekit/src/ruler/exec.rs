//! Interpreter for straightedge programs.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::{meet_lines, Circle, Line, Point, ToleranceContext};
use crate::scene::SceneDocument;

use super::{Call, Error, Kind, Program, Result};

/// How an object entered the scene.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Given,
    Constructed { step: usize },
    FreeChoice { step: usize },
}

#[derive(Clone, Debug)]
pub enum Object {
    Point(Point<f64>),
    /// A drawn line remembers its two defining points so free-point hints can
    /// anchor to them.
    Line {
        line: Line<f64>,
        anchors: Option<(String, String)>,
    },
    Circle(Circle<f64>),
}

/// Named objects with provenance; the environment programs execute against.
#[derive(Clone, Debug, Default)]
pub struct Scene {
    entries: BTreeMap<String, (Object, Provenance)>,
}

impl Scene {
    pub fn new() -> Self {
        Scene::default()
    }

    pub fn insert_point(&mut self, name: &str, p: Point<f64>) {
        self.entries
            .insert(name.to_string(), (Object::Point(p), Provenance::Given));
    }

    pub fn insert_circle(&mut self, name: &str, c: Circle<f64>) {
        self.entries
            .insert(name.to_string(), (Object::Circle(c), Provenance::Given));
    }

    fn insert(&mut self, name: &str, obj: Object, prov: Provenance) {
        self.entries.insert(name.to_string(), (obj, prov));
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.entries.get(name).map(|(o, _)| o)
    }

    pub fn provenance(&self, name: &str) -> Option<Provenance> {
        self.entries.get(name).map(|(_, p)| *p)
    }

    pub fn point(&self, name: &str) -> Result<&Point<f64>> {
        match self.get(name) {
            Some(Object::Point(p)) => Ok(p),
            Some(_) => Err(Error::WrongKind(name.to_string())),
            None => Err(Error::MissingGiven(name.to_string())),
        }
    }

    pub fn line(&self, name: &str) -> Result<&Line<f64>> {
        match self.get(name) {
            Some(Object::Line { line, .. }) => Ok(line),
            Some(_) => Err(Error::WrongKind(name.to_string())),
            None => Err(Error::MissingGiven(name.to_string())),
        }
    }

    pub fn circle(&self, name: &str) -> Result<&Circle<f64>> {
        match self.get(name) {
            Some(Object::Circle(c)) => Ok(c),
            Some(_) => Err(Error::WrongKind(name.to_string())),
            None => Err(Error::MissingGiven(name.to_string())),
        }
    }

    /// The single given circle of the scene.
    pub fn the_circle(&self) -> Result<&Circle<f64>> {
        let mut found = None;
        for (obj, _) in self.entries.values() {
            if let Object::Circle(c) = obj {
                if found.is_some() {
                    return Err(Error::NoCircle);
                }
                found = Some(c);
            }
        }
        found.ok_or(Error::NoCircle)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    fn finite_points(&self) -> Vec<Point<f64>> {
        self.entries
            .values()
            .filter_map(|(o, _)| match o {
                Object::Point(p) if p.is_finite() => Some(p.clone()),
                _ => None,
            })
            .collect()
    }

    fn scale(&self) -> f64 {
        let pts = self.finite_points();
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &pts {
            let (x, y) = p.to_f64_pair();
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if pts.len() < 2 {
            return 1.0;
        }
        ((hi.0 - lo.0).powi(2) + (hi.1 - lo.1).powi(2)).sqrt().max(1e-6)
    }

    pub fn to_document(&self) -> SceneDocument {
        let mut doc = SceneDocument::new();
        for (name, (obj, _)) in &self.entries {
            match obj {
                Object::Point(p) => doc.add_point(name, p),
                Object::Line { line, .. } => doc.add_line(name, line),
                Object::Circle(c) => doc.add_circle(name, c),
            }
        }
        doc
    }
}

/// Execute a program against its givens. Free choices are drawn from the
/// seeded stream, so the output scene is a deterministic function of
/// `(givens, seed)`.
pub fn execute(program: &Program, givens: &Scene, seed: u64) -> Result<Scene> {
    let mut scene = givens.clone();
    for (name, kind) in &program.givens {
        match (kind, scene.get(name)) {
            (Kind::Point, Some(Object::Point(_))) => {}
            (Kind::CircleWithCenter, Some(Object::Circle(_))) => {}
            (_, Some(_)) => return Err(Error::WrongKind(name.clone())),
            (_, None) => return Err(Error::MissingGiven(name.clone())),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = ToleranceContext::with_scale(scene.scale());

    for (idx, step) in program.steps.iter().enumerate() {
        let obj = eval_step(&scene, &step.call, &mut rng, &tol, &step.name)?;
        let prov = if step.call.is_free_choice() {
            Provenance::FreeChoice { step: idx }
        } else {
            Provenance::Constructed { step: idx }
        };
        scene.insert(&step.name, obj, prov);
    }
    Ok(scene)
}

const FREE_POINT_ATTEMPTS: u32 = 64;
const CLEARANCE: f64 = 0.05;

fn eval_step(
    scene: &Scene,
    call: &Call,
    rng: &mut ChaCha8Rng,
    tol: &ToleranceContext,
    step_name: &str,
) -> Result<Object> {
    match call {
        Call::Join(a, b) => {
            let p = scene.point(a)?;
            let q = scene.point(b)?;
            let line = Line::through(p, q, tol)
                .map_err(|_| Error::DegenerateStep(step_name.to_string()))?;
            Ok(Object::Line { line, anchors: Some((a.clone(), b.clone())) })
        }
        Call::Meet(a, b) => {
            let l1 = scene.line(a)?;
            let l2 = scene.line(b)?;
            let p = meet_lines(l1, l2, tol)
                .map_err(|_| Error::DegenerateStep(step_name.to_string()))?;
            if p.is_infinite() {
                return Err(Error::DegenerateStep(step_name.to_string()));
            }
            Ok(Object::Point(p))
        }
        Call::OnLine(lname, hint) => {
            let (line, anchors) = match scene.get(lname) {
                Some(Object::Line { line, anchors }) => (line.clone(), anchors.clone()),
                Some(_) => return Err(Error::WrongKind(lname.clone())),
                None => return Err(Error::MissingGiven(lname.clone())),
            };
            let (a_name, b_name) =
                anchors.ok_or_else(|| Error::DegenerateStep(step_name.to_string()))?;
            let a = scene.point(&a_name)?.clone();
            let b = scene.point(&b_name)?.clone();
            let existing = scene.finite_points();
            let clearance = CLEARANCE * tol.scale;
            for _ in 0..FREE_POINT_ATTEMPTS {
                let t: f64 = rng.gen_range(0..=(1 << 20)) as f64 / (1 << 20) as f64;
                let p = match hint.as_str() {
                    // Beyond the second defining point: B strictly between is
                    // excluded; mirrored for the first.
                    "beyond_first" => a.lerp(&b, -(0.25 + 1.75 * t)),
                    "between" => a.lerp(&b, 0.2 + 0.6 * t),
                    // Default: beyond the second defining point.
                    _ => a.lerp(&b, 1.25 + 1.75 * t),
                };
                if existing
                    .iter()
                    .all(|q| p.dist2(q).sqrt() >= clearance)
                {
                    debug_assert!(line.contains(&p, tol));
                    return Ok(Object::Point(p));
                }
            }
            Err(Error::FreePointExhausted(step_name.to_string()))
        }
        Call::OnCircle(_hint) => {
            let circle = scene.the_circle()?.clone();
            let r = circle.radius_squared().max(0.0).sqrt();
            let (cx, cy) = circle.center().to_f64_pair();
            let existing = scene.finite_points();
            let clearance = CLEARANCE * tol.scale;
            for _ in 0..FREE_POINT_ATTEMPTS {
                let t: f64 = rng.gen_range(0..(1 << 20)) as f64 / (1 << 20) as f64;
                let ang = t * std::f64::consts::TAU;
                let p = Point::xy(cx + r * ang.cos(), cy + r * ang.sin());
                if existing.iter().all(|q| p.dist2(q).sqrt() >= clearance) {
                    return Ok(Object::Point(p));
                }
            }
            Err(Error::FreePointExhausted(step_name.to_string()))
        }
        Call::SecondMeet(lname, known) => {
            let line = scene.line(lname)?.clone();
            let p = scene.point(known)?.clone();
            let circle = scene.the_circle()?;
            // The known point must lie on both the line and the circle.
            if !line.contains(&p, tol) || !circle.contains(&p, tol) {
                return Err(Error::DegenerateStep(step_name.to_string()));
            }
            Ok(Object::Point(circle.second_intersection(&line, &p)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ruler::parse;

    fn unit_circle_scene() -> Scene {
        let mut s = Scene::new();
        let c = Circle::new(Point::xy(0.0, 0.0), 1.0).unwrap();
        s.insert_circle("k", c);
        s.insert_point("O", Point::xy(0.0, 0.0));
        s.insert_point("A", Point::xy(-1.0, 0.0));
        s.insert_point("B", Point::xy(1.0, 0.0));
        s.insert_point("M", Point::xy(0.0, 1.0));
        s
    }

    #[test]
    fn execute_is_deterministic() {
        let text = "given k : circle_with_center\ngiven O : point\ngiven A : point\ngiven B : point\ngiven M : point\nl = join(B, M)\nD = on_line(l, \"beyond_second\")\n";
        let p = parse(text).unwrap();
        let givens = unit_circle_scene();
        let s1 = execute(&p, &givens, 7).unwrap();
        let s2 = execute(&p, &givens, 7).unwrap();
        let d1 = s1.point("D").unwrap();
        let d2 = s2.point("D").unwrap();
        assert_eq!(d1.to_f64_pair(), d2.to_f64_pair());
    }

    #[test]
    fn second_meet_requires_known_point_on_line_and_circle() {
        let text = "given k : circle_with_center\ngiven O : point\ngiven A : point\ngiven B : point\ngiven M : point\nl = join(O, M)\nX = second_meet(l, B)\n";
        let p = parse(text).unwrap();
        let givens = unit_circle_scene();
        assert!(matches!(
            execute(&p, &givens, 1),
            Err(Error::DegenerateStep(_))
        ));
    }

    #[test]
    fn degenerate_when_free_point_line_is_the_diameter() {
        // With M = A the chain join(B, M), join(D, O), join(A, M) collapses:
        // O lies on the drawn line, so the meets degenerate.
        let p = crate::ruler::builtin(crate::ruler::BuiltinId::ParallelToDiameter);
        let mut givens = unit_circle_scene();
        givens.insert_point("M", Point::xy(-1.0, 0.0)); // = A
        assert!(matches!(
            execute(&p, &givens, 3),
            Err(Error::DegenerateStep(_)) | Err(Error::FreePointExhausted(_))
        ));
    }

    #[test]
    fn missing_given_is_reported() {
        let p = parse("given A : point\ngiven B : point\nl = join(A, B)\n").unwrap();
        let empty = Scene::new();
        assert!(matches!(execute(&p, &empty, 1), Err(Error::MissingGiven(_))));
    }
}
