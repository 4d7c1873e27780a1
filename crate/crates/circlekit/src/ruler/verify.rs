//! Numeric verification of ruler programs: sample admissible givens, execute,
//! and evaluate the output predicate, with the same report shape as the
//! theorem registry.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::{Circle, Line, Point, ToleranceContext, Vec2};
use crate::registry::{Backend, CheckReport};

use super::exec::{execute, Scene};
use super::{Error, Program, Result};

const MAX_REJECTED_ATTEMPTS: u32 = 100;

/// Verify a program: `trials` independent scenes of admissible givens, the
/// residual of the declared predicate on each. Degenerate steps reject the
/// attempt and resample, capped per trial.
pub fn verify(program: &Program, trials: u32, seed: u64) -> Result<CheckReport> {
    let (out_name, predicate) = program
        .outputs
        .first()
        .cloned()
        .ok_or_else(|| Error::UnknownPredicate("<none>".into()))?;
    // Predicate known? Fail fast.
    predicate_exists(&predicate)?;

    let run_trial = |trial: u32| -> Result<(f64, Scene)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        for _ in 0..MAX_REJECTED_ATTEMPTS {
            let givens = sample_givens(&predicate, &mut rng)?;
            let exec_seed = rng.gen::<u64>();
            match execute(program, &givens, exec_seed) {
                Ok(scene) => {
                    let r = eval_predicate(&predicate, &out_name, &scene)?;
                    return Ok((r, scene));
                }
                Err(Error::DegenerateStep(_)) | Err(Error::FreePointExhausted(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::DegenerateStep("trial rejection budget".into()))
    };

    let mut failures = 0u32;
    let mut max_residual = 0.0f64;
    let mut sum = 0.0f64;
    let mut worst_trial = 0u32;
    let threshold = 1e-7;
    for trial in 0..trials {
        let (r, _) = run_trial(trial)?;
        if !r.is_finite() || r > threshold {
            failures += 1;
        }
        if r > max_residual || trial == 0 {
            max_residual = r;
            worst_trial = trial;
        }
        sum += r;
    }
    let (_, worst) = run_trial(worst_trial)?;
    Ok(CheckReport {
        id: format!("ruler.{predicate}"),
        backend: Backend::Float,
        seed,
        trials,
        threshold,
        failures,
        max_residual,
        mean_residual: if trials > 0 { sum / trials as f64 } else { 0.0 },
        worst_scene: worst.to_document(),
    })
}

/// Execute a program against seeded sampled givens (the `ruler run` path).
/// Programs whose predicate has a dedicated sampler use it; anything else
/// falls back to a generic sampler: a random circle bound to the first
/// circle given, its center bound to `O`, and every other point given placed
/// on the circle.
pub fn run_sampled(program: &Program, seed: u64) -> Result<Scene> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let predicate = program.outputs.first().map(|(_, p)| p.clone());
    for _ in 0..MAX_REJECTED_ATTEMPTS {
        let givens = match predicate.as_deref() {
            Some(p) if predicate_exists(p).is_ok() => sample_givens(p, &mut rng)?,
            _ => sample_generic(program, &mut rng)?,
        };
        let exec_seed = rng.gen::<u64>();
        match execute(program, &givens, exec_seed) {
            Ok(scene) => return Ok(scene),
            Err(Error::DegenerateStep(_)) | Err(Error::FreePointExhausted(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateStep("run rejection budget".into()))
}

fn sample_generic(program: &Program, rng: &mut ChaCha8Rng) -> Result<Scene> {
    let mut scene = Scene::new();
    let cx = dyadic(rng, -0.4, 0.4);
    let cy = dyadic(rng, -0.4, 0.4);
    let r = dyadic(rng, 0.8, 1.6);
    let mut circle_bound = false;
    let mut used_angles: Vec<f64> = Vec::new();
    for (name, kind) in &program.givens {
        match kind {
            super::Kind::CircleWithCenter => {
                if circle_bound {
                    return Err(Error::NoCircle);
                }
                let c = Circle::new(Point::xy(cx, cy), r * r).map_err(Error::Kernel)?;
                scene.insert_circle(name, c);
                circle_bound = true;
            }
            super::Kind::Point if name == "O" => {
                scene.insert_point(name, Point::xy(cx, cy));
            }
            super::Kind::Point => {
                let theta = loop {
                    let t = angle(rng);
                    if used_angles.iter().all(|&u| circular_gap(t, u) > 0.25) {
                        break t;
                    }
                };
                used_angles.push(theta);
                scene.insert_point(name, Point::xy(cx + r * theta.cos(), cy + r * theta.sin()));
            }
        }
    }
    Ok(scene)
}

fn predicate_exists(id: &str) -> Result<()> {
    match id {
        "parallel_to_AB" | "parallel_to_d" | "equal_angles_at_M" | "equal_angles_from_M"
        | "isogonal_of_AAp" => Ok(()),
        other => Err(Error::UnknownPredicate(other.to_string())),
    }
}

fn dyadic(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let t = rng.gen_range(0..=(1 << 20)) as f64 / (1 << 20) as f64;
    lo + t * (hi - lo)
}

fn angle(rng: &mut ChaCha8Rng) -> f64 {
    dyadic(rng, 0.0, std::f64::consts::TAU)
}

fn circular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// Sample the given objects a predicate's program expects. Identifier
/// conventions follow the built-in programs.
fn sample_givens(predicate: &str, rng: &mut ChaCha8Rng) -> Result<Scene> {
    let mut scene = Scene::new();
    let cx = dyadic(rng, -0.4, 0.4);
    let cy = dyadic(rng, -0.4, 0.4);
    let r = dyadic(rng, 0.8, 1.6);
    let circle = Circle::new(Point::xy(cx, cy), r * r).map_err(Error::Kernel)?;
    let on = |theta: f64| Point::xy(cx + r * theta.cos(), cy + r * theta.sin());
    scene.insert_circle("k", circle.clone());
    scene.insert_point("O", Point::xy(cx, cy));

    match predicate {
        "parallel_to_AB" => {
            let ta = angle(rng);
            let tm = loop {
                let t = angle(rng);
                if circular_gap(t, ta) > 0.12
                    && circular_gap(t, ta + std::f64::consts::PI) > 0.12
                {
                    break t;
                }
            };
            scene.insert_point("A", on(ta));
            scene.insert_point("B", on(ta + std::f64::consts::PI));
            scene.insert_point("M", on(tm));
        }
        "parallel_to_d" => {
            let d1 = Point::<f64>::xy(dyadic(rng, -1.6, 1.6), dyadic(rng, -1.6, 1.6));
            let d2 = loop {
                let p = Point::xy(dyadic(rng, -1.6, 1.6), dyadic(rng, -1.6, 1.6));
                if p.dist2(&d1).sqrt() > 0.5 {
                    break p;
                }
            };
            let tol = ToleranceContext::default();
            let d_line = Line::through(&d1, &d2, &tol).map_err(Error::Kernel)?;
            let m = loop {
                let p = Point::xy(dyadic(rng, -1.6, 1.6), dyadic(rng, -1.6, 1.6));
                if d_line.dist2(&p).sqrt() > 0.15 {
                    break p;
                }
            };
            scene.insert_point("D1", d1);
            scene.insert_point("D2", d2);
            scene.insert_point("M", m);
        }
        "equal_angles_at_M" | "equal_angles_from_M" | "isogonal_of_AAp" => {
            let (ta, tb, tc) = loop {
                let ta = angle(rng);
                let tb = angle(rng);
                let tc = angle(rng);
                let ok = circular_gap(ta, tb) > 0.4
                    && circular_gap(tb, tc) > 0.4
                    && circular_gap(tc, ta) > 0.4;
                if ok {
                    break (ta, tb, tc);
                }
            };
            scene.insert_point("A", on(ta));
            scene.insert_point("B", on(tb));
            scene.insert_point("C", on(tc));
            match predicate {
                "equal_angles_at_M" => {
                    let tm = loop {
                        let t = angle(rng);
                        if [ta, tb, tc].iter().all(|&v| circular_gap(t, v) > 0.25) {
                            break t;
                        }
                    };
                    scene.insert_point("M", on(tm));
                }
                "equal_angles_from_M" => {
                    // Transversal point on segment BC plus a direction that
                    // cuts CA at a bounded point.
                    let b = scene.point("B")?.clone();
                    let c = scene.point("C")?.clone();
                    let a = scene.point("A")?.clone();
                    let tol = ToleranceContext::default();
                    let ca = Line::through(&c, &a, &tol).map_err(Error::Kernel)?;
                    let (a1, b1) = loop {
                        let t = dyadic(rng, 0.25, 0.75);
                        let a1 = b.lerp(&c, t);
                        let theta = angle(rng);
                        let dir = Vec2::new(theta.cos(), theta.sin());
                        let lt = Line::with_direction(&a1, &dir).map_err(Error::Kernel)?;
                        if let Ok(b1) = crate::kernel::meet_lines(&lt, &ca, &tol) {
                            if b1.is_finite() {
                                let (x, y) = b1.to_f64_pair();
                                if x.abs() < 8.0
                                    && y.abs() < 8.0
                                    && b1.dist2(&a1).sqrt() > 0.2
                                {
                                    break (a1, b1);
                                }
                            }
                        }
                    };
                    scene.insert_point("A1", a1);
                    scene.insert_point("B1", b1);
                }
                _ => {
                    // problem3: Ap anywhere on the circle away from the
                    // vertices and from the two arc midpoints of BC (where
                    // the parallel to BC is tangent).
                    let mid1 = 0.5 * (tb + tc);
                    let mid2 = mid1 + std::f64::consts::PI;
                    let tp = loop {
                        let t = angle(rng);
                        let clear = [ta, tb, tc].iter().all(|&v| circular_gap(t, v) > 0.2)
                            && circular_gap(t, mid1) > 0.15
                            && circular_gap(t, mid2) > 0.15;
                        if clear {
                            break t;
                        }
                    };
                    scene.insert_point("Ap", on(tp));
                }
            }
        }
        other => return Err(Error::UnknownPredicate(other.to_string())),
    }
    Ok(scene)
}

/// Directed angle between two directions modulo pi, in [0, pi).
fn angle_mod_pi(d1: &Vec2<f64>, d2: &Vec2<f64>) -> f64 {
    let cross = d1.x * d2.y - d1.y * d2.x;
    let dot = d1.x * d2.x + d1.y * d2.y;
    cross.atan2(dot).rem_euclid(std::f64::consts::PI)
}

/// Distance between two mod-pi angles, dimensionless in [0, pi/2].
fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::PI);
    d.min(std::f64::consts::PI - d)
}

fn scene_scale(scene: &Scene) -> f64 {
    // The circle sets the natural figure size.
    scene
        .the_circle()
        .map(|c| 2.0 * c.radius_squared().max(0.0).sqrt())
        .unwrap_or(1.0)
}

fn eval_predicate(predicate: &str, out_name: &str, scene: &Scene) -> Result<f64> {
    let tol = ToleranceContext::with_scale(scene_scale(scene));
    match predicate {
        "parallel_to_AB" => {
            let out = scene.line(out_name)?;
            let a = scene.point("A")?;
            let b = scene.point("B")?;
            Ok(crate::registry::gen::parallel_residual(
                &out.direction(),
                &a.vec_to(b),
            ))
        }
        "parallel_to_d" => {
            let out = scene.line(out_name)?;
            let d = scene.line("d")?;
            Ok(crate::registry::gen::parallel_residual(
                &out.direction(),
                &d.direction(),
            ))
        }
        "equal_angles_at_M" => {
            let m = scene.point("M")?;
            let feet = [scene.point("A1")?, scene.point("B1")?, scene.point("C1")?];
            let sides = [
                (scene.point("B")?, scene.point("C")?),
                (scene.point("C")?, scene.point("A")?),
                (scene.point("A")?, scene.point("B")?),
            ];
            let mut angles = Vec::new();
            for (foot, (p, q)) in feet.iter().zip(sides.iter()) {
                angles.push(angle_mod_pi(&p.vec_to(q), &m.vec_to(foot)));
            }
            let r_ang = angle_distance(angles[0], angles[1])
                .max(angle_distance(angles[0], angles[2]));
            let r_coll = crate::registry::gen::collinear_residual(feet[0], feet[1], feet[2], tol.scale);
            Ok(r_ang.max(r_coll))
        }
        "equal_angles_from_M" => {
            let m = scene.point(out_name)?;
            let a1 = scene.point("A1")?;
            let b1 = scene.point("B1")?;
            let a = scene.point("A")?;
            let b = scene.point("B")?;
            let c = scene.point("C")?;
            // Third transversal point on AB.
            let lt = scene.line("lT")?;
            let ab = Line::through(a, b, &tol).map_err(Error::Kernel)?;
            let c1 = crate::kernel::meet_lines(lt, &ab, &tol).map_err(Error::Kernel)?;
            if c1.is_infinite() {
                return Ok(1.0);
            }
            let circ = scene.the_circle()?;
            let r_on = circ.on_circle_defect(m) / (tol.scale * tol.scale);
            let pairs = [(b, c, a1), (c, a, b1), (a, b, &c1)];
            let mut angles = Vec::new();
            for (p, q, foot) in pairs {
                angles.push(angle_mod_pi(&p.vec_to(q), &m.vec_to(foot)));
            }
            let r_ang = angle_distance(angles[0], angles[1])
                .max(angle_distance(angles[0], angles[2]));
            Ok(r_on.max(r_ang))
        }
        "isogonal_of_AAp" => {
            let out = scene.line(out_name)?;
            let a = scene.point("A")?;
            let b = scene.point("B")?;
            let c = scene.point("C")?;
            let ap = scene.point("Ap")?;
            let theta1 = angle_mod_pi(&a.vec_to(b), &out.direction());
            let theta2 = angle_mod_pi(&a.vec_to(ap), &a.vec_to(c));
            Ok(angle_distance(theta1, theta2))
        }
        other => Err(Error::UnknownPredicate(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtins::{builtin, BuiltinId};
    use super::*;

    #[test]
    fn parallel_to_diameter_verifies() {
        let p = builtin(BuiltinId::ParallelToDiameter);
        let rep = verify(&p, 40, 7).unwrap();
        assert_eq!(rep.failures, 0, "max={}", rep.max_residual);
        assert!(rep.max_residual < 1e-10);
    }

    #[test]
    fn midpoint_parallel_output_is_independent_of_the_free_choice() {
        // 50 seeds, one fixed set of givens: identical output line.
        let p = builtin(BuiltinId::ParallelToDiameter);
        let mut givens = Scene::new();
        let c = Circle::new(Point::xy(0.1, -0.2), 1.21).unwrap();
        givens.insert_circle("k", c);
        givens.insert_point("O", Point::xy(0.1, -0.2));
        givens.insert_point("A", Point::xy(0.1 + 1.1, -0.2));
        givens.insert_point("B", Point::xy(0.1 - 1.1, -0.2));
        givens.insert_point("M", Point::xy(0.1, -0.2 + 1.1));
        let out_name = &p.outputs[0].0;
        let mut first: Option<(f64, f64, f64)> = None;
        for seed in 0..50 {
            let scene = execute(&p, &givens, seed).unwrap();
            let line = scene.line(out_name).unwrap();
            let (a, b, cc) = line.coeffs();
            match &first {
                None => first = Some((a, b, cc)),
                Some((fa, fb, fc)) => {
                    assert!((a - fa).abs() < 1e-10);
                    assert!((b - fb).abs() < 1e-10);
                    assert!((cc - fc).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn broken_program_fails_every_trial() {
        // Swap the final join to use P instead of N: the output is no longer
        // parallel to AB.
        let text = super::super::builtins::builtin_text(BuiltinId::ParallelToDiameter);
        let broken = text.replace("par_9 = join(M, N_8)", "par_9 = join(M, P_5)");
        assert_ne!(text, broken, "builtin naming changed; update the mutation");
        let p = super::super::parse(&broken).unwrap();
        let rep = verify(&p, 30, 7).unwrap();
        assert_eq!(rep.failures, 30);
    }
}
