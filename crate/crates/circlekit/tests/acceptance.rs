//! Acceptance suite: one test per criterion, each printing a PASS line on
//! success (visible with `--nocapture`) and failing its assertions otherwise.
//!
//! Reference triangle throughout: A = (0, 3), B = (0, 0), C = (4, 0), hence
//! a = 4, b = 5, c = 3, R = 2.5, S = 6, p = 6, r = 1.

use circlekit::centers::{CenterId, Triangle, Vertex};
use circlekit::circles::{
    droz_farny, lemoine_circle, lucas_circle, neuberg_circle, radical_circle_excircles,
    DrozFarnyOrder, LemoineOrder,
};
use circlekit::kernel::{
    circles_orthogonal, power_of_point, Circle, Point, Rat, Scalar, ToleranceContext,
};
use circlekit::registry::{
    self, equal_incircle_bisection, equal_incircle_cevian, fixed_point,
    fixed_point_scene_residual, list_checks, run_check, run_mutated_check,
    trapezoid_residual_at_arc_midpoint, Backend, CheckCtx, TriFilter,
};
use circlekit::ruler::{builtin, execute, straightedge_audit, verify, BuiltinId, Scene};

fn ctx() -> ToleranceContext {
    ToleranceContext::default()
}

fn reference_triangle<S: Scalar>() -> Triangle<S> {
    Triangle::new(
        Point::finite(S::zero(), S::from_int(3)),
        Point::finite(S::zero(), S::zero()),
        Point::finite(S::from_int(4), S::zero()),
        &ctx(),
    )
    .unwrap()
}

#[test]
fn criterion_01_lemoine_radii_on_the_reference_triangle() {
    let started = std::time::Instant::now();
    let t = reference_triangle::<f64>();
    let second = lemoine_circle(&t, LemoineOrder::Second).unwrap();
    let r_l2 = second.circle.radius_squared().sqrt();
    assert!((r_l2 - 1.2).abs() <= 1e-12, "R_L2 = {r_l2}");

    let tan_omega = second.metadata["tan_omega"];
    assert!((tan_omega - 0.48).abs() <= 1e-12);

    let r = t.circumradius_sq().sqrt();
    assert!((r * tan_omega - r_l2).abs() <= 1e-12, "R tan w = R_L2");

    let first = lemoine_circle(&t, LemoineOrder::First).unwrap();
    let r_l1 = first.circle.radius_squared().sqrt();
    assert!((r_l1 - 0.5 * 7.69f64.sqrt()).abs() <= 1e-12);
    let formula = first.metadata["R_L1_sq_formula"].sqrt();
    assert!((formula - r_l1).abs() <= 1e-12, "closed form matches");

    assert!(started.elapsed().as_secs_f64() < 1.0);
    println!("criterion 1 PASS: R_L2 = 1.2, tan w = 0.48, R_L1 = sqrt(7.69)/2 both routes");
}

#[test]
fn criterion_02_droz_farny_radii_coincide_with_circumradius() {
    let t = reference_triangle::<f64>();
    for order in [DrozFarnyOrder::First, DrozFarnyOrder::Second] {
        let res = droz_farny(&t, order).unwrap();
        let radius = res.circle.radius_squared().sqrt();
        assert!((radius - 2.5).abs() <= 1e-12, "{order:?} radius {radius}");
    }
    println!("criterion 2 PASS: both Droz-Farny radii equal R = 2.5");
}

#[test]
fn criterion_03_excircle_radical_circle() {
    let t = reference_triangle::<f64>();
    let res = radical_circle_excircles(&t).unwrap();
    let (cx, cy) = res.circle.center().to_f64_pair();
    assert!((cx - 1.5).abs() <= 1e-12 && (cy - 1.0).abs() <= 1e-12);
    let radius = res.circle.radius_squared().sqrt();
    assert!((radius - 0.5 * 37f64.sqrt()).abs() <= 1e-12);

    // Exact equality of the three powers on the rational backend.
    let tr = reference_triangle::<Rat>();
    let res = radical_circle_excircles(&tr).unwrap();
    let pa = &res.metadata["power_I_a"];
    let pb = &res.metadata["power_I_b"];
    let pc = &res.metadata["power_I_c"];
    assert!(pa == pb && pb == pc, "exact power equality");
    assert_eq!(pa.clone(), Rat::new(37, 4));
    println!("criterion 3 PASS: center (1.5, 1), radius sqrt(37)/2, powers exactly equal");
}

#[test]
fn criterion_04_neuberg_and_lucas_reference_values() {
    let t = reference_triangle::<f64>();
    let neu = neuberg_circle(&t, Vertex::A).unwrap();
    let (cx, cy) = neu.circle.center().to_f64_pair();
    assert!((cx - 2.0).abs() <= 1e-12 && (cy - 25.0 / 6.0).abs() <= 1e-12);
    let radius = neu.circle.radius_squared().sqrt();
    assert!((radius - 193f64.sqrt() / 6.0).abs() <= 1e-12);
    assert!((neu.metadata["ON"] - 8.0 / 3.0).abs() <= 1e-12);

    let luc = lucas_circle(&t, Vertex::A).unwrap();
    assert!((luc.metadata["l"] - 15.0 / 14.0).abs() <= 1e-12);
    assert!((luc.metadata["l_alt"] - 15.0 / 14.0).abs() <= 1e-12);
    println!("criterion 4 PASS: Neuberg center (2, 25/6), radius sqrt(193)/6, ON = 8/3; Lucas 15/14");
}

#[test]
fn criterion_05_full_catalog_at_seed_42() {
    let started = std::time::Instant::now();
    let checks = list_checks();
    assert_eq!(checks.len(), 48, "the catalog is complete");
    for c in &checks {
        let rep = run_check(c.id, 42, 300, Backend::Float, 1e-7).unwrap();
        assert_eq!(
            rep.failures, 0,
            "{}: {} failures, max residual {:.3e}",
            c.id, rep.failures, rep.max_residual
        );
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed <= 120.0, "catalog took {elapsed:.1} s");
    println!("criterion 5 PASS: 48 checks x 300 trials, zero failures, {elapsed:.1} s");
}

#[test]
fn criterion_06_mutation_controls_are_discriminative() {
    for id in ["L3.P1", "DF1.T3", "LU.T3", "AU.T3", "HQ.ALL"] {
        let rep = run_mutated_check(id, 42, 300, 1e-7).unwrap();
        assert!(
            rep.failures >= 295,
            "{id} mutated fails only {}/300",
            rep.failures
        );
    }
    println!("criterion 6 PASS: all five designated mutations fail >= 295/300 trials");
}

#[test]
fn criterion_07_rational_exact_subset() {
    // Sylvester relation, orthogonality instances, the DF2 radius identity
    // and the power of K: random rational-coordinate triangles.
    for trial in 0..100u64 {
        let mut cx = CheckCtx::<Rat>::new(1001, trial, 1e-7);
        let t = cx.triangle(TriFilter::Scalene);
        let o = t.circumcenter();
        let h = t.orthocenter();

        // Sylvester: H - O = (A - O) + (B - O) + (C - O).
        let lhs = o.vec_to(&h);
        let rhs = o
            .vec_to(t.va())
            .add(&o.vec_to(t.vb()))
            .add(&o.vec_to(t.vc()));
        assert_eq!(lhs, rhs, "Sylvester, trial {trial}");

        // Orthogonal pair built from the triangle's own points.
        let d2 = t.va().dist2(t.vb());
        let r1 = d2.clone() / Rat::new(3, 1);
        let r2 = d2 - r1.clone();
        let c1 = Circle::new(t.va().clone(), r1).unwrap();
        let c2 = Circle::new(t.vb().clone(), r2).unwrap();
        assert!(circles_orthogonal(&c1, &c2).is_zero_exact());

        // DF2 radius identity: 5R^2 - sum/2 = (R^2 + OH^2)/2.
        let lhs = Rat::from_int(5) * t.circumradius_sq() - t.sum_side_sq().half();
        let rhs = (t.circumradius_sq() + o.dist2(&h)).half();
        assert_eq!(lhs, rhs, "DF2 identity, trial {trial}");

        // Power of K towards the first Lemoine circle is exactly -R_L2^2.
        let first = lemoine_circle(&t, LemoineOrder::First).unwrap();
        let k = t.center(CenterId::SymmedianPoint).unwrap();
        let pow = power_of_point(&k, &first.circle);
        let rl2 = first.metadata["R_L2_sq"].clone();
        assert!((pow + rl2).is_zero_exact(), "power of K, trial {trial}");
    }

    // Ceva and Menelaus products for integer ranks on triangles with
    // rational side lengths.
    for trial in 0..100u64 {
        let mut cx = CheckCtx::<Rat>::new(1002, trial, 1e-7);
        let t = cx.heronian_triangle(true);
        for k in [-1i64, 0, 1, 2, 3] {
            let ks = Rat::from_int(k);
            let prod = t.rank_ratio(Vertex::A, &ks).unwrap()
                * t.rank_ratio(Vertex::B, &ks).unwrap()
                * t.rank_ratio(Vertex::C, &ks).unwrap();
            assert_eq!(prod, Rat::from_int(1), "Ceva product, k = {k}");
            if k == 0 {
                // The external feet of rank 0 are all at infinity.
                continue;
            }
            // Menelaus: the external feet are exactly collinear.
            let mut ext = Vec::new();
            for v in Vertex::ALL {
                let foot = t.cevian_foot_rank_k(v, &ks).unwrap();
                let (p, q) = v.others();
                let conj =
                    circlekit::centers::harmonic_conjugate(&foot, t.vertex(p), t.vertex(q), &ctx())
                        .unwrap();
                ext.push(conj);
            }
            if ext.iter().any(|p| p.is_infinite()) {
                continue;
            }
            let cross = ext[0].vec_to(&ext[1]).cross(&ext[0].vec_to(&ext[2]));
            assert!(cross.is_zero_exact(), "Menelaus collinearity, k = {k}");
        }
    }
    println!("criterion 7 PASS: rational-exact subset is exactly zero on 100 triangles");
}

#[test]
fn criterion_08_ruler_suite() {
    for id in BuiltinId::ALL {
        let p = builtin(id);
        straightedge_audit(&p).unwrap();
        let rep = verify(&p, 300, 7).unwrap();
        assert_eq!(
            rep.failures,
            0,
            "{} fails {} trials, max {:.3e}",
            id.as_str(),
            rep.failures,
            rep.max_residual
        );
    }

    // The midpoint-parallel construction is independent of its free
    // choice: 50 seeds, same output line.
    let p = builtin(BuiltinId::ParallelToDiameter);
    let mut givens = Scene::new();
    let c = Circle::new(Point::xy(0.3, -0.1), 1.69).unwrap();
    givens.insert_circle("k", c);
    givens.insert_point("O", Point::xy(0.3, -0.1));
    givens.insert_point("A", Point::xy(0.3 + 1.3, -0.1));
    givens.insert_point("B", Point::xy(0.3 - 1.3, -0.1));
    givens.insert_point("M", Point::xy(0.3, -0.1 + 1.3));
    let out_name = &p.outputs[0].0;
    let mut reference: Option<(f64, f64, f64)> = None;
    for seed in 0..50 {
        let scene = execute(&p, &givens, seed).unwrap();
        let (a, b, cc) = scene.line(out_name).unwrap().coeffs();
        match &reference {
            None => reference = Some((a, b, cc)),
            Some((ra, rb, rc)) => {
                assert!(
                    (a - ra).abs() <= 1e-10 && (b - rb).abs() <= 1e-10 && (cc - rc).abs() <= 1e-10,
                    "seed {seed} drifts"
                );
            }
        }
    }
    println!("criterion 8 PASS: five builtins verify, free-choice independence holds, audit clean");
}

#[test]
fn criterion_09_equal_incircle_cevian() {
    let mut agreed = 0;
    for trial in 0..300u64 {
        let mut cx = CheckCtx::<f64>::new(2024, trial, 1e-7);
        let t = cx.triangle(TriFilter::Scalene);
        let (d, _r) = equal_incircle_cevian(&t).unwrap();
        let (d_oracle, _) = equal_incircle_bisection(&t);
        let gap = d.dist2(&d_oracle).sqrt() / t.ctx().scale;
        assert!(gap <= 1e-9, "trial {trial}: construction vs oracle {gap:.3e}");
        agreed += 1;
    }
    assert_eq!(agreed, 300);

    // Isosceles AB = AC returns the midpoint exactly.
    let iso = Triangle::from_xy([(1.0, 2.0), (0.0, 0.0), (2.0, 0.0)], &ctx()).unwrap();
    let (d, r) = equal_incircle_cevian(&iso).unwrap();
    assert_eq!(d.to_f64_pair(), (1.0, 0.0));
    assert!(r > 0.0);
    println!("criterion 9 PASS: construction matches the bisection oracle on 300 triangles");
}

#[test]
fn criterion_10_fixed_point_of_the_pq_mediator() {
    let a = Point::<f64>::xy(-1.0, 0.0);
    let b = Point::<f64>::xy(1.0, 0.0);
    let tol = ToleranceContext::with_scale(2.0);

    // Closed-form spot checks first.
    let d60 = fixed_point(&a, &b, 60f64.to_radians()).unwrap();
    let cot15 = 1.0 / (15f64.to_radians()).tan();
    assert!((d60.x()).abs() < 1e-12 && (d60.y() + cot15).abs() < 1e-10);
    let d120 = fixed_point(&a, &b, 120f64.to_radians()).unwrap();
    assert!(d120.y() > 0.0, "obtuse case sits on the arc side");
    let apex = 2.0 * (1.0f64 / d120.y()).atan();
    assert!((apex - 30f64.to_radians()).abs() < 1e-10);

    for gamma_deg in [30.0, 60.0, 120.0, 150.0] {
        let gamma = f64::to_radians(gamma_deg);
        for i in 0..100 {
            let param = (i as f64 + 0.5) / 100.0;
            let r = fixed_point_scene_residual(&a, &b, gamma, param, &tol).unwrap();
            assert!(r <= 1e-8, "gamma {gamma_deg}, C #{i}: residual {r:.3e}");
        }
        // ABPQ is an isosceles trapezoid at the symmetric position of C.
        let r = trapezoid_residual_at_arc_midpoint(&a, &b, gamma, &tol).unwrap();
        assert!(r <= 1e-8, "gamma {gamma_deg}: trapezoid residual {r:.3e}");
    }

    // gamma = 90 degrees: no fixed point, and ABPQ is a parallelogram.
    assert!(matches!(
        fixed_point(&a, &b, std::f64::consts::FRAC_PI_2),
        Err(registry::Error::RightAngleCase)
    ));
    for i in 0..100 {
        let param = (i as f64 + 0.5) / 100.0;
        let r =
            fixed_point_scene_residual(&a, &b, std::f64::consts::FRAC_PI_2, param, &tol).unwrap();
        assert!(r <= 1e-8, "parallelogram residual {r:.3e}");
    }
    println!("criterion 10 PASS: mediator through D for four angles; right angle degenerates");
}
