//! The theorem-verification harness: a catalog of named checks pairing a
//! seeded scene generator with a dimensionless residual, plus the two
//! constructive solvers of the source material (the equal-incircle cevian
//! and the fixed point of the PQ mediator).
//!
//! Reports are deterministic: each trial derives its own generator stream
//! from (seed, trial index), so aggregation is schedule-independent.

mod checks_apollonius;
mod checks_droz;
mod checks_lemoine;
mod checks_lines;
mod checks_neuberg_lucas;
mod checks_quad;
mod checks_radical;
pub mod gen;
mod solvers;

pub use gen::{CheckCtx, Similarity, TriFilter};
pub use solvers::{
    equal_incircle_bisection, equal_incircle_cevian, fixed_point, fixed_point_scene_residual,
    incircle_split_gap, point_on_arc, trapezoid_residual_at_arc_midpoint,
};

use serde::{Deserialize, Serialize};

use crate::kernel::Rat;
use crate::scene::SceneDocument;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown check id")]
    UnknownCheck,
    #[error("the check does not support this backend")]
    BackendUnsupported,
    #[error("gamma = pi/2: the configuration is a parallelogram, no fixed point")]
    RightAngleCase,
    #[error("angle out of range")]
    InvalidAngle,
    #[error("a construction step degenerated")]
    DegenerateConstruction,
    #[error("the construction disagrees with its oracle")]
    ConstructionMismatch,
    #[error(transparent)]
    Kernel(#[from] crate::kernel::Error),
    #[error(transparent)]
    Centers(#[from] crate::centers::Error),
    #[error(transparent)]
    Circles(#[from] crate::circles::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Float,
    Rational,
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "f64" | "float" => Ok(Backend::Float),
            "rational" | "rat" => Ok(Backend::Rational),
            other => Err(format!("unknown backend '{other}'")),
        }
    }
}

/// Public descriptor of one catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub id: &'static str,
    pub statement: &'static str,
    /// Backends the residual supports; float is always present.
    pub rational: bool,
}

/// Aggregated result of a seeded run.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckReport {
    pub id: String,
    pub backend: Backend,
    pub seed: u64,
    pub trials: u32,
    pub threshold: f64,
    pub failures: u32,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub worst_scene: SceneDocument,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type FloatFn = fn(&mut CheckCtx<f64>) -> Result<f64>;
type RatFn = fn(&mut CheckCtx<Rat>) -> Result<f64>;

struct Entry {
    id: &'static str,
    statement: &'static str,
    float_fn: FloatFn,
    rat_fn: Option<RatFn>,
}

macro_rules! entry {
    ($id:expr, $stmt:expr, $m:ident :: $f:ident) => {
        Entry {
            id: $id,
            statement: $stmt,
            float_fn: $m::$f::<f64>,
            rat_fn: None,
        }
    };
    ($id:expr, $stmt:expr, $m:ident :: $f:ident, rational) => {
        Entry {
            id: $id,
            statement: $stmt,
            float_fn: $m::$f::<f64>,
            rat_fn: Some($m::$f::<Rat>),
        }
    };
}

fn catalog() -> &'static [Entry] {
    use checks_apollonius as ak;
    use checks_droz as df;
    use checks_lemoine as lem;
    use checks_lines as ln;
    use checks_neuberg_lucas as nl;
    use checks_quad as qd;
    use checks_radical as rad;
    &[
        entry!("L1.T1", "first Lemoine chain closes through K with six concyclic points", lem::l1_t1),
        entry!("L1.T2", "second Lemoine chain closes; six concyclic points centered at K", lem::l1_t2),
        entry!("L1.R", "first Lemoine center is the midpoint of [OK]", lem::l1_r),
        entry!("L2.T1", "first Lemoine circle divides the sides as c^2 : a^2 : b^2", lem::l2_t1),
        entry!("L2.C2", "first Lemoine chords are proportional to the cubes of the sides", lem::l2_c2),
        entry!("L2.P3", "second Lemoine chords are proportional to the opposite cosines", lem::l2_p3),
        entry!("L3.P1", "radical axis of the Lemoine circles is perpendicular to OK at K", lem::l3_p1, rational),
        entry!("L3.P2", "power(O1, C2) = -R1^2 makes the radical axis the perpendicular at O1", lem::l3_p2, rational),
        entry!("L4.L1", "midpoints of antiparallels lie on the symmedian, and conversely", lem::l4_l1),
        entry!("L4.T2", "generalized Lemoine construction: NP || BC, six concyclic points, center on OK", lem::l4_t2),
        entry!("E.T1", "the radical center of the excircles is the Spieker point", rad::e_t1),
        entry!("E.T2", "radical center of (I), (I_b), (I_c) is a medial-triangle excenter", rad::e_t2),
        entry!("E.T3", "squared tangent length from Spieker to each excircle is (r^2+p^2)/4", rad::e_t3, rational),
        entry!("P.T1", "polars of an exterior radical center cut the sides in collinear points", rad::p_t1),
        entry!("P.T2", "tangents at M to (MBC), (MAC), (MAB) cut the sides in collinear points", rad::p_t2),
        entry!("DF1.T1", "circle about H cuts the midlines at equal distances from the vertices", df::df1_t1),
        entry!("DF1.T3", "altitude-feet circles through O cut the sides in six concyclic points", df::df1_t3),
        entry!("DF1.T4", "radical center O iff the six altitude-feet cuts are concyclic about H", df::df1_t4),
        entry!("DF2.T1", "midpoint circles through H cut the sides on a circle about O", df::df2_t1, rational),
        entry!("DF2.P2", "midpoint circles of radius sqrt(k+side^2)/2 give six concyclic points", df::df2_p2),
        entry!("N.P1", "ON_a : ON_b : ON_c = a^3 : b^3 : c^3 with product R^3 and sum cot w", nl::n_p1),
        entry!("N.P2", "squared Neuberg center distances match the closed form", nl::n_p2),
        entry!("N.P4", "for a right angle at A the B- and C-Neuberg circles are orthogonal", nl::n_p4, rational),
        entry!("N.LOC", "points of the A-Neuberg circle form equibrocardian triangles with BC", nl::n_loc),
        entry!("LU.T1", "Lucas circles are pairwise tangent and inner-tangent to the circumcircle", nl::lu_t1),
        entry!("LU.T3", "A-Apollonius and B-, C-Lucas circles form a third-type pencil", nl::lu_t3),
        entry!("LU.P1", "ABC and the Lucas triangle are homological with axis O_A O_B O_C", nl::lu_p1),
        entry!("LU.P2", "tangential and Lucas triangles are orthological (one center is O)", nl::lu_p2),
        entry!("LU.R2", "the A-Apollonius and A-Lucas circles are orthogonal", nl::lu_r2, rational),
        entry!("R.L1", "equal-angle lines from a circumcircle point have collinear feet", ln::r_l1),
        entry!("R.L2", "AA' is parallel to the generalized Simson line", ln::r_l2),
        entry!("R.T1", "parallel chords and a circle point give a collinear, parallel transversal", ln::r_t1),
        entry!("R.T2", "chords parallel to a transversal concur on the circumcircle", ln::r_t2),
        entry!("R.T3", "isogonals of three parallels concur on the circumcircle, and conversely", ln::r_t3),
        entry!("AK.T2", "the diagonal midpoints of a complete quadrilateral are collinear", ak::ak_t2, rational),
        entry!("AK.T3", "rank-k Apollonius circles are coaxial; isodynamic points balance W A a^k", ak::ak_t3),
        entry!("AK.T7", "the rank-2 circle meets the circumcircle on the rank-3 cevian pair", ak::ak_t7),
        entry!("A2.P1", "QS bisects angle BQC and QP is a symmedian of QBC", ak::a2_p1),
        entry!("A2.P2", "adjoint circles, the rank-2 circle and (BOC) meet at the Brocard vertex A2", ak::a2_p2),
        entry!("HQ.ALL", "harmonic-quadrilateral property suite", qd::hq_all),
        entry!("SP.T1", "projections of an isogonal pair are concyclic about the pair midpoint", qd::sp_t1),
        entry!("SP.P2", "with P1 = H the six-point circle is the Euler circle", qd::sp_p2),
        entry!("OR.P", "medial and tangential triangles are orthological with centers O9 and O", ln::or_p),
        entry!("DO.T1", "perpendiculars from H to concurrent cevians cut the sides collinearly", ln::do_t1),
        entry!("DO.T2", "perpendiculars at O against the Bobillier transversal give concurrent cevians", ln::do_t2),
        entry!("AU.T1", "Bobillier: feet of the perpendiculars at M to MA, MB, MC are collinear", ln::au_t1),
        entry!("AU.T3", "the four orthocenters are collinear, perpendicular to the Newton-Gauss line", ln::au_t3),
        entry!("AU.T4", "Bobillier transversals of the four quadrilateral triangles are concurrent", ln::au_t4),
    ]
}

/// The designated mutation controls: a one-line perturbation of the named
/// construction that must make the check fail on almost every trial.
fn mutated_entry(id: &str) -> Option<FloatFn> {
    match id {
        "L3.P1" => Some(checks_lemoine::l3_p1_mutated::<f64>),
        "DF1.T3" => Some(checks_droz::df1_t3_mutated::<f64>),
        "LU.T3" => Some(checks_neuberg_lucas::lu_t3_mutated::<f64>),
        "AU.T3" => Some(checks_lines::au_t3_mutated::<f64>),
        "HQ.ALL" => Some(checks_quad::hq_all_mutated::<f64>),
        _ => None,
    }
}

/// Full catalog in stable order.
pub fn list_checks() -> Vec<TheoremCheck> {
    catalog()
        .iter()
        .map(|e| TheoremCheck {
            id: e.id,
            statement: e.statement,
            rational: e.rat_fn.is_some(),
        })
        .collect()
}

fn find(id: &str) -> Result<&'static Entry> {
    catalog().iter().find(|e| e.id == id).ok_or(Error::UnknownCheck)
}

/// Run a catalog check: `trials` independent seeded scenes, aggregated into a
/// deterministic report. A trial fails when its residual exceeds `threshold`.
pub fn run_check(
    id: &str,
    seed: u64,
    trials: u32,
    backend: Backend,
    threshold: f64,
) -> Result<CheckReport> {
    let entry = find(id)?;
    let run_one = |trial: u32, rec: Option<&mut SceneDocument>| -> Result<f64> {
        match backend {
            Backend::Float => {
                let mut cx = CheckCtx::<f64>::new(seed, trial as u64, threshold);
                if let Some(rec) = rec {
                    cx = cx.with_recorder(rec);
                }
                (entry.float_fn)(&mut cx)
            }
            Backend::Rational => {
                let f = entry.rat_fn.ok_or(Error::BackendUnsupported)?;
                let mut cx = CheckCtx::<Rat>::new(seed, trial as u64, threshold);
                if let Some(rec) = rec {
                    cx = cx.with_recorder(rec);
                }
                f(&mut cx)
            }
        }
    };
    if backend == Backend::Rational && entry.rat_fn.is_none() {
        return Err(Error::BackendUnsupported);
    }

    let mut failures = 0u32;
    let mut max_residual = 0.0f64;
    let mut sum = 0.0f64;
    let mut worst_trial = 0u32;
    for trial in 0..trials {
        let r = run_one(trial, None)?;
        if !r.is_finite() || r > threshold {
            failures += 1;
        }
        if r > max_residual || trial == 0 {
            max_residual = r;
            worst_trial = trial;
        }
        sum += r;
    }
    let mut worst_scene = SceneDocument::new();
    let _ = run_one(worst_trial, Some(&mut worst_scene))?;
    Ok(CheckReport {
        id: id.to_string(),
        backend,
        seed,
        trials,
        threshold,
        failures,
        max_residual,
        mean_residual: if trials > 0 { sum / trials as f64 } else { 0.0 },
        worst_scene,
    })
}

/// Residual of a single trial of a float-backend check, with an optional
/// similarity applied to the generated scene coordinates. The hook behind
/// the scale-invariance property: transformed scenes must produce the same
/// residual to within strict float slack.
pub fn trial_residual(
    id: &str,
    seed: u64,
    trial: u64,
    threshold: f64,
    sim: Option<Similarity>,
) -> Result<f64> {
    let entry = find(id)?;
    let mut cx = CheckCtx::<f64>::new(seed, trial, threshold);
    if let Some(sim) = sim {
        cx = cx.with_similarity(sim);
    }
    (entry.float_fn)(&mut cx)
}

/// Run the designated one-line mutation of a check (float backend). Only the
/// five documented ids have one.
pub fn run_mutated_check(
    id: &str,
    seed: u64,
    trials: u32,
    threshold: f64,
) -> Result<CheckReport> {
    find(id)?;
    let f = mutated_entry(id).ok_or(Error::UnknownCheck)?;
    let mut failures = 0u32;
    let mut max_residual = 0.0f64;
    let mut sum = 0.0f64;
    for trial in 0..trials {
        let mut cx = CheckCtx::<f64>::new(seed, trial as u64, threshold);
        let r = f(&mut cx)?;
        if !r.is_finite() || r > threshold {
            failures += 1;
        }
        max_residual = max_residual.max(r);
        sum += r;
    }
    Ok(CheckReport {
        id: format!("{id}.mutated"),
        backend: Backend::Float,
        seed,
        trials,
        threshold,
        failures,
        max_residual,
        mean_residual: if trials > 0 { sum / trials as f64 } else { 0.0 },
        worst_scene: SceneDocument::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_ids_are_unique_and_well_formed() {
        let checks = list_checks();
        // The catalog enumerates every theorem check of the suite.
        assert_eq!(checks.len(), 48);
        let mut seen = std::collections::BTreeSet::new();
        for c in &checks {
            assert!(seen.insert(c.id), "duplicate id {}", c.id);
            let mut parts = c.id.split('.');
            let head = parts.next().unwrap();
            let tail = parts.next().unwrap();
            assert!(parts.next().is_none());
            assert!(head.chars().all(|ch| ch.is_ascii_uppercase() || ch.is_ascii_digit()));
            assert!(!tail.is_empty() && tail.chars().all(|ch| ch.is_ascii_alphanumeric()));
        }
    }

    #[test]
    fn unknown_check_is_rejected() {
        assert!(matches!(
            run_check("NOPE.X", 1, 1, Backend::Float, 1e-7),
            Err(Error::UnknownCheck)
        ));
    }

    #[test]
    fn rational_backend_rejected_where_unsupported() {
        // AK.T3 draws non-integer ranks, which have no exact representation.
        assert!(matches!(
            run_check("AK.T3", 1, 1, Backend::Rational, 1e-7),
            Err(Error::BackendUnsupported)
        ));
    }

    #[test]
    fn df2_t1_clean_at_other_seeds() {
        let rep = run_check("DF2.T1", 1, 300, Backend::Float, 1e-7).unwrap();
        assert_eq!(rep.failures, 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_check("L3.P2", 7, 20, Backend::Float, 1e-7).unwrap();
        let b = run_check("L3.P2", 7, 20, Backend::Float, 1e-7).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
