//! Command implementations for the circlekit CLI.

use std::process::ExitCode;

use circlekit::centers::{CenterId, DerivedTriangleId, Triangle, Vertex};
use circlekit::circles::{
    adjoint_circle, apollonius_rank_k, droz_farny, droz_farny_family, generalized_lemoine,
    lemoine_circle, lucas_circle, neuberg_circle, radical_circle_excircles, six_point_circle,
    DrozFarnyOrder, LemoineOrder, NamedCircleResult,
};
use circlekit::kernel::{Point, Rat, Scalar, ToleranceContext};
use circlekit::registry::{self, Backend, CheckReport};
use circlekit::ruler;
use circlekit::scene::{render_scene, RenderOptions, SceneDocument};

use crate::{Cli, Command, TriangleArgs};

#[derive(Debug)]
pub struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { message: message.into(), code }
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::new(2, msg)
}

pub fn dispatch(cli: &Cli) -> Result<ExitCode> {
    let backend: Backend = cli
        .backend
        .parse()
        .map_err(|e: String| input_err(e))?;
    match &cli.command {
        Command::Centers { triangle } => match backend {
            Backend::Float => cmd_centers::<f64>(triangle),
            Backend::Rational => cmd_centers::<Rat>(triangle),
        },
        Command::Circle {
            triangle,
            id,
            t,
            rho,
            vertex,
            k,
            p1,
            through,
            tangent_at,
        } => {
            let opts = CircleOpts {
                id: id.clone(),
                t: *t,
                rho: *rho,
                vertex: vertex.clone(),
                k: *k,
                p1: p1.clone(),
                through: through.clone(),
                tangent_at: tangent_at.clone(),
            };
            match backend {
                Backend::Float => cmd_circle::<f64>(triangle, &opts),
                Backend::Rational => cmd_circle::<Rat>(triangle, &opts),
            }
        }
        Command::Check { ids, trials } => cmd_check(cli, backend, ids, *trials),
        Command::Ruler { action, program, builtin, trials } => {
            cmd_ruler(cli, action, program.as_deref(), builtin.as_deref(), *trials)
        }
        Command::Render { scene, size, margin, no_labels } => {
            cmd_render(scene.as_deref(), *size, *margin, !*no_labels)
        }
    }
}

fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let mut it = s.split(',');
    let x = it
        .next()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .ok_or_else(|| input_err(format!("bad coordinate pair '{s}'")))?;
    let y = it
        .next()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .ok_or_else(|| input_err(format!("bad coordinate pair '{s}'")))?;
    if it.next().is_some() {
        return Err(input_err(format!("bad coordinate pair '{s}'")));
    }
    Ok((x, y))
}

/// Triangle from --points or --sides. The --sides placement is canonical:
/// B = (0, 0), C = (a, 0), A in the upper half-plane.
fn triangle_from_args<S: Scalar>(args: &TriangleArgs) -> Result<Triangle<S>> {
    let coords: [(f64, f64); 3] = if let Some(points) = &args.points {
        if points.len() != 3 {
            return Err(input_err("--points needs exactly three x,y pairs"));
        }
        [
            parse_pair(&points[0])?,
            parse_pair(&points[1])?,
            parse_pair(&points[2])?,
        ]
    } else if let Some(sides) = &args.sides {
        let v: Vec<f64> = sides
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| input_err(format!("bad side list '{sides}'")))?;
        if v.len() != 3 {
            return Err(input_err("--sides needs a,b,c"));
        }
        let (a, b, c) = (v[0], v[1], v[2]);
        // A from the law of cosines over the base BC.
        let x = (a * a + c * c - b * b) / (2.0 * a);
        let y2 = c * c - x * x;
        if !(a > 0.0 && b > 0.0 && c > 0.0) || y2 <= 0.0 {
            return Err(input_err("degenerate triangle"));
        }
        [(x, y2.sqrt()), (0.0, 0.0), (a, 0.0)]
    } else {
        return Err(input_err("one of --points or --sides is required"));
    };
    let scale = {
        let xs: Vec<f64> = coords.iter().map(|c| c.0).collect();
        let ys: Vec<f64> = coords.iter().map(|c| c.1).collect();
        let w = xs.iter().cloned().fold(f64::MIN, f64::max)
            - xs.iter().cloned().fold(f64::MAX, f64::min);
        let h = ys.iter().cloned().fold(f64::MIN, f64::max)
            - ys.iter().cloned().fold(f64::MAX, f64::min);
        (w * w + h * h).sqrt().max(1e-9)
    };
    let ctx = ToleranceContext::with_scale(scale);
    Triangle::from_xy(coords, &ctx).map_err(|_| input_err("degenerate triangle"))
}

fn parse_vertex(s: Option<&str>, flag: &str) -> Result<Vertex> {
    match s {
        Some("A") | Some("a") => Ok(Vertex::A),
        Some("B") | Some("b") => Ok(Vertex::B),
        Some("C") | Some("c") => Ok(Vertex::C),
        Some(other) => Err(input_err(format!("bad vertex '{other}' for {flag}"))),
        None => Err(input_err(format!("{flag} is required"))),
    }
}

fn cmd_centers<S: Scalar>(args: &TriangleArgs) -> Result<ExitCode> {
    let t = triangle_from_args::<S>(args)?;
    let mut doc = SceneDocument::new();
    doc.add_point("A", t.va());
    doc.add_point("B", t.vb());
    doc.add_point("C", t.vc());
    let centers = [
        (CenterId::Centroid, "centroid"),
        (CenterId::Circumcenter, "circumcenter"),
        (CenterId::Orthocenter, "orthocenter"),
        (CenterId::Incenter, "incenter"),
        (CenterId::ExcenterA, "excenter_A"),
        (CenterId::ExcenterB, "excenter_B"),
        (CenterId::ExcenterC, "excenter_C"),
        (CenterId::NinePoint, "nine_point"),
        (CenterId::SymmedianPoint, "symmedian_point"),
        (CenterId::Spieker, "spieker"),
        (CenterId::Brocard1, "brocard_1"),
        (CenterId::Brocard2, "brocard_2"),
    ];
    for (id, name) in centers {
        match t.center(id) {
            Ok(p) => doc.add_point(name, &p),
            Err(e) => return Err(input_err(format!("{name}: {e}"))),
        }
    }
    let derived = [
        (DerivedTriangleId::Medial, "medial"),
        (DerivedTriangleId::Tangential, "tangential"),
        (DerivedTriangleId::SecondBrocard, "second_brocard"),
        (DerivedTriangleId::Excentral, "excentral"),
        (DerivedTriangleId::Lucas, "lucas"),
    ];
    for (id, name) in derived {
        match t.derived_triangle(id) {
            Ok(dt) => {
                doc.add_point(&format!("{name}_A"), dt.va());
                doc.add_point(&format!("{name}_B"), dt.vb());
                doc.add_point(&format!("{name}_C"), dt.vc());
            }
            // Undefined derived triangles (right angle, isosceles) are
            // skipped with a note rather than failing the whole document.
            Err(e) => eprintln!("note: {name} triangle unavailable: {e}"),
        }
    }
    doc.add_circle("circumcircle", &t.circumcircle());
    println!("{}", doc.to_json());
    Ok(ExitCode::SUCCESS)
}

struct CircleOpts {
    id: String,
    t: Option<f64>,
    rho: Option<f64>,
    vertex: Option<String>,
    k: Option<f64>,
    p1: Option<String>,
    through: Option<String>,
    tangent_at: Option<String>,
}

fn cmd_circle<S: Scalar>(args: &TriangleArgs, opts: &CircleOpts) -> Result<ExitCode> {
    let t = triangle_from_args::<S>(args)?;
    let named: NamedCircleResult<S> = match opts.id.as_str() {
        "lemoine1" => lemoine_circle(&t, LemoineOrder::First),
        "lemoine2" => lemoine_circle(&t, LemoineOrder::Second),
        "lemoine-gen" => {
            let tv = opts.t.ok_or_else(|| input_err("--t is required"))?;
            generalized_lemoine(&t, &S::from_f64(tv))
        }
        "droz-farny1" => droz_farny(&t, DrozFarnyOrder::First),
        "droz-farny2" => droz_farny(&t, DrozFarnyOrder::Second),
        "df-family" => {
            let rho = opts.rho.ok_or_else(|| input_err("--rho is required"))?;
            droz_farny_family(&t, &S::from_f64(rho))
        }
        "excircle-radical" => radical_circle_excircles(&t),
        "neuberg" => neuberg_circle(&t, parse_vertex(opts.vertex.as_deref(), "--vertex")?),
        "lucas" => lucas_circle(&t, parse_vertex(opts.vertex.as_deref(), "--vertex")?),
        "apollonius" => {
            let v = parse_vertex(opts.vertex.as_deref(), "--vertex")?;
            let k = opts.k.ok_or_else(|| input_err("--k is required"))?;
            apollonius_rank_k(&t, v, &S::from_f64(k))
        }
        "six-point" => {
            let p1 = opts.p1.as_deref().ok_or_else(|| input_err("--p1 is required"))?;
            let (x, y) = parse_pair(p1)?;
            six_point_circle(&t, &Point::xy(x, y))
        }
        "adjoint" => {
            let through = parse_vertex(opts.through.as_deref(), "--through")?;
            let at = parse_vertex(opts.tangent_at.as_deref(), "--tangent-at")?;
            let circle = adjoint_circle(&t, through, at)
                .map_err(|e| input_err(format!("{e:?}")))?;
            let mut doc = SceneDocument::new();
            doc.add_point("A", t.va());
            doc.add_point("B", t.vb());
            doc.add_point("C", t.vc());
            doc.add_circle("adjoint", &circle);
            println!("{}", doc.to_json());
            return Ok(ExitCode::SUCCESS);
        }
        other => return Err(input_err(format!("unknown circle id '{other}'"))),
    }
    .map_err(|e| input_err(format!("{e:?}")))?;

    let mut doc = SceneDocument::new();
    doc.add_point("A", t.va());
    doc.add_point("B", t.vb());
    doc.add_point("C", t.vc());
    doc.add_circle(&opts.id, &named.circle);
    for (name, p) in &named.witnesses {
        doc.add_point(name, p);
    }
    for (name, c) in &named.aux_circles {
        doc.add_circle(name, c);
    }
    // Metadata goes to stderr as comment lines; stdout stays a pure document.
    for (name, value) in &named.metadata {
        eprintln!("# {name} = {}", value.to_f64());
    }
    println!("{}", doc.to_json());
    Ok(ExitCode::SUCCESS)
}

fn report_line(rep: &CheckReport) -> String {
    format!(
        "{:8} {:8} trials={:4} failures={:3} max={:.3e} mean={:.3e} {}",
        rep.id,
        match rep.backend {
            Backend::Float => "f64",
            Backend::Rational => "rational",
        },
        rep.trials,
        rep.failures,
        rep.max_residual,
        rep.mean_residual,
        if rep.passed() { "PASS" } else { "FAIL" }
    )
}

fn cmd_check(cli: &Cli, backend: Backend, ids: &[String], trials: u32) -> Result<ExitCode> {
    if ids.is_empty() {
        return Err(input_err("give check ids or 'all'"));
    }
    let catalog = registry::list_checks();
    let run_all = ids.len() == 1 && ids[0] == "all";
    let selected: Vec<&str> = if run_all {
        catalog
            .iter()
            .filter(|c| backend == Backend::Float || c.rational)
            .map(|c| c.id)
            .collect()
    } else {
        ids.iter().map(String::as_str).collect()
    };

    let mut any_failed = false;
    for id in selected {
        match registry::run_check(id, cli.seed, trials, backend, cli.tolerance) {
            Ok(rep) => {
                if !rep.passed() {
                    any_failed = true;
                }
                if cli.json {
                    println!("{}", serde_json::to_string(&rep).expect("report serializes"));
                } else {
                    println!("{}", report_line(&rep));
                }
            }
            Err(registry::Error::UnknownCheck) => {
                return Err(CliError::new(3, format!("unknown check '{id}'")));
            }
            Err(e) => return Err(input_err(format!("{id}: {e}"))),
        }
    }
    Ok(if any_failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_ruler(
    cli: &Cli,
    action: &str,
    program_path: Option<&str>,
    builtin: Option<&str>,
    trials: u32,
) -> Result<ExitCode> {
    let program = if let Some(name) = builtin {
        let id: ruler::BuiltinId = name.parse().map_err(|e: String| input_err(e))?;
        ruler::builtin(id)
    } else if let Some(path) = program_path {
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_err(format!("cannot read '{path}': {e}")))?;
        ruler::parse(&text).map_err(|e| input_err(e.to_string()))?
    } else {
        return Err(input_err("give a program path or --builtin"));
    };
    ruler::straightedge_audit(&program).map_err(|e| input_err(e.to_string()))?;

    match action {
        "run" => {
            let scene = ruler::run_sampled(&program, cli.seed)
                .map_err(|e| input_err(e.to_string()))?;
            println!("{}", scene.to_document().to_json());
            Ok(ExitCode::SUCCESS)
        }
        "verify" => {
            let rep = ruler::verify(&program, trials, cli.seed)
                .map_err(|e| input_err(e.to_string()))?;
            if cli.json {
                println!("{}", serde_json::to_string(&rep).expect("report serializes"));
            } else {
                println!("{}", report_line(&rep));
            }
            Ok(if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        other => Err(input_err(format!("unknown ruler action '{other}'"))),
    }
}

fn cmd_render(scene: Option<&str>, size: u32, margin: f64, labels: bool) -> Result<ExitCode> {
    let text = match scene {
        Some("-") | None => {
            use std::io::Read;
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| input_err(format!("stdin: {e}")))?;
            buf
        }
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| input_err(format!("cannot read '{path}': {e}")))?,
    };
    let doc = SceneDocument::from_json(&text).map_err(|e| input_err(format!("bad scene: {e}")))?;
    let opts = RenderOptions { size, margin, labels };
    print!("{}", render_scene(&doc, &opts));
    Ok(ExitCode::SUCCESS)
}
