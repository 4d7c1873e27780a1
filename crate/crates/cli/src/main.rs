//! circlekit: triangle-and-circle geometry from the command line.
//!
//! Subcommands: `centers`, `circle`, `check`, `ruler`, `render`.
//! Stdout carries documents and reports only; messages go to stderr.
//! Exit codes: 0 success, 1 check failures, 2 input or construction errors,
//! 3 unknown check id.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Parser)]
#[command(name = "circlekit", version, about = "triangle-and-circle geometry kernel")]
pub struct Cli {
    /// Scalar backend: f64 or rational.
    #[arg(long, global = true, default_value = "f64")]
    pub backend: String,
    /// Pass threshold for checks (alias: --threshold).
    #[arg(long, global = true, alias = "threshold", default_value_t = 1e-7)]
    pub tolerance: f64,
    /// Seed for every randomized command.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Emit JSON instead of tables where applicable.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct TriangleArgs {
    /// Three vertices as "x,y x,y x,y".
    #[arg(long, num_args = 3, value_name = "X,Y")]
    pub points: Option<Vec<String>>,
    /// Side lengths "a,b,c"; places B at the origin and C on the +x axis.
    #[arg(long, value_name = "A,B,C")]
    pub sides: Option<String>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Remarkable points and derived triangles of a triangle.
    Centers {
        #[command(flatten)]
        triangle: TriangleArgs,
    },
    /// A named circle with its witness points.
    Circle {
        #[command(flatten)]
        triangle: TriangleArgs,
        /// lemoine1, lemoine2, lemoine-gen, droz-farny1, droz-farny2,
        /// df-family, excircle-radical, neuberg, lucas, apollonius,
        /// six-point, adjoint
        id: String,
        /// Parameter t for lemoine-gen.
        #[arg(long)]
        t: Option<f64>,
        /// Vertex-circle radius for df-family.
        #[arg(long)]
        rho: Option<f64>,
        /// Vertex for neuberg, lucas, apollonius.
        #[arg(long)]
        vertex: Option<String>,
        /// Rank for apollonius.
        #[arg(long)]
        k: Option<f64>,
        /// Interior point "x,y" for six-point.
        #[arg(long)]
        p1: Option<String>,
        /// Vertex the adjoint circle passes through.
        #[arg(long)]
        through: Option<String>,
        /// Vertex where the adjoint circle is tangent.
        #[arg(long, value_name = "VERTEX")]
        tangent_at: Option<String>,
    },
    /// Run theorem checks from the catalog.
    Check {
        /// Check ids, or "all".
        ids: Vec<String>,
        #[arg(long, default_value_t = 300)]
        trials: u32,
    },
    /// Execute or verify straightedge programs.
    Ruler {
        /// run | verify
        action: String,
        /// Path of a .ruler program.
        program: Option<String>,
        /// Name of a built-in program instead of a file.
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, default_value_t = 300)]
        trials: u32,
    },
    /// Render a scene JSON document to SVG.
    Render {
        /// Scene file; "-" or absent reads stdin.
        scene: Option<String>,
        #[arg(long, default_value_t = 512)]
        size: u32,
        #[arg(long, default_value_t = 0.08)]
        margin: f64,
        #[arg(long)]
        no_labels: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
