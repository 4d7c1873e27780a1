//! circlekit: a triangle-and-circle geometry kernel.
//!
//! The crate constructs the classical "remarkable circles" of a triangle
//! (Lemoine, Droz-Farny, Neuberg, Lucas, Apollonius of k-th rank, the
//! six-point circle, the radical circle of the excircles), evaluates their
//! closed-form radii, and verifies the theorems about them by randomized
//! residual checks — exactly, where the claim is polynomial, on an
//! arbitrary-precision rational backend.
//!
//! Modules:
//! - [`kernel`]: points, lines, circles, powers, radical axes, poles/polars.
//! - [`centers`]: triangles, remarkable points, isogonal machinery, cevians.
//! - [`circles`]: constructors for every named circle, with witness points.
//! - [`registry`]: the theorem-check catalog and two constructive solvers.
//! - [`ruler`]: a straightedge-only construction DSL with an interpreter.
//! - [`scene`]: the JSON scene document and the deterministic SVG emitter.

pub mod centers;
pub mod circles;
pub mod kernel;
pub mod registry;
pub mod ruler;
pub mod scene;
