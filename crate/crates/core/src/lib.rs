//! Desk-scale numerical laboratory for axially symmetric mean curvature
//! flow and volume-preserving mean curvature flow between two parallel
//! planes, with Neumann (right-angle) boundary conditions.
//!
//! The surface is a graph of revolution tracked by its radius profile:
//! [`profile`] derives the pointwise geometry, [`flow`] evolves it with an
//! adaptive explicit stepper, [`monitors`] audits the maximum-principle
//! bounds and evolution-equation residuals along a run, and [`rescale`]
//! zooms into the curvature-maximising event and fits the catenoid limit.
//! [`scenario`], [`io`], and [`cli`] supply presets, persistence, and the
//! batch front end.

pub mod cli;
pub mod flow;
pub mod io;
pub mod monitors;
pub mod profile;
pub mod rescale;
pub mod scenario;
