//! Helicity of exact differential forms, boundary-helicity recognition
//! machinery, and certified interval bounds for embedding capacities on
//! model domains.
//!
//! The crate is organized in layers:
//!
//! - [`forms`]: exact exterior algebra with rational polynomial coefficients;
//! - [`geometry`]: parametrized integration regions and tensor quadrature;
//! - [`helicity`]: helicity of exact forms on closed hypersurfaces and the
//!   boundary-helicity profile of a compact region;
//! - [`recognition`]: feasibility analysis of boundary-component assignments,
//!   the separation thresholds `c1`/`c2`/`c0`, and the forced `C = 1`
//!   rescaling verdict;
//! - [`capacity`]: a rule-based interval evaluator for embedding capacities
//!   and Gromov width on the model-domain catalog;
//! - [`suites`]: seeded randomized verification suites over all of the above.

pub mod capacity;
pub mod forms;
pub mod geometry;
pub mod helicity;
pub mod recognition;
pub mod suites;
