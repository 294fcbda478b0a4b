//! Verification toolkit for presentations of even spin mapping class groups.

pub mod fp_core;
pub mod gf2_spin;
pub mod linalg;
pub mod paper_presentations;
pub mod sp_rep;
pub mod torus_complex;
