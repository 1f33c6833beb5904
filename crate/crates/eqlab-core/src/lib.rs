//! Core library for `eqlab`: bounds, exact certificates, finite relaxations,
//! geometric constructions, spectral diagnostics, and the small-dimension
//! classification for t-almost-equiangular sets on unit spheres.
//!
//! A finite set of unit vectors in R^n is *t-almost-equiangular* if among any
//! three of its points some pair has inner product exactly t. The library
//! computes upper bounds on the maximum size of such sets (analytic and
//! semidefinite), verifies an exact rational certificate for the analytic
//! bound, builds the known extremal configurations, and classifies the
//! optimal configurations in dimensions 2 and 3 over t in [-1, 0].
//!
//! Modules are layered bottom-up:
//!
//! * [`ratio`], [`poly`], [`algebraic`] — exact rational and algebraic
//!   number arithmetic (Sturm sequences, root isolation).
//! * [`jacobi`] — Jacobi/Gegenbauer polynomials and the associated
//!   two-point kernels on spheres.
//! * [`bounds`] — the closed-form three-point bound and its combination
//!   with the spectral cap.
//! * [`exactmat`], [`certificate`], [`sdpa`] — exact positive
//!   semidefiniteness checks and the rational certificate blocks.
//! * [`sdp`], [`hypergraph`], [`theta`] — a dense primal-dual interior
//!   point solver and the finite hypergraph relaxations.
//! * [`geometry`] — explicit coordinate constructions (simplices, rhombi,
//!   spindles, double simplices) and a heuristic realizer.
//! * [`spectral`] — Gram-matrix diagnostics for maximum sets at t = -1/n.
//! * [`graphs`], [`classify`] — graph enumeration, forbidden-pattern
//!   filtering, and the dimension-2/3 classification.
//! * [`manifest`] — reproducibility manifests for CLI runs.

pub mod ratio;
pub mod poly;
pub mod algebraic;
pub mod jacobi;
pub mod bounds;
pub mod exactmat;
pub mod certificate;
pub mod sdpa;
pub mod sdp;
pub mod hypergraph;
pub mod theta;
pub mod graphs;
pub mod geometry;
pub mod spectral;
pub mod classify;
pub mod manifest;

pub use ratio::Rat;
