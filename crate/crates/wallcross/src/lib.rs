//! Exact wall-and-chamber computations for Bridgeland stability conditions on a
//! principally polarized abelian surface with Picard rank 1.
//!
//! The geometric setting is a complex torus `T` of dimension 2 with `Pic T = <l>`
//! and `l^2 = 2`. Objects of the derived category are tracked only through their
//! Chern characters `(r, c*l, chi)`, which form the rank-3 lattice `Z^3` in this
//! basis. A complexified Kähler class `s*l + i*t*l` induces a central charge and a
//! slope function on that lattice; loci where two slopes agree are *walls* —
//! semicircles centred on the `s`-axis or vertical lines — and the chambers they
//! cut out index the possible moduli spaces of stable objects.
//!
//! Everything here is computed in exact rational arithmetic. The half-plane
//! coordinate is `(s, u)` with `u = t^2`, so slope comparisons, wall equations and
//! chamber boundaries never materialize a square root; the only place floating
//! point appears is the final SVG serialization in [`render`].
//!
//! Modules:
//!
//! - [`lattice`] — integer arithmetic on Chern characters: products, duals, the
//!   Euler pairing, Bogomolov discriminants, moduli dimensions and the
//!   Fourier-Mukai involution `(r, c, chi) -> (-chi, c, -r)`.
//! - [`stability`] — exact central charges and slopes at rational points of the
//!   stability half-plane.
//! - [`walls`] — closed-form wall families for the twisted ideal-sheaf classes
//!   `(1, 2, 4-n)`, the exhaustive pseudo-wall search with Bogomolov pruning,
//!   wall counts, the generating series and chamber decompositions.
//! - [`surgery`] — per-wall flop bookkeeping (destabilizer pairs, moduli and
//!   fiber dimensions, stratum codimensions) and the explicit unimodular torus
//!   map identifying the two moduli spaces in the length-3 case.
//! - [`render`] — deterministic SVG emission of wall-and-chamber diagrams.

pub mod lattice;
pub mod rat;
pub mod render;
pub mod stability;
pub mod surgery;
pub mod walls;

pub use lattice::ChernVector;
pub use num_rational::Rational64;
pub use stability::{SlopeValue, StabilityPoint};
pub use walls::{Chamber, Region, Wall, WallShape};
