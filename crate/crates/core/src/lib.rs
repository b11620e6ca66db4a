//! Exact computation of S_n-equivariant compactly supported Euler
//! characteristics for moduli spaces of n-pointed bi-elliptic curves of
//! genus 2, valued in the Grothendieck group of rational Hodge structures.
//!
//! The pipeline runs in integer/rational arithmetic throughout (no floats):
//!
//! * [`weylchars`] — irreducible characters of Sp(4) and SL(2) on their
//!   maximal tori, exact Weyl-character division, tensor/Adams operations
//!   on virtual classes of local systems,
//! * [`wreath`] — restriction of Sp(4) representations to the wreath
//!   product (SL(2) x SL(2)) : S_2 and further down to the diagonal,
//! * [`sl2`] — finite group checks in SL(2, Z/d) used to justify the
//!   self-duality of the local systems involved,
//! * [`dimforms`] — dimensions of spaces of cusp forms for the handful of
//!   congruence subgroups that show up in weight-(k) cohomology,
//! * [`motives`] — a small lambda-ring of motivic classes built from the
//!   Lefschetz class and cusp-form symbols,
//! * [`cohomology`] — compactly supported Euler characteristics of the
//!   relevant modular curves, their products, and the bi-elliptic locus
//!   with coefficients in each local system,
//! * [`getzler`] — the generating-function bookkeeping that assembles the
//!   per-local-system answers into Schur-polynomial coefficients for the
//!   n-pointed spaces.

pub mod cohomology;
pub mod dimforms;
pub mod getzler;
pub mod motives;
pub mod sl2;
pub mod weylchars;
pub mod wreath;

pub use cohomology::{ec_a1, ec_delta, ec_e2, ec_m, ec_m_label, ec_y2, IsotypicGraded};
pub use getzler::{euler_bn, partitions_of, Partition};
pub use motives::{GradedClass, MotiveClass, MotiveError, Sign};
pub use weylchars::{Sp4Label, VirtualSp4Class, WeylError};
pub use wreath::WreathLabel;
