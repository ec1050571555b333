//! Associahedral and permutohedral tilings.
//!
//! [`assoc`] models the associahedron by polygon diagonals and builds the
//! gluing data of the tilings given by Schläfli symbols, [`classify`]
//! compares those tilings, [`symm`] checks the symmetric presentation of the
//! automorphism group and its permutation image, and [`permuto`] verifies the
//! permutohedral structure of maximal blow-ups.

pub mod assoc;
pub mod classify;
pub mod permuto;
pub mod symm;

pub use assoc::{Associahedron, TilingData};
pub use classify::{classify_family, iso_tests, max_symmetry_test, Classification, IsoReport, Verdict};
pub use permuto::{permutohedron_checks, PermutoMode, PermutoReport};
pub use symm::{symm_presentation, SymmPresentation};
