//! Exact computations for finite-dimensional bound quiver algebras:
//! maximal ranks of morphisms between projectives, minimal projective
//! presentations, the Auslander–Reiten translate and E-invariants, and
//! rank-based τ-regularity verdicts.

pub mod ar;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod modfile;
pub mod present;
pub mod quiver;
pub mod rep;
pub mod sampling;

pub use error::{Error, Result};
pub use field::{Fp, Matrix, Scalar, SeedStream, Q};
pub use quiver::{build_algebra, parse_quiver_file, Algebra, Ideal, Quiver};
pub use ar::{HierarchyReport, Outcome, ReductionReport, Verdict};
pub use present::{ProjDecomp, RankScanReport, TwoComplex};
pub use rep::{Morphism, ProjDim, Representation};
