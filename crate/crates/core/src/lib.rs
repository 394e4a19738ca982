//! Exact kernel for computing with directed paths in globular cell complexes.
//!
//! All arithmetic is exact rational arithmetic: reparametrizations are
//! piecewise-linear monotone surjections with rational breakpoints, execution
//! paths are stored in a canonical normal form, and every equality the kernel
//! decides is a structural equality of canonical values.
//!
//! The crate is organized around five layers:
//!
//! - [`reparam`]: the algebra of monotone piecewise-linear maps between
//!   rational-length segments (composition, tensor, decomposition, flats).
//! - [`complex`]: combinatorial globular cell complexes with decidable
//!   attaching data.
//! - [`paths`]: execution paths in normal form, Moore composition,
//!   naturalization, carriers, stop intervals, and trace equivalence.
//! - [`spaces`]: trace enumeration on finite complexes, achronal-slice
//!   analysis, natural-length profiles of path families.
//! - [`mooreflow`]: variable-length paths, saturation of path predicates, and
//!   the indexed-diagram pushout checker for path spaces of cell attachments.

pub mod complex;
pub mod fixtures;
pub mod format;
pub mod mooreflow;
pub mod paths;
pub mod rat;
pub mod reparam;
pub mod report;
pub mod spaces;
pub mod suites;

pub use complex::{AttachingData, DiskPoint, Flavor, GlobularCell, GlobularComplex, Resolver};
pub use paths::{ExecutionPath, NaturalPath, PathStep, PointDescriptor, RawSegment};
pub use rat::{rat, Rat};
pub use reparam::{common_reparam, FlatRecord, PlMap};
