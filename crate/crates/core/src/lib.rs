//! Exact intersection theory on blowups of rational surfaces carrying the
//! ramification data of maximal orders, together with a classifier for
//! terminal and canonical del Pezzo orders.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: the Picard lattice of an iterated blowup of ℙ² or 𝔽ₙ on the
//!   total-transform basis, with canonical classes and transforms.
//! * [`config`]: forests of (possibly infinitely near) blowup points, declared
//!   curves and the general / almost general position predicates.
//! * [`order`]: ramification components, the discriminant, the order's
//!   canonical class and the blowup rules for it.
//! * [`positivity`]: effective-cone generators, del Pezzo style predicates,
//!   K-zero curves and the contraction loop.
//! * [`classify`]: fixture catalog, theorem-level enumerators, JSON I/O and
//!   report rendering used by the `dporders` binary.
//!
//! All arithmetic is exact over [`Q`]; there are no tolerances anywhere.

pub mod classify;
pub mod config;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod order;
pub mod positivity;
pub mod rational;

pub use config::{BlowupPoint, CurveRecord, Flavor, SurfaceModel};
pub use error::{Error, Result};
pub use exec::Exec;
pub use lattice::{BasisTag, DivisorClass};
pub use order::{Location, OrderData, PointSpec, RamificationComponent};
pub use positivity::{ConeGenerator, GeneratorKind, Witness};

pub use rational::Q;
