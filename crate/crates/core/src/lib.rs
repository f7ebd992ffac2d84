//! Orlicz-space norms on atomic measure spaces and expansivity classifiers
//! for composition operators `C_φ f = f ∘ φ`.
//!
//! Atoms are integers. Weights, Young functions and transformations are
//! given by closed-form rules or finite tables with declared tails; every
//! limit-based decision goes through a [`TailModel`] and comes back as a
//! three-valued [`Status`].
//!
//! ```
//! use orlicz_core::{gauge_norm, atoms, MeasureSpace, SimpleFunction, YoungFunction};
//!
//! let space = MeasureSpace::geometric(0.5, -8, 8).unwrap();
//! let phi = YoungFunction::power(2.0).unwrap();
//! let f = SimpleFunction::indicator(&atoms(&[-2]));
//! // μ({-2}) = 4
//! assert!((gauge_norm(&space, &phi, &f).unwrap().value - 2.0).abs() < 1e-12);
//! ```

pub mod classify;
pub mod delta;
pub mod dissipative;
pub mod error;
pub mod function;
pub mod norm;
pub mod probe;
pub mod search;
pub mod space;
pub mod system;
pub mod tail;
pub mod transform;
pub mod verdict;
pub mod young;

pub use classify::{classify_all, Analysis, ClassifierConfig, ExponentEstimates, Outcome};
pub use delta::{check_delta2, check_delta_prime, DeltaCertificate, Window};
pub use dissipative::{DissipativeSpec, DissipativeStructure, SubsetSpec};
pub use error::{Error, Result};
pub use function::SimpleFunction;
pub use norm::{amemiya_norm, dual_grid_norm, gauge_norm, indicator_norm, modular, norm_report, NormReport};
pub use probe::{probe, ProbeConfig, ProbeReport};
pub use space::{atoms, AtomSet, DeclaredTail, MeasureSpace, WeightRule};
pub use system::{Boundedness, BoundednessCertificate, Direction, System};
pub use tail::{Side, TailModel};
pub use transform::{OffWindow, Transform};
pub use verdict::{Criterion, Status, Verdict, Witness};
pub use young::{Interpolation, YoungFunction};
