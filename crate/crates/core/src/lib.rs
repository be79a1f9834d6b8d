//! Exact polyhedral computations for GIT data of affine toric varieties,
//! their downgrades along subtori, and the resulting polyhedral divisors.

pub mod arith;
pub mod cone;
mod dd;
pub mod downgrade;
pub mod error;
pub mod fan;
pub mod polyhedron;
pub mod ppdiv;
pub mod semigroup;
pub mod toric_git;

pub use arith::{hnf, kernel_basis, snf, IntMatrix, IntVector, RatVector};
pub use cone::{Cone, Face};
pub use error::{Error, Result};
pub use semigroup::{hilbert_basis, monoid_generators, saturation_factor, HilbertBasis};
pub use toric_git::{AffineToricData, GitData, OrbitCone, SemistableLocus, SubsetSumPoset};
pub use downgrade::{Downgrade, DowngradedGitData, SubtorusData};
pub use ppdiv::{PolyhedralDivisor, RationalDivisor, TailedPolyhedron, ToricBase};
