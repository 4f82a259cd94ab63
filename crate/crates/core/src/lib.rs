//! Exact computations on moment cones of contact toric manifolds of Reeb type.
//!
//! Given the inward facet normals of a strictly convex rational polyhedral
//! cone, this crate validates the presentation, enumerates the face lattice,
//! decides whether the cone is *good*, and computes the fundamental group
//! (a finite abelian group, in invariant-factor form) and the rank of `π_2`
//! of the corresponding contact toric manifold. Intermediate objects (the
//! cokernel of the normal map, the arrangement of vertex-meeting index sets,
//! moment-map witnesses) are exposed and cross-checked against independent
//! oracles.
//!
//! All arithmetic is exact: integers are [`num_bigint::BigInt`] and rational
//! points are [`num_rational::BigRational`]. Facet indices are 0-based in the
//! API; [`FacetSet`]'s `Display` prints them 1-based.
//!
//! ```
//! use momentcone_core::{compute_pi1, Cone, ConeSpec};
//!
//! let spec = ConeSpec::from_i64(2, &[&[1, 0], &[1, 5]]).unwrap();
//! let cone = Cone::new(&spec).unwrap();
//! assert_eq!(compute_pi1(&cone).unwrap().to_string(), "Z/5");
//! ```

pub mod cone;
pub mod error;
pub mod faces;
pub mod facet_set;
pub mod homotopy;
pub mod linalg;
pub mod oracle;
pub mod witness;

pub use cone::{reeb_vector, validate, Cone, ConeSpec, FailureCode, ReebVector, ValidationFailure, ValidationReport};
pub use error::{Error, Result};
pub use faces::{
    arrangement, check_good, enumerate_faces, extreme_rays, Arrangement, Face, FaceLattice, GoodnessCondition,
    GoodnessReport, GoodnessViolation, Ray,
};
pub use facet_set::FacetSet;
pub use homotopy::{compute_pi1, compute_pi2_rank, consistency_check, ConsistencyCheck, HomotopyReport};
pub use linalg::{
    cokernel, is_direct_summand, kernel_basis, minor_gcd, snf, FinAbGroup, IntMatrix, SmithDecomposition,
};
pub use oracle::{run_oracles, OracleReport};
pub use witness::{membership_check, relint_point, witness_for_face, Membership, MomentWitness, Rejection};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
