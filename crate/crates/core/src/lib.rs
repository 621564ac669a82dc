//! Canonical filtrations of `b`-modules over the rationals.
//!
//! A `b`-module is a finite-dimensional graded vector space with a raising
//! operator `e` of degree 2, the structure that the cohomology of a closed
//! symplectic manifold carries through multiplication by the symplectic class.
//! Every such module has a unique filtration whose shifted graded pieces are
//! `sl(2)`-modules. Its jump indices decide Hard Lefschetz and a weaker
//! surjectivity condition, and they control the differentials of the
//! Leray–Serre spectral sequence of a fibration with that fiber.
//!
//! ```
//! use lefrank::constructions::catalog_symplectic;
//! use lefrank::cohomology::{hard_lefschetz, weak_lefschetz};
//! use lefrank::filtration::saturation_level;
//!
//! let kt = catalog_symplectic("kodaira-thurston").unwrap();
//! assert!(!hard_lefschetz(&kt));
//! assert!(weak_lefschetz(&kt));
//! let s = saturation_level(&kt.bmodule()).unwrap();
//! assert_eq!((s.lo, s.hi), (1, 3));
//! ```

pub mod cohomology;
pub mod constructions;
pub mod error;
pub mod filtration;
pub mod io;
pub mod laws;
pub mod linalg;
pub mod module;
pub mod spectral;

pub use cohomology::{CohomologyRing, SymplecticData};
pub use filtration::{canonical_filtration, CanonicalFiltration, MultiplicityTable};
pub use linalg::{MatrixQ, Rational, Subspace};
pub use module::{BModule, GModule, GradedHom, GradedSpace, Weight};
