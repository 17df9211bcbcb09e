//! k-trees and multiplicative Zagreb indices.
//!
//! Construction, recognition and enumeration of k-trees; exact and log-domain
//! evaluation of `Π1,c`, `Π2` and the Narumi–Katayama product; and executable
//! checks that the k-star and the k-path are the extremal k-trees for those
//! indices, by closed forms, by strictly monotone rewiring search and by
//! exhaustive census.
//!
//! Log-domain code is generic over [`Scalar`] (`f32` or `f64`); exact values
//! are arbitrary-precision integers. The aliases below fix `f64`.

pub mod audit;
pub mod canon;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod indices;
pub mod io;
pub mod ktree;
pub mod scalar;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm, DEFAULT_CANON_BOUND};
pub use enumerate::{enumerate_unlabeled, EnumerationReport};
pub use error::{EnumerateError, GraphError, IndexError, KTreeError, MoveError, ParseError};
pub use extremal::{enumerate_moves, local_search, verify_extremal_theorems, Direction, Goal, Objective, RewireMove};
pub use graph::{DegreeSequence, Edge, Graph, Vertex};
pub use indices::{compare_values, IndexFamily, IndexMode, IndexParams, IndexValue};
pub use ktree::{gen_kpath, gen_kstar, gen_random, recognize, KTree};
pub use scalar::Scalar;

/// Index value with `f64` log-domain component.
pub type Index = IndexValue<f64>;
/// Index parameters with an `f64` exponent.
pub type Params = IndexParams<f64>;
