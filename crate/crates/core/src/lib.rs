//! Computing with finite algebras for concrete monads.
//!
//! The library works with finite, many-sorted, optionally ordered algebras
//! and the algebras of a handful of concrete monads on concrete base
//! varieties (finite words, the identity monad on monoids and posets, the
//! free category on a graph, Wilke-style two-sorted algebras). On top of
//! that it offers:
//!
//! * π-terms (terms with an idempotent-power operator) with parsing,
//!   evaluation and satisfaction of equations, inequations and implications,
//!   quantified over free variables or over a finite algebra of variables;
//! * pseudovariety presets and closure verification (products, subalgebras,
//!   quotients, split quotients), bounded HSP closure and equational
//!   cross-checks;
//! * exhaustive enumeration of finite algebras up to isomorphism and
//!   syntactic monoids of regular languages given as DFAs;
//! * bounded separation: search for the smallest finite algebra telling two
//!   π-terms apart.
//!
//! Everything is exact and brute-force by design; size caps keep runtimes
//! predictable at desk scale.

pub mod algebra;
pub mod error;
pub mod monad;
pub mod samples;
pub mod separation;
pub mod term;
pub mod variety;

pub use algebra::{Congruence, FiniteAlgebra, Morphism, Signature};
pub use error::{Error, Result};
pub use monad::{MonadSpec, TAlgebra};
pub use term::{EquationLike, PiTerm, VariableObject};
