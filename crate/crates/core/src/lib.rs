//! Computational toolkit for free groups of small rank: words and
//! automorphisms, finite-index subgroups and Schreier rewriting, integral
//! representations on subgroup abelianizations, Fox calculus and Magnus
//! embeddings, congruence-quotient certificates and affine group
//! constructions over finite fields.

pub mod affine;
pub mod congruence;
pub mod homs;
pub mod intmat;
pub mod magnus;
pub mod modmat;
pub mod quotients;
pub mod sampling;
pub mod schreier_modules;
pub mod words;

pub use homs::{FreeHom, HomError, VerifiedAut};
pub use intmat::IntMatrix;
pub use modmat::ModMatrix;
pub use quotients::{FiniteQuotient, QuotientError, SchreierSystem, SubgroupHom};
pub use words::{Alphabet, Letter, Syllable, Word, WordError};
