//! Atoms, molecules, canonical monomials and the text syntax for diagrams.

mod canon;
mod molecule;
mod parse;
mod signature;

pub use canon::{canonicalize, canonicalize_default, CanonBox, CanonMonomial, Endpoint, Sink};
pub use molecule::{product_classes, Atom, AtomKind, FreshNames, Molecule};
pub use parse::{parse_expr, ParsedTerm};
pub use signature::{valid_generator_name, Signature};
