//! Permutations, partitions, tableaux, characters and the group algebra.

mod algebra;
mod character;
mod partition;
mod perm;
mod tableau;

pub use algebra::{
    bimodule_component, central_idempotent, component_content, idempotent_sum, young_symmetrizer, GAElt,
    GroupAlgebra,
};
#[allow(unused_imports)]
pub(crate) use algebra::idempotent;
pub use character::{char_value, dimension};
pub use partition::{Branch, Cell, Partition};
pub use perm::Perm;
pub use tableau::Tableau;
