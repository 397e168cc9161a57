//! Ideals of the initial wheeled PROP `𝒵 = ⊕ Q[t]Σ_n`: compatible
//! families, the normal form `I(f, C)`, membership, generation, sums and
//! classification.

pub mod closure;
mod contraction;
mod ideal;

pub use contraction::{
    contract_symmetrizer, contract_via_diagrams, div1_blocks, div1_check, div2_check, Div2Report,
};
pub use ideal::{generate, ideal_sum, normal_form, principal_ideal, Classification, CompatFamily, IdealData};
