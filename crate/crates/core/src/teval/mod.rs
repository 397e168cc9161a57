//! Evaluation of diagrams on concrete tensors.

mod checks;
mod einsum;
mod rep;
mod tensor;

pub use checks::{
    annihilation_test, cayley_hamilton_element, check_cayley_hamilton, check_lie, gram_rank, invariant_span_gl,
    nonabelian2, relation_kernel, sl2, so3, structure_tensor, tensor_rank, AnnihilationReport, Kernel, KernelSpec,
    LieReport,
};
pub use rep::{generic_rep, generic_var_name, Representation};
pub use tensor::Tensor;
