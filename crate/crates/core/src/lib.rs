//! Exact Koszul-flattening lower bounds for the border rank of order-3
//! tensors over `Q` and `GF(p)`, together with machine-checkable
//! certificates for the invertibility of `Σ L_i ⊗ S_i` and its blow-ups.

pub mod certificate;
pub mod cli;
mod elimination;
pub mod error;
pub mod exterior;
pub mod field;
pub mod flattening;
pub mod matrix;
pub mod sampling;
pub mod tensor;
pub mod tensor_io;

pub use certificate::{
    block_structure, elusive_certificate, elusive_position, semi_main_matrix, verify_semi_main,
    BlockEntry, ElusiveCertificate, ElusiveEntry, SemiMainReport,
};
pub use error::{Error, Result};
pub use exterior::{
    binomial, scaled_basis_change, subset_rank, subset_unrank, wedge_sign, KoszulContext,
    ScaledBasis,
};
pub use field::{FieldSpec, Scalar};
pub use flattening::{
    blowup_element, full_blowup_check, lower_bound, lower_bound_even, lower_bound_odd, phi,
    toeplitz_basis, witness_search, BlowupReport, EvenOptions, RankCertificate, ToeplitzBasis,
    WitnessConfig, WitnessResult,
};
pub use matrix::ExactMatrix;
pub use tensor::Tensor3;
