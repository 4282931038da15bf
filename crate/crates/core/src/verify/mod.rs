//! Numerical checks: defining relations, irreducibility via the commutant,
//! nonequivalence via fingerprints, and the block structure of `T'`.

pub mod commutant;
pub mod decompose;
pub mod fingerprint;
pub mod relations;

pub use commutant::{commutant_dimension, commutant_dimension_dense, commutant_dimension_with_cap, DEFAULT_CAP};
pub use decompose::{
    decompose_prime, diagonal_similarity, identify_blocks, match_block_to_nonclassical, Block, BlockSummary,
    DecompositionReport,
};
pub use fingerprint::{spectral_fingerprint, Fingerprint};
pub use relations::{check_relations, RelationId, RelationReport};
