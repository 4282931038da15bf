//! Finite-dimensional representations of the nonstandard q-deformed algebra
//! `U'_q(so_n)` for real `q > 1`.
//!
//! The crate builds the generator matrices `I_{k,k-1}` of the classical
//! representations and of the nonclassical ones (labelled by a half-integral
//! weight and a sign vector) on Gel'fand-Tsetlin bases, and checks them: the
//! defining relations, irreducibility through the commutant, inequivalence
//! through similarity invariants, and the splitting of the auxiliary
//! representation `T'` into nonclassical pieces.
//!
//! ```
//! use qsorep::prelude::*;
//!
//! let w = HighestWeight::new(4, parse_halves("3/2,1/2")?, Flavor::Nonclassical)?;
//! let spec = RepSpec::nonclassical(w, SignVector::new(4, vec![1, -1, 1])?, QParam::new(1.2)?)?;
//! let rep = build(&spec)?;
//! assert!(check_relations(&rep, 1e-9)?.pass);
//! assert_eq!(commutant_dimension(&rep, 1e-8)?, 1);
//! # Ok::<(), qsorep::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod patterns;
pub mod qnum;
pub mod repmatrix;
pub mod suite;
pub mod verify;

pub use error::{Error, Result};

/// The types and functions most programs need.
pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::patterns::{enumerate, parse_halves, Flavor, GtPattern, Half, HighestWeight, SignVector};
    pub use crate::qnum::QParam;
    pub use crate::repmatrix::{build, RepKind, RepMatrices, RepSpec};
    pub use crate::verify::{
        check_relations, commutant_dimension, decompose_prime, diagonal_similarity, identify_blocks,
        match_block_to_nonclassical, spectral_fingerprint,
    };
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/qnumbers.md")]
    mod qnumbers {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/nonclassical.md")]
    mod nonclassical {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
