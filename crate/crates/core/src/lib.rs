//! Exact algebra for codeword stabilized (CWS) quantum codes over qudits.
//!
//! Pauli operators on `n` qudits of dimension `d` are handled symbolically as a
//! phase exponent together with `Z` and `X` exponent vectors in `Z_d^n`. Sets of
//! operators become matrices over `Z_d`, and every group-theoretic question
//! (group orders, stabilized dimensions, centralizers, whether a CWS code is a
//! stabilizer code) is answered through cardinalities of `Z_d`-modules computed
//! by elementary-operation diagonalization.
//!
//! The [`oracle`] module is an independent dense state-vector implementation
//! used to cross-check every symbolic verdict at small sizes.
//!
//! ```
//! use cwsmod_core::{CwsCode, GeneratorSet, Modulus, PauliOperator};
//!
//! let d = Modulus::new(3).unwrap();
//! let p = |s: &str| PauliOperator::parse(s, d).unwrap();
//! let stabilizer = GeneratorSet::new(vec![p("X1.Z1.I"), p("Z1.X1.Z1"), p("I.Z1.X1")]).unwrap();
//! let code = CwsCode::new(stabilizer, vec![p("I.I.I"), p("Z1X1.Z1.Z2"), p("Z2X1.Z1.Z1")]).unwrap();
//! let cert = code.is_stabilizer_code();
//! assert_eq!((cert.card_rw, cert.card_intersection, cert.ratio), (9, 3, 3));
//! assert!(cert.is_stabilizer);
//! ```

pub mod cws;
pub mod document;
pub mod error;
pub mod oracle;
pub mod pauli;
pub mod stabilizer;
pub mod zmod;

pub use cws::{stabilizer_to_cws, CwsCode, DetectionReport, ErrorVerdict, StabilizerCertificate};
pub use document::{CodeDocument, OperatorSpec};
pub use error::{Error, Result};
pub use pauli::{symplectic_product, PauliOperator, SymplecticVector};
pub use stabilizer::{EnumeratedGroup, GeneratorSet, ValidationReport};
pub use zmod::{Modulus, ZdMatrix, ZdVector, DEFAULT_ENUMERATION_LIMIT};
