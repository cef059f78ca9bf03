//! Exact computational algebra for products of commutator ideals.
//!
//! The crate provides the machinery needed to verify, by exact linear
//! algebra at desk scale, containment and non-containment statements about
//! products `T^(m1)(A) ... T^(mk)(A)` of commutator ideals in unital
//! associative algebras:
//!
//! * [`scalar`] — exact field arithmetic over the rationals and prime fields;
//! * [`exactlin`] — sparse vectors, echelon bases and membership oracles,
//!   with a bit-packed fast path over GF(2);
//! * [`freealg`] — the free associative algebra: words, polynomials,
//!   left-normed commutators, an expression parser, and multilinear spanning
//!   sets of `T^(n)` and of products `T^(m1)...T^(mk)`;
//! * [`algcore`] — finite-dimensional algebras given by basis and product
//!   rule, tensor products, and lower-central-chain computations certifying
//!   Lie nilpotency class;
//! * [`grassmann`] — finite Grassmann algebras `E_s` and the characteristic
//!   ≠ 2 witness construction;
//! * [`grouplie`] — the class-2 group `G_r` with exponent-2 generators, its
//!   group algebra over GF(2), the ideal `I_r`, quotients, and the
//!   characteristic-2 witness construction;
//! * [`verifier`] — a registry of named, reproducible scenarios binding each
//!   verified statement to a machine-readable report;
//! * [`oracle`] — naive, independently-coded reference implementations
//!   (dense elimination, transposition-counting signs) used to cross-check
//!   the optimized paths.

pub mod algcore;
pub mod error;
pub mod exactlin;
pub mod freealg;
pub mod grassmann;
pub mod grouplie;
pub mod oracle;
pub mod params;
pub mod scalar;
pub mod verifier;

pub use error::{Error, Result};
pub use scalar::{FieldSpec, Scalar};
