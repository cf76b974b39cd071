//! Exact decomposition of Riemann-Roch representations for finite group
//! actions on compact Riemann surfaces.
//!
//! Given a group action described combinatorially — branching data
//! (gamma; m_1, ..., m_r) plus a generating vector — and a G-invariant
//! effective non-special divisor D, this crate computes the multiplicity of
//! every complex irreducible representation in the G-module L_G(D) of the
//! Riemann-Roch space, along with the intermediate objects: analytic and
//! homology multiplicities, the ramification module, and the equivariant
//! degree. All arithmetic is exact, over arbitrary-precision rationals and
//! cyclotomic fields; nothing is ever rounded, and every result is
//! cross-checkable through a second independent computation path.
//!
//! # Conventions
//!
//! * Group elements are indices 0..n-1 with 0 the identity.
//! * Irreducibles are labeled V_0, V_1, ... in table row order, V_0 trivial.
//! * Conjugacy classes are ordered by minimal element index.
//! * For a stabilizer <c> of order m, the ramification character omega sends
//!   c itself to zeta_m (or zeta_m^(-1) under the conjugate convention flag).
//!   Geometric data recorded with rotation zeta^e should supply c^(e') with
//!   e e' = 1 mod m instead.
//!
//! # Entry points
//!
//! * [`families`] — built-in actions (Klein quartic, Fermat curves, cyclic
//!   covers of the line).
//! * [`cover::GroupAction::new`] — validate an arbitrary action.
//! * [`equivariant::decompose`] — the Riemann-Roch decomposition, with
//!   [`equivariant::crosscheck_lemma`] as the independent second path.
//! * [`io`] — the JSON file formats; [`cli`] — the command-line front end.

pub mod chartab;
pub mod cli;
pub mod cover;
pub mod divisor;
pub mod equivariant;
pub mod error;
pub mod exact;
pub mod families;
pub mod group;
pub mod io;

pub use error::{Error, ErrorKind, Result};
