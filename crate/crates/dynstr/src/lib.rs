//! Dynamic string queries over edited strings.
//!
//! The crate keeps static indexes over a frozen base text and answers queries on
//! the edited text through a fragment representation of it (see [`ksub`]).
//! Four problems are supported under substitutions, insertions and deletions:
//! longest common substring of two strings, longest repeat, longest palindrome
//! and longest Lyndon substring (with the full Lyndon factorization).
//!
//! Positions in the library API are 0-based and intervals are inclusive unless a
//! type says otherwise. Edit operations ([`ksub::EditOp`]) use 1-based positions,
//! matching the script format of the command-line tool.

pub mod core_index;
pub mod decremental;
pub mod dynamic_lcs;
pub mod error;
pub mod hia;
pub mod internal_queries;
pub mod ksub;
pub mod lyndon;
pub mod oracle;
pub mod palindromes;
pub mod range_structures;
pub mod repeats;

pub use error::{Error, Result};

/// Symbol type used by every index. Input bytes are shifted above the reserved
/// sentinel codes, see [`core_index::text`].
pub type Sym = u32;
