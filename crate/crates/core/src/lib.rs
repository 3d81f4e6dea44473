//! Words, normal forms, snowflake words and conjugacy certificates for the
//! groups `B_pq`, `B_pq+` and the central extension `B̃_pq+`.

pub mod conjugacy;
pub mod cyclic;
pub mod engine;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod snowflake;
pub mod words;
pub mod zeta;

pub use engine::{canonicalize, z_exponent, CanonicalElement, GroupKind, GroupParams, TPoint};
pub use error::{Error, ParseError, Result};
pub use words::{max_root, parse_word, Generator, Letter, Word};
