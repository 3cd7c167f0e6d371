//! Commutative monoids, AG-monoids, and the twist `a·b = α(a) + b` that
//! connects them.
//!
//! Every AG-monoid (a left invertive groupoid `(xy)z = (zy)x` with a left
//! identity) arises from exactly one commutative monoid together with an
//! automorphism `α` satisfying `α² = 1`, and two such twists are isomorphic
//! exactly when their automorphisms are conjugate in the automorphism group
//! of the monoid. This crate enumerates commutative monoids up to
//! isomorphism, computes their automorphism groups, and counts or lists
//! the resulting AG-monoids, with an independent direct search as a
//! cross-check.
//!
//! Elements are the indices `0..n`; identities always sit at index 0.

pub mod automorphisms;
pub mod canon;
pub mod enumeration;
pub mod error;
pub mod perm;
pub mod storage;
pub mod table;
pub mod twist;

pub use automorphisms::{automorphism_group, AutomorphismGroup, InvolutionClasses};
pub use canon::{canonical_form, is_canonical, tables_isomorphic, Canonizer};
pub use enumeration::{
    enumerate_ag_monoids_bruteforce, enumerate_ag_monoids_via_construction,
    enumerate_commutative_monoids, table1_row, EnumerationOptions, EnumerationResult, Progress,
    Table1Row, MAX_ORDER,
};
pub use error::{Error, PairViolation};
pub use perm::Permutation;
pub use storage::{
    decode_table, encode_table, format_cycle_notation, parse_cycle_notation, read_db, write_db,
    TableDatabase,
};
pub use table::{CayleyTable, StructureKind, Witness};
pub use twist::{
    ag_isomorphic_via_monoid, count_ag_monoids_from_monoid, is_ag_monoid, twist, untwist,
    TwistCount, TwistPair,
};
