//! Exact combinatorics of partition-free hypergraphs and partial sign
//! families, with the series constructions whose behavior they bound.
//!
//! The library has three layers:
//!
//! - combinatorial objects and exhaustive checkers: [`hypergraph`],
//!   [`families`], [`trees`];
//! - exact search and verification: [`solver`] (branch-and-bound over
//!   incidence-type profiles plus randomized witness search) and [`counting`]
//!   (arbitrary-precision identities, audits, and bounds tables);
//! - series constructions evaluated in exact rational arithmetic: [`series`]
//!   (block-structured sign patterns and their partial-sum audits) and
//!   [`tame`] (sign-homogeneous index-set certificates on truncations).
//!
//! All results are exact: searches are exhaustive within stated caps, and
//! every real-valued bound goes through certified rational enclosures.
//!
//! ```
//! use std::time::Duration;
//!
//! // The largest 2-edge-bounded example has three vertices...
//! let res = hyperpart::exact_h(2, Duration::from_secs(60)).unwrap();
//! assert_eq!((res.value, res.proved_optimal), (3, true));
//!
//! // ...and expands to the hypergraph whose largest partition is 2.
//! let h = hyperpart::expand_witness(&res.witness).unwrap();
//! let (size, witness) = h.max_partition().unwrap();
//! assert_eq!(size, 2);
//! assert!(witness.validate(&h));
//!
//! // The chain family of the matching tree evades 3-coordinate agreement.
//! let family = hyperpart::build_bounding_family(2, None);
//! assert!(family.is_bounding(3).unwrap());
//! ```

pub mod counting;
pub mod families;
pub mod hypergraph;
pub mod series;
pub mod solver;
pub mod tame;
pub mod trees;

pub use counting::{derive_tables, k_sequence, lower_bound_audit, upper_bound_h, BoundsRow};
pub use families::{Family, SignFunction};
pub use hypergraph::{Hypergraph, PartitionWitness, VertexSet};
pub use solver::{exact_h, expand_witness, search_witness, ExactH, TypeProfile};
pub use trees::{build_bounding_family, build_t, RootedTree};
