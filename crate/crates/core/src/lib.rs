//! Combinatorics of permutahedra, associahedra and biassociahedra over GF(2).
//!
//! Faces of the permutahedron `P_n` are ordered set partitions
//! ([`OrderedPartition`]). On top of them the crate builds
//!
//! - the permutahedral diagonal `Δ_P` and its pushforward `Δ_K`
//!   ([`diagonal`], [`trees`]),
//! - free matrad terms with a canonical wiring-graph normal form ([`terms`]),
//! - the differential of the generators `θ_m^n` and the cell complexes
//!   `KK_{n,m}` ([`hinf`]),
//! - the posets `PP_{n,m}` and their quotients ([`posets`]).
//!
//! ```
//! use biassoc::{diagonal, OrderedPartition};
//!
//! let top: OrderedPartition = "12".parse().unwrap();
//! let terms: Vec<String> = diagonal::delta_p(&top).iter().map(|t| t.to_string()).collect();
//! assert_eq!(terms, ["1|2 ⊗ 12", "12 ⊗ 2|1"]);
//! ```

pub mod chain;
pub mod cli;
pub mod diagonal;
pub mod error;
pub mod formats;
pub mod gf2;
pub mod hinf;
pub mod partition;
pub mod posets;
pub mod terms;
pub mod trees;

pub use chain::Z2Chain;
pub use error::{Error, Result};
pub use partition::OrderedPartition;
pub use terms::Term;
pub use trees::PlanarTree;
