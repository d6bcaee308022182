//! Möbius functions on subgroup lattices of finite permutation groups and
//! the (μ, λ) comparison between subgroup and conjugacy-class posets.

pub mod cache;
pub mod error;
pub mod families;
pub mod field;
pub mod group;
pub mod lattice;
pub mod moebius;
pub mod perm;
pub mod property;
pub mod zoo;

pub use error::{Error, Result};
pub use group::{Group, Rank, DEFAULT_ELEMENT_CAP};
pub use lattice::{ClassPoset, SubgroupLattice, DEFAULT_SUBGROUP_CAP};
pub use moebius::{moebius_integer, moebius_table, MoebiusTable};
pub use perm::Permutation;
pub use property::{check_property, PropertyReport};
pub use zoo::{build_group, parse_spec, GroupSpec};
