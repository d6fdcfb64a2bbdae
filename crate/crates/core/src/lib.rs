//! Chermak–Delgado lattices of small finite groups.
//!
//! Groups are Cayley tables ([`Group`]); subgroups are bit-sets over the
//! element indices ([`Subgroup`]). On top of that sit subgroup lattices
//! ([`SubgroupLattice`]), the Chermak–Delgado measure and lattice
//! ([`chermak_delgado`]), and executable checks of the structure results
//! for groups whose Chermak–Delgado lattice is the interval `[G/Z(G)]`
//! ([`theorems`]).

pub mod arith;
mod bitset;
pub mod chermak_delgado;
pub mod cli;
pub mod constructors;
pub mod corpus;
pub mod error;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod spec;
pub mod subgroup;
pub mod theorems;

pub use bitset::ElementSet;
pub use chermak_delgado::{cd_lattice, cd_report, centralizer_lattice, measure, CdReport, GroupAnalysis};
pub use constructors::construct;
pub use error::{Error, ErrorClass, Result};
pub use group::{permutation_closure, DirectProduct, Group, Limits};
pub use lattice::SubgroupLattice;
pub use perm::Permutation;
pub use spec::{parse_spec, ExtraspecialType, GroupSpec};
pub use subgroup::{
    all_subgroups, commutator_subgroup, derived_subgroup, generated, is_nilpotent, quotient, sylow_decomposition,
    upper_central_series, Quotient, Subgroup,
};
