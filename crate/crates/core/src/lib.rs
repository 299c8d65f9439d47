//! Exact algebra for small permutation groups: stabilizer chains, subgroup and normal
//! lattices, quotients, chief factors, the Π-property and the embedding properties
//! that imply it.
//!
//! Composition is left to right: `a * b` applies `a` first. Points are 0-based.

mod chain;
mod embeddings;
mod error;
pub mod families;
mod group;
mod lattice;
mod perm;
mod pi;
mod quotient;
mod structure;
mod subgroup;
mod table;

pub use chain::{ChainElements, StabChain};
pub use embeddings::{
    is_c_normal, is_c_sharp_normal, is_cap_subgroup, is_permutable, is_pi_normal, is_s_permutable,
    is_s_semipermutable, is_ss_quasinormal, is_uc_normal, EmbeddingChecker,
};
pub use error::{GroupError, Result};
pub use group::{group_from_generators, Limits, PermGroup, SubgroupKey};
pub use lattice::{
    enumerate_normal_subgroups, enumerate_subgroups, find_complement, normal_lattice,
    subgroup_lattice, NormalLattice, SubgroupLattice,
};
pub use perm::{compose, identity, inverse, Permutation, MAX_DEGREE};
pub use pi::{
    exists_family_with_hypothesis, family_hypothesis_holds, md_families, satisfies_pi_property,
    MdFamilies, MdFamily, PiChecker, PiFactorRecord, PiReport, SylowFamilies,
};
pub use quotient::{build_quotient, QuotientContext};
pub use structure::{
    chief_factors, chief_series, frattini_of_p_group, generator_rank, is_p_nilpotent, is_p_soluble,
    is_p_supersoluble, is_pi_number, is_power_of, is_prime, maximal_subgroups_of_p_group, o_p,
    o_p_prime, o_upper_p, p_part, pi_of, quotient_is_p_nilpotent, quotient_is_p_soluble,
    quotient_is_p_supersoluble, sylow_subgroup, u_hypercenter, ChiefFactor, PrimeSet,
};
pub use subgroup::{
    center, centralizer, core, intersection, is_subnormal, join, normal_closure, normalizer,
    product_is_subgroup, Subgroup,
};
