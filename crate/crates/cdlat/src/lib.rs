//! Finite-group analysis: subgroup lattices, Chermak-Delgado measures, and
//! the density property for CD-subgroups.
//!
//! The pipeline is: build a group ([`catalog`]) as a validated
//! multiplication table ([`group`]), enumerate its full subgroup lattice
//! ([`lattice`]), compute the Chermak-Delgado measure of every subgroup and
//! extract the maximizers ([`measure`]), check the structural properties
//! that must hold ([`properties`]), and decide density ([`density`]).
//! Reports and the DOT emitter live in [`report`] and [`dot`].
//!
//! ```
//! use cdlat::{catalog, lattice, measure, density};
//!
//! let s3 = catalog::parse_spec("S(3)").unwrap().build().unwrap();
//! let l = lattice::enumerate_subgroups(&s3).unwrap();
//! let cd = measure::cd_lattice(&s3, &l);
//! assert_eq!(cd.m_star(), 9);
//! assert!(density::is_dense_cd(&l, &cd).dense);
//! ```

pub mod caps;
pub mod catalog;
pub mod density;
pub mod dot;
pub mod group;
pub mod lattice;
pub mod measure;
pub mod properties;
pub mod report;
pub mod set;
pub mod perm;

pub use caps::Caps;
pub use catalog::{parse_spec, survey_corpus, GroupSpec, Sign, SpecError};
pub use density::{
    classify_density, is_dense_cd, is_dense_cd_capped, verify_theorem_1_1, verify_theorem_1_2,
    verify_zm_chain, DensityVerdict, PreconditionUnmet, SurveyRecord, TheoremClaim, TheoremReport,
    DEFAULT_WITNESS_CAP,
};
pub use dot::hasse_dot;
pub use group::{GroupError, GroupTable, StructureFlags, TableDefect, DEFAULT_ORDER_CAP};
pub use lattice::{
    enumerate_subgroups, enumerate_subgroups_capped, Lattice, LatticeError, DEFAULT_SUBGROUP_CAP,
};
pub use measure::{cd_lattice, cd_measure, measure_image, CdResult};
pub use perm::{parse_generator_file, Permutation};
pub use properties::{
    verify_cd_properties, PropertyCheck, PropertyId, PropertyReport, SubgroupWitness, Witness,
};
pub use report::{analyze_text, Analysis, AnalysisError, AnalysisOptions, AnalysisReport};
pub use set::ElementSet;

// The book chapters double as doctests so the narrative guide can never
// drift from the API. See book/src for the rendered sources.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/building-groups.md")]
    mod building_groups {}
    #[doc = include_str!("../../../book/src/subgroup-lattices.md")]
    mod subgroup_lattices {}
    #[doc = include_str!("../../../book/src/chermak-delgado.md")]
    mod chermak_delgado {}
    #[doc = include_str!("../../../book/src/density.md")]
    mod density {}
    #[doc = include_str!("../../../book/src/cli-and-reports.md")]
    mod cli_and_reports {}
}
