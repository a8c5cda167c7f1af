//! Finite bounded lattices, filters, vee-closed sets and S-filters, plus an
//! exhaustive verification harness over a catalog of small lattices.
//!
//! The crate is organized around immutable values: a [`Lattice`] precomputes
//! its order and meet/join tables at construction; filters and vee-closed
//! sets are validated single-word bit sets tied to their lattice. The
//! [`verify`] module quantifies the structural statements about S-filters
//! over a generated catalog and hunts for counterexamples when hypotheses
//! are dropped.

pub mod doc;
pub mod filter;
pub mod generate;
pub mod hom;
pub mod lattice;
pub mod product;
pub mod quotient;
pub mod sfilter;
pub mod subset;
pub mod verify;

pub use doc::{emit_dot, load_lattice, save_lattice, LatticeDoc};
pub use filter::{
    all_filters, filter_join, generate_filter, is_filter, is_maximal_filter, is_prime_filter,
    min_primes_over, residual_elem, residual_filter, FilterError, FilterSet,
};
pub use generate::{
    boolean, chain, default_catalog, divisor_lattice, downset_lattice, named, random_poset,
    CatalogEntry, Provenance, DEFAULT_CATALOG_SEED,
};
pub use hom::{all_homs, image_filter, kernel, make_hom, preimage_filter, HomError, LatticeHom};
pub use lattice::{lattice_from_covers, BuildError, Elem, Lattice, LatticeFlags, Poset};
pub use product::{product, product_s_filter_check, ProductError, ProductLattice};
pub use quotient::{quotient, quotient_s_filter, QuotientError, QuotientLattice};
pub use sfilter::{
    all_s_filters, all_vee_closed_sets, check_ghasem_equivalences, check_min_primes_s,
    check_pair_characterization, find_prime_s_filter_containing, intersect_s_filters,
    is_s_complete, is_s_filter, is_s_vee_closed, is_vee_closed, maximal_s_filters,
    prime_avoidance_check, s_complete_decomposition, saturate, smallest_s_filter,
    AvoidanceVerdict, GhasemTriple, PairCharacterization, SFilterError, VeeClosedSet,
};
pub use subset::Subset;
pub use verify::{
    hunt_counterexample, run_theorem_suite, TheoremId, VerificationReport, VerifyError, Witness,
};
