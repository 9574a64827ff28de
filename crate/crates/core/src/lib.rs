//! Zeckendorf-type numeration systems and their summand statistics.
//!
//! The crate covers positive linear recurrence sequences (PLRS), their legal
//! decompositions, Zeckendorf and far-difference representations of integers,
//! and the exact distribution of the number of summands. Every count is an
//! arbitrary-precision integer and every probability an exact rational;
//! floats only appear when reporting against the Gaussian limit.
//!
//! The crate is `no_std` and needs only `alloc`. IO, file formats and the
//! command-line front end live in the `zeck` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod combinatorics;
pub mod convert;
pub mod decompose;
pub mod gaussian;
pub mod oracle;
pub mod quad;
pub mod sequences;

pub use combinatorics::{
    binom, joint_count, joint_table, mean_closed, script_e, stars_and_bars, variance_closed,
    weighted_geom, zeck_count, zeck_density, DensityTable, ExactField, JointTable,
};
pub use decompose::{
    decompose, fardiff, fardiff_valid, is_legal, reconstruct, summand_count, zeckendorf,
    DecomposeError, Decomposition, Sign, SignedDecomposition, SignedTerm,
};
pub use gaussian::{
    exact_moments, fardiff_stats, gauss_profile, stirling_f, Convention, FardiffSource,
    FardiffStats, GaussError, GaussFit, GaussRow, MomentReport, StirlingFactors,
};
pub use oracle::{
    empirical_density, empirical_joint, enumerate_fardiff, enumerate_legal, verify_bijection,
    BijectionReport, EnumLimits, OracleError,
};
pub use quad::{QuadError, QuadRat};
pub use sequences::{
    binet_estimate, fardiff_s, fib, make_plrs, terms, FardiffThresholds, PlrsSpec,
    SequenceCache, SpecError,
};
