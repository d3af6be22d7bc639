//! Exact truncated-series arithmetic, partition combinatorics, a charged
//! free-fermion Fock space, and checkers for the melting crystal model and
//! its q-difference Toda structure.

pub mod crystal;
pub mod error;
pub mod fock;
pub mod params;
pub mod partitions;
pub mod qtoda;
pub mod report;
pub mod schur;
pub mod series;

pub use error::{Error, Result};
pub use params::{Normalization, QParams};
pub use partitions::{Partition, PlanePartition};
pub use report::{ReportBuilder, Verdict, VerificationReport};
pub use series::{Rational, Ring, SeriesContext, TruncSeries};
