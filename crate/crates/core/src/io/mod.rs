//! Matrix files, seeded instance generation and report serialization.

pub mod generate;
pub mod matrix_market;
pub mod report;

pub use generate::{generate, Ensemble, GeneratorSpec};
pub use matrix_market::{
    read_matrix_market, write_hermitian, write_matrix_market, MarketMatrix, MatrixMarketError,
};
pub use report::{MatrixDescriptor, Metadata, ReportBody, ReportDocument, SCHEMA_VERSION};
