//! Text formats: expression parser, germ files, report emission.

pub mod emit;
pub mod germfile;
pub mod parse;

pub use emit::{report_record, Record, SCHEMA_VERSION};
pub use germfile::{parse_rational, ConfigOverrides, GermFile, GermFileError, HypersurfaceFile};
pub use parse::{parse_polynomial, ParseError};
