//! Command implementations behind the `ropelength` binary.
//!
//! Each command returns a serializable report; `render` turns reports into text.

pub mod analyze;
pub mod constants;
pub mod error;
pub mod input;
pub mod oracle_check;
pub mod render;

pub use analyze::{cmd_analyze, AnalysisReport, AnalyzeOptions, NONTRIVIAL_THRESHOLD};
pub use constants::{cmd_constants, ConstantsReport};
pub use error::{CliError, Result};
pub use input::{format_knot, parse_knot_file, parse_knot_text, read_knot_file, KnotFile};
pub use oracle_check::{cmd_oracle_check, OracleCheckReport};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;
