//! Sweeps over shapes and suites, fuzz harnesses, tables, and the record
//! cache behind the command-line tool.

mod cache;
mod fuzz;
mod sweep;
mod table;

pub use cache::{content_key, Cache, CODE_VERSION};
pub use fuzz::{run_fuzz, FuzzReport, FuzzSuite};
pub use sweep::{run_sweep, summary, IndexKey, ResultRecord, Status, Suite, SweepOutcome, SweepSpec};
pub use table::{csv_document, emit_table, quad_cells, Format, Table, TableKind};

/// Version of every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;
