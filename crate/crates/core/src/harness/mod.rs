//! Table loading, batch runs, the exception check over knot tables, and the command line.

pub mod batch;
pub mod cli;
pub mod remark;
pub mod table;

pub use batch::{run_batch, BatchReport, BatchRow};
pub use cli::{run, CliOutput};
pub use remark::{run_bundled_remark_check, run_remark_check, RemarkReport};
pub use table::{load_table, parse_table, Bundled, Table, TableEntry};
