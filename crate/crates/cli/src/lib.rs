//! Front end for the `gorext` engine: a small script language for declaring
//! rings and modules and running scans, resolutions, checks and random
//! searches, with JSON and table reports.

pub mod run;
pub mod script;

pub use run::{exit, run_script, run_source, FailKind, Options, RunError, RunReport};
pub use script::{parse, Format, ParseError, Script};
