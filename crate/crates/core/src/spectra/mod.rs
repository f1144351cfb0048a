//! Parameter sweeps, pole search and export of spectral maps.

mod config;
mod export;
mod poles;
mod sweep;

pub use config::{AxisKind, ModelName, Observable, OutputFormat, PointSpec, RunConfig};
pub use export::{read_csv, read_structured, write_csv, write_structured, write_table, LongRow, CSV_HEADER};
pub use poles::{find_poles, find_poles_with, PoleSearch};
pub use sweep::{run_sweep, run_sweep_with_threads, Metadata, ObservableGrid, PointFailure, PointModel, SpectrumTable};
