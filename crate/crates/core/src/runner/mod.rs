//! Configuration, parameter sweeps and output files of the command-line runner.

pub mod config;
pub mod model;
pub mod output;
pub mod sweep;

pub use config::{ChannelConfig, RunConfig};
pub use model::{load_species, GateModel, GateOutput, PreparedGate, SweepPoint};
pub use output::write_outputs;
pub use sweep::{run_point, run_sweep, sweep_points, Analysis, PointData, PointResult};
