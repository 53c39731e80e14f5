//! Coherent two-atom dynamics: plane-wave propagators, momentum-space
//! integration of finite-beam effects, and the three-pulse protocol.

pub mod density;
pub mod momentum;
pub mod motion;
pub mod propagator;
pub mod protocol;

pub use density::{CompactRho, TwoAtomDensityMatrix};
pub use momentum::{MomentumAmplitudes, MomentumGrid, ThermalMode, TrapSpec};
pub use propagator::{frame_propagator, idle_propagator, plane_wave_matrix, plane_wave_step};
