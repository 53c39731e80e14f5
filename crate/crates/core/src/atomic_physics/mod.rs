//! Species data, the per-atom level scheme, and the optical couplings of the
//! two-photon ladder `5s -> 5p(P1/2) -> ns`.

pub mod fields;
pub mod levels;
pub mod species;

pub use fields::{
    dipole_factor, effective_two_photon_rabi, light_shift, light_shifts, scattering_rates, single_photon_rabi,
    BeamMode, Couplings, DriveField, GeometryConfig,
};
pub use levels::{GeometryKind, LevelScheme, Manifold, ZeemanState};
pub use species::{SpeciesData, SpeciesFile};
