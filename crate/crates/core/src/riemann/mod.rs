//! Numerical interface fluxes and the exact Riemann solver.

mod exact;
mod flux;

pub use exact::{exact_riemann, ExactRiemann};
pub use flux::{glf_flux, hllc_flux, physical_flux, wave_speeds, FluxVector, WaveSpeeds};
