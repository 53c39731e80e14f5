//! Incoherent losses: scattering rates, the per-channel dissipator, and the
//! first-order increment ledger applied along a coherent trajectory.

pub mod dissipator;
pub mod ledger;
pub mod quadrature;
pub mod rates;

pub use dissipator::{Channel, Conditioning, Dissipator, LevelRule};
pub use ledger::{apply_loss_ledger, compute_increments, IncrementLedger, LedgerContext, LedgerPlan, LossOutcome};
pub use rates::{LossRates, ScatteringModel};
