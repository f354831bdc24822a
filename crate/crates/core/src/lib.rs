//! Super quantum discord (weak-measurement discord) and quantum discord of
//! two-qubit X-states.
//!
//! - [`qstate`]: X-state validation, correlation parameters, spectra, entropies.
//! - [`weakmeas`]: weak measurement operators and the conditional ensemble.
//! - [`sqd`]: minimization over measurement directions, discord values and
//!   the Werner / Bell-diagonal closed forms.
//! - [`channels`]: local bit-flip channel on qubit B.
//! - [`oracle`]: brute-force reference computed by dense operator algebra.
//! - [`cli`]: command-line front end producing CSV sweeps.

pub mod channels;
pub mod cli;
pub mod error;
pub mod optim;
pub mod oracle;
pub mod qstate;
pub mod sqd;
pub mod weakmeas;

pub use error::{Branch, Error, Result};
pub use qstate::{ComplexScalar, CorrelationParams, XState};
pub use sqd::{quantum_discord, super_discord, MinimizerConfig, SQDResult};
pub use weakmeas::{MeasurementDirection, WeakStrength};
