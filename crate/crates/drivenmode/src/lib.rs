//! Numerical engine for a harmonic mode driven both parametrically (a
//! time-dependent frequency that flattens asymptotically) and by a classical
//! force. The classical scattering problem is solved with Jost boundary
//! conditions; from the resulting trajectory the crate builds the quantum
//! outputs: Bogolyubov coefficients `(u, v)`, the displacement `α`, occupation
//! numbers for several initial states, and the squeezed-coherent-state
//! parameters of the final state.
//!
//! Cross-validation routes: a direct ODE solver ([`jost`]), the closed-form
//! hypergeometric solution for the sech² drive ([`sech`]), and three
//! asymptotic regimes ([`born`], [`abrupt`], [`adiabatic`]). The [`multimode`]
//! module generalizes to `n` coupled modes.

// !(x > 0.0) validations are deliberate (they reject NaN, which x <= 0.0
// lets through); coefficient tables keep their published digits
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod abrupt;
pub mod adiabatic;
pub mod born;
pub mod error;
pub mod jost;
pub mod multimode;
pub mod ode;
pub mod profile;
pub mod quad;
pub mod quantum;
pub mod sech;
pub mod special;

pub use error::{Error, Result};
pub use jost::{ClassicalTrajectory, JostSolution};
pub use profile::{ForceProfile, FrequencyProfile, ProfileSign, TimeGrid};
pub use quantum::{LadderMap, OscillatorState};

/// Complex double, aliased as in the rest of the crate.
pub type C64 = num_complex::Complex64;
