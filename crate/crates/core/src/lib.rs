//! Onset and transition analysis for Boussinesq magnetoconvection in the box
//! (0,L1)×(0,L2)×(0,1) with free-slip walls and a vertical imposed field.
//!
//! The pieces, bottom up:
//!
//! * [`params`] and [`stability`]: the per-mode characteristic cubic and exact
//!   lattice minimization of the steady and oscillatory Rayleigh thresholds.
//! * [`transition`]: the cubic center-manifold coefficients for steady onset
//!   (single rolls, rectangles, hexagonal pairs) and the Hopf coefficient for
//!   oscillatory onset.
//! * [`dynamics`]: the reduced amplitude ODEs, their steady states and a
//!   fixed-step RK4 integrator.
//! * [`fields`]: separable eigenfields and Gauss–Legendre quadrature of the
//!   trilinear form, used to check every closed-form inner product.
//! * [`scan`] and [`cli`]: parameter sweeps and the command front end.
//!
//! Runnable examples live in `examples/`; `cargo run --example critical_onset`
//! is a good place to start.

pub mod cli;
pub mod cubic;
pub mod dynamics;
pub mod error;
pub mod fields;
pub mod output;
pub mod params;
pub mod quadrature;
pub mod scan;
pub mod stability;
pub mod transition;

pub use error::{Error, Result};
pub use params::{admissible_indices, wave_numbers, BoxGeometry, FluidParams, ModeIndex, WaveNumbers};
pub use stability::{critical_rayleigh, CriticalResult, OnsetKind};
