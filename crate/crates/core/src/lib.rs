//! Symplectic tomograms of free wavepackets.
//!
//! A tomogram `W(X|mu, nu)` is the probability density of the quadrature
//! `X = mu q + nu p`. Its defining integral has the same kernel as the free
//! particle propagator once `tau/m = nu/mu` and `x = X/mu`, so every state
//! whose free evolution is known in closed form has a closed-form tomogram.

pub mod error;
pub mod frames;
pub mod infotheory;
pub mod multiparticle;
pub mod parallel;
pub mod phasespace;
pub mod quad;
pub mod specfun;
pub mod states;
pub mod tomography;

pub use error::{Error, Result};
