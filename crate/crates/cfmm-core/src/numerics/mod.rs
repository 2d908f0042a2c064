//! Numerical support: jet (truncated Taylor) arithmetic, bracketed root
//! finding, adaptive Runge-Kutta integration, finite differences, and
//! overflow-safe hyperbolic functions.

pub mod fd;
pub mod hyper;
pub mod jet;
pub mod ode;
pub mod roots;

pub use jet::Jet3;
