//! Exact Riemann solvers for the zero-pressure transport equations, their
//! single-parameter flux perturbation, and the two-parameter isentropic
//! flux approximation, plus a limit laboratory that follows the solutions
//! as the perturbation vanishes: delta shocks emerge from colliding data,
//! vacuum from spreading data.
//!
//! All types are immutable values and all operations are pure functions,
//! safe to call concurrently.

pub mod error;
pub mod isentropic;
pub mod limit_lab;
mod pairing;
pub mod perturbed;
pub mod profile;
pub mod quad;
pub mod roots;
pub mod state;
pub mod testfn;
pub mod transport;
pub mod wave;

pub use error::{Error, Result};
pub use isentropic::{IntermediateState, Region, VacuumThreshold};
pub use profile::{ProfileFlag, ProfileSample};
pub use state::{FluxParams, State, SystemKind, REL_TOL};
pub use transport::DeltaShockData;
pub use wave::{Family, RiemannSolution, Wave};
