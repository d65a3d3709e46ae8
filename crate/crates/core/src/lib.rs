//! Unfitted space-time finite elements for the time-dependent two-phase
//! Stokes interface problem.
//!
//! Velocity is continuous P2 in space and discontinuous P_q in time (one
//! slab at a time); pressure is P1 in space, optionally enriched by phase
//! indicators on the prisms cut by a moving level-set interface.

pub mod assembly;
pub mod cases;
pub mod error;
pub mod error_analysis;
pub mod experiment;
pub mod geom;
pub mod lab;
pub mod mesh;
pub mod small;
pub mod solver;
pub mod spaces;
pub mod sparse;

pub use error::{Error, Result};

/// The two fluids. `Pos` is `phi > 0` (phase 1, outer), `Neg` is `phi < 0`
/// (phase 2, the drop). Coefficient arrays are indexed by `phase as usize`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Phase {
    Pos = 0,
    Neg = 1,
}

impl Phase {
    pub const BOTH: [Phase; 2] = [Phase::Pos, Phase::Neg];

    pub fn of(value: f64) -> Phase {
        if value < 0.0 {
            Phase::Neg
        } else {
            Phase::Pos
        }
    }

    pub fn other(self) -> Phase {
        match self {
            Phase::Pos => Phase::Neg,
            Phase::Neg => Phase::Pos,
        }
    }
}
