//! Three-compartment model of students moving between federal, state and
//! private universities, with strike scenarios expressed as parameter masks.
//!
//! ```
//! use strikesim::{model::ModelParameters, scenario::BuiltinScenario, stability};
//!
//! let params = ModelParameters { d: 0.02, lambda_p: 0.25, alpha_sp: 0.3, ..Default::default() };
//! let masked = strikesim::scenario::apply_mask(&params, &BuiltinScenario::Theorem23.mask()).unwrap();
//! let report = stability::analyze(&masked).unwrap();
//! assert_eq!(report.verdict, stability::Verdict::AsymptoticallyStable);
//! ```
//!
//! The guide under `book/` walks through each module; its code listings are
//! compiled and run as doctests of this crate.

pub mod cubic;
pub mod equilibrium;
pub mod error;
pub mod io;
pub mod linalg;
pub mod model;
pub mod scenario;
pub mod simulator;
pub mod stability;

pub use error::{Error, Result};
pub use model::{ModelParameters, SimulationConfig, State};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/equilibrium.md")]
    mod equilibrium {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
    #[doc = include_str!("../../../book/src/data-and-cli.md")]
    mod data_and_cli {}
}
