//! Delegation and lobbying: Congress writes a statute with a status quo and a
//! discretion band, an agency proposes a rule after a policy shock, and an
//! interest group lobbies the agency. This crate solves the game in closed
//! form and checks every closed form against brute-force numeric oracles.
//!
//! - [`model`]: the stage game (lobbying effort, proposal, outcome).
//! - [`legislative`]: expected utilities and the optimal statute.
//! - [`oracle`]: quadrature, grid-and-refine search, simulation.
//! - [`statics`]: comparative statics as sign predicates, discretion surfaces.
//! - [`cli`]: the `delegation-lobbying` command-line tool.
//!
//! ```
//! use delegation_lobbying::{legislative::optimal_legislation, model::ModelParams};
//!
//! let params = ModelParams::new(1.0, 1.0, 1.0, 1.0, 0.5, 1.0)?;
//! let law = optimal_legislation(&params);
//! assert_eq!(law.choice.status_quo, 0.5);
//! assert_eq!(law.choice.discretion, 1.0);
//! # Ok::<(), delegation_lobbying::error::ModelError>(())
//! ```

pub mod cli;
pub mod error;
pub mod legislative;
pub mod model;
pub mod oracle;
pub mod statics;

pub use error::ModelError;
pub use legislative::{optimal_legislation, OptimalLegislation};
pub use model::{LegislativeChoice, ModelParams, RegimeInterpretation};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/stage-game.md")]
    mod stage_game {}
    #[doc = include_str!("../../../book/src/legislation.md")]
    mod legislation {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/statics.md")]
    mod statics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
