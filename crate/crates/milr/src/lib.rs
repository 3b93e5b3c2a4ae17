//! Test-time latent refinement for a small autoregressive text+image generator.
//!
//! The crate is organized around five subsystems:
//!
//! - [`gridworld`]: a synthetic instruction/grid domain with an exact,
//!   programmatic reward oracle (tasks, plans, grids, corpora).
//! - [`model`]: a miniature decoder-only transformer that generates a textual
//!   plan followed by a fixed-length grid token sequence, trained from
//!   scratch, with a latent tap after the final layer norm so that decoding
//!   a latent is a single head application.
//! - [`engine`]: the test-time optimizer. It selects prefix latents, estimates
//!   a score-function (REINFORCE) gradient from a single sampled decode, and
//!   ascends with Adam until a reward threshold or a step budget is hit.
//! - [`rewards`]: pluggable reward backends (exact oracle, model
//!   self-likelihood, mixed sub-checkers, thresholded views, offline replay).
//! - [`bench`]: a seeded benchmark harness producing method-by-category
//!   tables, ablations, sweeps and diagnostics as deterministic CSV/JSON.
//!
//! The `milr` binary (see [`cli`]) wires these together behind the
//! `corpus` / `train` / `milr` / `bench` / `sweep` subcommands. The library
//! surface is the primary interface; `examples/` holds one runnable example
//! per capability.

pub mod bench;
pub mod cli;
pub mod engine;
pub mod gridworld;
pub mod model;
pub mod rewards;

pub use engine::{milr_run, Episode, MilrConfig, SelectionMode, StopReason, Strategy};
pub use gridworld::{Category, GridSpec, TaskSpec, TrainingTriple};
pub use model::{Model, ModelConfig, Weights};
pub use rewards::{RewardBackend, RewardScore};
