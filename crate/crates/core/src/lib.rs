//! Monotone multi-robot motion planning on grids.
//!
//! In monotone MRMP every robot moves exactly once, start to target, with
//! no intermediate stops, while all other robots stand still. This crate
//! models such instances and provides:
//!
//! - [`grid`]: the workspace model, deterministic breadth-first
//!   pathfinding, and the monotone-plan validator.
//! - [`sat`]: 3-CNF formulas, DIMACS parsing, evaluation, and a brute-force
//!   satisfiability oracle.
//! - [`reduction`]: the deterministic construction of a monotone MRMP
//!   instance from a 3-CNF formula, with full gadget bookkeeping.
//! - [`planning`]: plan synthesis from a satisfying assignment, assignment
//!   extraction from a plan, and a complete monotone-feasibility solver.
//! - [`decoupling`]: decoupled execution sequences, their dimension, and an
//!   exhaustive search for sequences of bounded dimension.
//! - [`reconfig`]: conversion to sliding unit-disc reconfiguration and an
//!   exact slide-plan validator.
//!
//! All types are immutable values after construction and all operations are
//! pure functions, so everything here is safe to use from multiple threads.
//! The crate is `no_std`-compatible (with `alloc`); the companion `monomap`
//! crate carries file formats, rendering, and the command-line interface.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod decoupling;
pub mod grid;
pub mod planning;
pub mod reconfig;
pub mod reduction;
pub mod sat;
