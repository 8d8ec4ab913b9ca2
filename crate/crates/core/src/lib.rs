//! Desk-scale laboratory for the Cook–Levin reduction and the parity-counting
//! machine built on top of it.
//!
//! Everything in this crate is a pure function over immutable values and only
//! needs `alloc`. Text formats, JSON reports and the command line live in the
//! companion `tmlab` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod argument;
pub mod kim;
pub mod machine;
pub mod reduction;
pub mod sat;

pub use machine::{
    merge_tables, ComputationHistory, Configuration, Machine, MachineBuilder, MachineError, Move,
    Rule, State, Symbol, TransitionTable,
};
pub use reduction::{
    clause_counts, concatenate, decode_assignment, encode_history, input_part, reduce, run_part,
    Group, LabeledFormula, ReductionError,
};
pub use sat::{solve_bruteforce, solve_dpll, Assignment, CnfFormula, Lit, SolveResult};
