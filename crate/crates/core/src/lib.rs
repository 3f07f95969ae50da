//! Statically typed logic programming embedded in Rust.
//!
//! Payload types get logic variables at every child position by wrapping
//! children in [`Term`]. Goals are built from unification constraints and
//! connectives, and solved lazily by depth-first search with cuts.
//!
//! ```
//! use typed_logic::prelude::*;
//! use typed_logic::solve;
//!
//! let answers: Vec<String> = solve(&plus(1, "x", 5)).map(|s| s.to_string()).collect();
//! assert_eq!(answers, ["x = 4"]);
//! ```

extern crate self as typed_logic;

pub mod derive;
pub mod goal;
pub mod prelude;
pub mod repl;
pub mod solver;
pub mod term;

pub use derive::{DatatypeDescriptor, DeriveError, LogicCapability, Structure, TypeRegistry};
pub use goal::{
    all, any, conj, cut_then, disj, eq, exists, fail, is_ground, neg, neq, scope, succeed, Goal,
};
pub use solver::{
    find_all, find_all_n, holds, solve, solve_from, BudgetExhausted, Solution, Solutions,
    SolverState,
};
pub use term::{unify, AnyTerm, Bindings, Clash, Logic, Term, TypeTag, VarId};
pub use typed_logic_derive::Structure;
