//! Interactive query loop over the standard predicates.

mod registry;
mod session;
mod syntax;

pub use registry::{
    IntoPredicate, Predicate, PredicateRegistry, Query, QueryError, RegistryError, Surface,
    SurfaceType, TypeTable,
};
pub use session::{
    repl, repl_with, run_interactive, run_script, ExitStatus, Options, SCRIPT_MAX_STEPS,
};
pub use syntax::{parse, parse_term, ParseError, QueryExpr, SurfaceTerm, MAX_INT_LITERAL};
