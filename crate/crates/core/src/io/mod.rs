//! Problem files, printing and run reports.

mod parse;
mod print;
mod report;

pub use parse::{
    default_ordering, parse_permutation, parse_poly, parse_problem, parse_problem_in, parse_var, ProblemFile,
    SymmetricBlock,
};
pub use print::{print_poly, print_term};
pub use report::{print_ring, serialize_basis, ConfigEcho, RunReport};
