//! Command line front end for the `qcurv` library.

pub mod commands;
pub mod parse;

pub use commands::{run, Cli, Command};
pub use parse::{parse_matrix, parse_qparam, parse_ratfun, parse_rational, parse_scaled, ParseError};
