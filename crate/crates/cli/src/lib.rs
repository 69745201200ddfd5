//! Front end for `glsv`: the Λ-spec parser, output formats, and the
//! verification-suite orchestrator.

pub mod emit;
pub mod parse;
pub mod run;
pub mod suites;
