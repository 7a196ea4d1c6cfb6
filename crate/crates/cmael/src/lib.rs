//! Command-line front end for `cmael-core`: deciding formulas, checking
//! models, running corpora, and exporting graphs.

pub mod app;
pub mod corpus;
pub mod dot;
pub mod json;
pub mod run;
