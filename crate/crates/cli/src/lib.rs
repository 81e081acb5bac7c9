//! Command-line front end for `fundseq-core`: JSON documents, seeded random
//! instances, the registered property suites and command dispatch.

pub mod app;
pub mod gen;
pub mod io;
pub mod suites;
