pub mod commands;
pub mod io;
pub mod repro;
pub mod suites;
