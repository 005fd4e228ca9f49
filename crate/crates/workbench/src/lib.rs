//! Script parsing, task dispatch and rendering for the tight-closure workbench.

pub mod doc;
pub mod num;
pub mod render;
pub mod runner;
pub mod script;
pub mod text;

/// JSON schema of [`doc::ResultDocument`].
pub const SCHEMA: &str = include_str!("../schema/result-document.schema.json");
