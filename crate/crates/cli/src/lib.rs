//! Library half of the `solvcert` command: wire formats, tables and rendering.

pub mod doc;
pub mod render;
pub mod spec;
pub mod table;
