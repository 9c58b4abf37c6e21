//! Finite P-graphs, their filter and graph-morphism path spaces, the shift
//! action on both, and the semidirect product groupoids they generate.

pub mod catalog;
pub mod degree;
pub mod filters;
pub mod graph_file;
pub mod groupoid;
pub mod morphisms;
pub mod pgraph;
pub mod space;
