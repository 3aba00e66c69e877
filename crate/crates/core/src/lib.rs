pub mod cli;
pub mod dot;
pub mod dsl;
pub mod entail;
pub mod error;
pub mod formulas;
pub mod gen;
pub mod io;
pub mod laws;
pub mod partition;
pub mod relsem;
pub mod syn;
pub mod terms;
pub mod typed;
pub mod wiring;

pub use error::{Error, Result};
