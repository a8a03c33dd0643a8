pub mod algebra;
pub mod cli;
pub mod complex;
pub mod cycle;
pub mod error;
pub mod fiber;
pub mod generators;
pub mod io;
pub mod map;
pub mod poset;
pub mod pq;
pub mod reeb;
pub mod union_find;

pub use error::{Error, Result};
