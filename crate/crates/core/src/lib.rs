pub mod asym;
pub mod budget;
pub mod chars;
pub mod comb;
pub mod dist;
pub mod error;
pub mod ffield;
pub mod hayes;
pub mod par;

pub use budget::Budget;
pub use error::{Error, Result};
