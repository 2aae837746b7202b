pub mod analysis;
pub mod casebook;
pub mod decay;
pub mod error;
pub mod expr;
pub mod filter;
pub mod hyperreal;
pub mod seq;
pub mod sumtheorem;
pub mod value;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::{Truth, Verdict3, Witness};
