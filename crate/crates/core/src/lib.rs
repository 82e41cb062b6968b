//! Exact construction and verification of combinatorial tau-functions.

mod det;
pub mod crosscheck;
pub mod error;
pub mod hierarchy;
pub mod maps;
pub mod partition;
pub mod schur;
pub mod series;
pub mod symmetric_group;
pub mod tau;

pub use error::{Error, Result};
pub use partition::{partitions, partitions_up_to, ContentList, Partition};
pub use series::{int, rat, Aux, Monomial, Series, Truncation, Var};
