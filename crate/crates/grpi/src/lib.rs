//! Corpus construction, group files and verification campaigns for the Π-property
//! criteria.

pub mod campaign;
pub mod corpus;
pub mod error;
pub mod example;
pub mod groupfile;
pub mod lemmas;
pub mod propositions;
pub mod record;
pub mod tally;
pub mod theorems;

pub use error::{HarnessError, Result};
pub use record::{Status, VerificationRecord};
