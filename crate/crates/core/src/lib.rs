//! Weight enumerators, theta series and wiretap secrecy gains of binary codes
//! viewed as Construction A packings.

pub mod code;
pub mod convcode;
pub mod corpus;
pub mod error;
pub mod highreal;
pub mod optimize;
pub mod par;
pub mod poly;
pub mod secrecy;
pub mod theta;
pub mod wiretap;

pub use error::{Error, Result};
pub use highreal::HighReal;
