pub mod base_mpe;
pub mod cli;
pub mod curves;
pub mod encoder;
pub mod error;
pub mod field;
pub mod oracle;
pub mod rroch;
pub mod sample;
pub mod textio;
pub mod tower;

pub use error::{Error, Result};
