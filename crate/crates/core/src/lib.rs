pub mod channel;
pub mod decoder;
pub mod error;
pub mod gf2;
pub mod imr;
pub mod oracle;
pub mod pcwd;
pub mod sim;
pub mod spa;
pub mod stabilizer;

pub use error::{Error, Result};
