pub mod characters;
pub mod cli;
pub mod divdiff;
pub mod error;
pub mod exec;
pub mod kernels;
pub mod keypoly;
pub mod laurent;
pub mod random;
pub mod report;
pub mod scalarprod;
pub mod verify;
pub mod weylgroup;

pub use error::{Error, Result};
pub use laurent::{Coeff, ExpVec, LaurentPoly, VarSet};
pub use weylgroup::{Generator, GroupType, VectorZ};
