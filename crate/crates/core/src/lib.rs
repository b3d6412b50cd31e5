//! Regular loci, perfect loci and certified generators for the module
//! categories of affine algebras over `Q` and `F_p`.

pub mod certcheck;
pub mod cli;
pub mod error;
pub mod genesis;
pub mod groebner;
pub mod homalg;
pub mod loci;
pub mod oracle;
pub mod polyring;

pub use error::{Error, Result};
