//! Exact computation of local and global minimizers of real polynomial
//! optimization problems via Gröbner bases in shape position, real root
//! isolation and sign conditions on bordered Hessians.

pub mod arith;
pub mod certify;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod par;
pub mod realroots;
pub mod shape;
pub mod solve;

pub use error::{Error, Result};
