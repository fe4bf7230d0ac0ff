#![no_std]
extern crate alloc;

pub mod algebra;
pub mod codim1;
pub mod combinatorics;
pub mod field;
pub mod fixtures;
pub mod linalg;
pub mod oracle;
