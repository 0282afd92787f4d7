//! Exact character theory of the imprimitive complex reflection groups
//! `G(de,e,r)`: character tables, p-blocks and perfect isometries between
//! blocks with equal weight.

pub mod blocks;
pub mod cyclotomic;
pub mod error;
pub mod geder;
pub mod matrix;
pub mod partitions;
pub mod perfiso;
pub mod wreath;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use partitions::{CycleStructure, Multipartition, Partition};
