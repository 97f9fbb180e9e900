pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod identities;
pub mod math;
pub mod order;
pub mod structure;
