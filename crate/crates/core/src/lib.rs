pub mod algebra;
pub mod capacity;
pub mod cli;
pub mod criteria;
pub mod exact;
pub mod group;
pub mod growth;
pub mod padic;
pub mod properties;
pub mod report;
pub mod tree;
