pub mod arith;
pub mod cyclotomic;
pub mod davenport;
pub mod error;
pub mod graded;
pub mod group;
pub mod invariant;
pub mod lemmas;
pub mod oracle;
pub mod packing;
pub mod parse;
pub mod poly;
pub mod sequence;
pub mod span;
pub mod suite;
pub mod table;
