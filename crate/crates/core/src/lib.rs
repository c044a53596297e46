pub mod audit;
pub mod dsl;
pub mod arith;
pub mod field;
pub mod construct;
pub mod geometry;
pub mod kripke;
