pub mod compare;
pub mod figures;
pub mod solve;
