pub mod error;
pub mod formulas;
pub mod logic;
pub mod structures;
pub mod matrix;
pub mod classify;
pub mod quasineg;
pub mod search;
