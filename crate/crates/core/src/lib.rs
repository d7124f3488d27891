//! Automatic sequences, truncated power series over prime fields, and the
//! machinery around them: DFAOs, k-kernels, morphic words and numeration
//! systems.

pub mod automata;
pub mod catalog;
pub mod checks;
pub mod kernel;
pub mod modp;
pub mod morphisms;
pub mod numeration;
pub mod series;
