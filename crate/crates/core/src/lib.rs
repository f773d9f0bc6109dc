//! Algorithms for one-relator relative presentations over free products.

pub mod backend;
pub mod diagram;
pub mod free_word;
pub mod presentation;
pub mod ratio;
pub mod small_cancellation;
pub mod up;
pub mod word;
