//! Cyclically presented groups, labelled oriented graph (LOG) groups, natural
//! HNN extensions, star graph small cancellation, abelian invariants, coset
//! enumeration and twisted conjugacy.

pub mod abelian;
pub mod conjsolver;
pub mod cycpres;
pub mod enumerate;
pub mod error;
pub mod hatfree;
pub mod log;
pub mod parse;
pub mod presentation;
pub mod smallcanc;
pub mod word;

pub use error::{Error, Result};
pub use presentation::Presentation;
pub use word::{CyclicWitness, Letter, TwoGen, TwoGenWord, Word};
