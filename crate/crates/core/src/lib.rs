//! Proof checking, Friedman-slash evaluation and witness extraction for the
//! dependently sorted language of categories.

pub mod ctxiso;
pub mod extractor;
pub mod freyd;
pub mod kernel;
pub mod slash;
pub mod syntax;
pub mod theoria;
