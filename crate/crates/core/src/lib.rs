pub mod cli;
pub mod error;
pub mod forest;
pub mod skein;
pub mod random;
pub mod thompson;
pub mod verify;
pub mod wysiwyg;

pub use error::{Error, Result};
pub use forest::{Forest, Tree};

/// Which vacuum vector a representation is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vacuum {
    /// Cup vacuum over the single caret.
    Psi,
    /// Single-leaf vacuum, carried by an extra strand.
    Omega,
}
