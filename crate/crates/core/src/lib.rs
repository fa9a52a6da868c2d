//! Lexicographic pseudo MV-algebras `Γ(G,u)` over structural lattice-ordered
//! groups: exact arithmetic, windowed verification of axioms and identities,
//! ideals, `(H,u)`-decompositions and their representations.

pub mod cli;
pub mod effect;
pub mod error;
pub mod gamma;
pub mod group;
pub mod ideal;
pub mod matrix;
pub mod report;
pub mod repr;
pub mod syntax;
pub mod term;
pub mod window;

pub use error::{Error, ParseError, Result};
pub use gamma::{check_axioms, MvOps, PmvAlgebra, PmvElement};
pub use group::{GroupElement, GroupExpr, UnitalGroup};
pub use report::{Bounds, CheckRecord, Report, Verdict, Witness};
pub use window::Window;
