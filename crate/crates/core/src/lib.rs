//! Hamiltonian paths and cycles in Cayley digraphs of finite groups.

pub mod abelian3;
pub mod cayley;
pub mod construct;
pub mod error;
pub mod families;
pub mod group;
pub mod io;
pub mod search;
pub mod survey;

pub use abelian3::{abelian3_ham_cycle, Abelian3Run};
pub use cayley::{CayleyDigraph, Certificate, GeneratorSet, WalkKind};
pub use error::{Error, Result};
pub use families::Instance;
pub use group::{Elem, FiniteGroup, GroupSpec, Subgroup};
pub use search::{SearchOptions, SearchReport, Verdict};
