//! Explicit constructions of hamiltonian paths and cycles.
//!
//! Internally every construction produces a word over generator elements;
//! the public entry points convert it to a [`Certificate`] and refuse to
//! return anything that does not verify.

mod abelian;
mod lift;
mod rankin;
mod small_commutator;

use crate::cayley::{CayleyDigraph, Certificate, WalkKind};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Quotient};

pub use abelian::{abelian_ham_path, concat_lift_path};
pub use lift::{factor_group_cycle, factor_group_search, skewed_generators_path, FglOutcome, InnerBuilder};
pub use rankin::{easy_no_ham_check, rankin_cycle, rankin_decide, RankinWitness};
pub use small_commutator::{check_small_commutator, small_commutator_path, small_commutator_traced, ScStep};

pub(crate) use abelian::abelian_path_word;

/// Converts a word into a verified certificate starting at the identity.
pub(crate) fn certify(d: &CayleyDigraph<'_>, kind: WalkKind, word: &[Elem]) -> Result<Certificate> {
    let cert = Certificate::from_word(d, kind, Elem::IDENTITY, word)?;
    d.verify(&cert).map_err(|r| Error::ConstructionFailed(r.to_string()))?;
    Ok(cert)
}

/// Images of `gens` in a quotient, without the identity and without repeats,
/// each paired with the first generator that maps to it.
pub(crate) fn quotient_gens(q: &Quotient, gens: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let mut images = Vec::new();
    let mut lifts = Vec::new();
    for &s in gens {
        let x = q.project(s);
        if x != Elem::IDENTITY && !images.contains(&x) {
            images.push(x);
            lifts.push(s);
        }
    }
    (images, lifts)
}

pub(crate) fn lift_word(images: &[Elem], lifts: &[Elem], word: &[Elem]) -> Vec<Elem> {
    word.iter().map(|x| lifts[images.iter().position(|y| y == x).expect("word over images")]).collect()
}

pub(crate) fn power_word(s: Elem, k: usize) -> impl Iterator<Item = Elem> {
    std::iter::repeat_n(s, k)
}

pub(crate) fn require_abelian(g: &FiniteGroup) -> Result<()> {
    if g.is_abelian() {
        Ok(())
    } else {
        Err(Error::NotAbelian)
    }
}
