use super::{certify, lift_word, power_word, quotient_gens, require_abelian};
use crate::cayley::{CayleyDigraph, Certificate, WalkKind};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// Path word in `Cay(G; S)` for abelian `G`: with `s` the first generator
/// and `(t_i)` a path in `G/⟨s⟩`, returns `((s^{|s|-1}, t_i)_i, s^{|s|-1})`.
pub(crate) fn abelian_path_word(g: &FiniteGroup, gens: &[Elem]) -> Result<Vec<Elem>> {
    if g.order() == 1 {
        return Ok(Vec::new());
    }
    let Some(&s) = gens.first() else {
        return Err(Error::NotConnected);
    };
    let cyc = g.subgroup_generated(&[s]);
    let q = g.quotient(&cyc)?;
    let (images, lifts) = quotient_gens(&q, &gens[1..]);
    let inner = abelian_path_word(&q.group, &images)?;
    let run = cyc.order() - 1;
    let mut word = Vec::with_capacity(g.order() - 1);
    for t in lift_word(&images, &lifts, &inner) {
        word.extend(power_word(s, run));
        word.push(t);
    }
    word.extend(power_word(s, run));
    Ok(word)
}

pub fn abelian_ham_path(d: &CayleyDigraph<'_>) -> Result<Certificate> {
    let g = d.group();
    require_abelian(g)?;
    if !d.is_connected() {
        return Err(Error::NotConnected);
    }
    let word = abelian_path_word(g, d.gens().as_slice())?;
    certify(d, WalkKind::Path, &word)
}

/// `(((t_j)_j, s_i)_i, (t_j)_j)` where `(t_j)` is the inner path in `N` and
/// `(s_i)` is a path in the abelian quotient `G/N`.
pub(crate) fn concat_lift_word(g: &FiniteGroup, gens: &[Elem], n: &Subgroup, inner: &[Elem]) -> Result<Vec<Elem>> {
    if !g.commutator_subgroup().is_subset_of(n) {
        return Err(Error::CommutatorNotContained);
    }
    let q = g.quotient(n)?;
    let (images, lifts) = quotient_gens(&q, gens);
    let outer = lift_word(&images, &lifts, &abelian_path_word(&q.group, &images)?);
    let mut word = Vec::with_capacity(g.order() - 1);
    for s in outer {
        word.extend_from_slice(inner);
        word.push(s);
    }
    word.extend_from_slice(inner);
    Ok(word)
}

/// Lifts a hamiltonian path word `inner` of `N` (a subgroup containing
/// `[G, G]`) to a hamiltonian path of `Cay(G; S)`.
pub fn concat_lift_path(d: &CayleyDigraph<'_>, n: &Subgroup, inner: &[Elem]) -> Result<Certificate> {
    let word = concat_lift_word(d.group(), d.gens().as_slice(), n, inner)?;
    certify(d, WalkKind::Path, &word)
}
