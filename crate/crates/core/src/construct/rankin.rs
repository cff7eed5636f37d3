use serde::{Deserialize, Serialize};

use super::{factor_group_cycle, require_abelian, FglOutcome};
use crate::cayley::{CayleyDigraph, Certificate};
use crate::error::{Error, Result};
use crate::group::{gcd, Elem, FiniteGroup};

/// Exponents with `k + ℓ = |G : ⟨a − b⟩|` and `⟨ka + ℓb⟩ = ⟨a − b⟩`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankinWitness {
    pub k: usize,
    pub l: usize,
}

/// Decides whether `Cay(G; a, b)` on an abelian group has a hamiltonian
/// cycle. Scans `k` downward from the index, so all-`a` witnesses come first.
pub fn rankin_decide(g: &FiniteGroup, a: Elem, b: Elem) -> Result<Option<RankinWitness>> {
    require_abelian(g)?;
    if !g.generates(&[a, b]) {
        return Err(Error::NotGenerating);
    }
    let diff = g.subgroup_generated(&[g.mul(a, g.inv(b))]);
    let index = diff.index_in(g);
    for k in (0..=index).rev() {
        let l = index - k;
        let x = g.mul(g.pow(a, k as i64), g.pow(b, l as i64));
        if g.subgroup_generated(&[x]).order() == diff.order() {
            return Ok(Some(RankinWitness { k, l }));
        }
    }
    Ok(None)
}

/// The cycle `((a^k, b^ℓ))^{|⟨a − b⟩|}`, built through the factor group lemma
/// with `N = ⟨a − b⟩`.
pub fn rankin_cycle(g: &FiniteGroup, a: Elem, b: Elem, w: RankinWitness) -> Result<Certificate> {
    require_abelian(g)?;
    let d = CayleyDigraph::from_elems(g, &[a, b])?;
    let n = g.subgroup_generated(&[g.mul(a, g.inv(b))]);
    let mut quotient_cycle = vec![a; w.k];
    quotient_cycle.extend(std::iter::repeat_n(b, w.l));
    match factor_group_cycle(&d, &n, &quotient_cycle)? {
        FglOutcome::Cycle(c) => Ok(c),
        FglOutcome::CriterionFails => Err(Error::ConstructionFailed(format!("{w:?} is not a witness"))),
    }
}

/// `gcd(a, n) > 1` and `gcd(a + 1, n) > 1`, which rules out a hamiltonian
/// cycle in `Cay(Z_n; a, a + 1)`.
pub fn easy_no_ham_check(n: u64, a: u64) -> bool {
    gcd(a, n) > 1 && gcd(a + 1, n) > 1
}
