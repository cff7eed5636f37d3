use super::certify;
use crate::cayley::{coset_quotient_digraph, CayleyDigraph, Certificate, CosetDigraph, WalkKind};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// Builds a hamiltonian path word in `Cay(K; T)`, given `K` as a standalone
/// group and `T` as elements of it.
pub type InnerBuilder<'a> = dyn Fn(&FiniteGroup, &[Elem]) -> Result<Vec<Elem>> + 'a;

fn labels_of(gens: &[Elem], word: &[Elem]) -> Result<Vec<usize>> {
    word.iter()
        .map(|s| gens.iter().position(|x| x == s).ok_or(Error::NotHamCycleInQuotient))
        .collect()
}

/// With `(s_1, ..., s_n)` a hamiltonian cycle in `K\Cay(G; S)`, `π = s_2⋯s_n`
/// and `(t'_j)` a hamiltonian path in `Cay(K; Sπ)`, the word
/// `((s_i)_{i≥2}, (t'_j π⁻¹, (s_i)_{i≥2})_j)` is a hamiltonian path.
pub(crate) fn skewed_word(
    g: &FiniteGroup,
    gens: &[Elem],
    k: &Subgroup,
    outer: &[Elem],
    inner: &InnerBuilder<'_>,
) -> Result<Vec<Elem>> {
    let labels = labels_of(gens, outer)?;
    if !coset_quotient_digraph(k, g, gens).is_ham_cycle(&labels) {
        return Err(Error::NotHamCycleInQuotient);
    }
    let tail = &outer[1..];
    let pi = g.product(tail);
    let mut skewed = Vec::new();
    for &s in gens {
        let t = g.mul(s, pi);
        if !k.contains(t) {
            return Err(Error::SkewedSetNotGeneratingK);
        }
        if t != Elem::IDENTITY {
            skewed.push(t);
        }
    }
    if g.subgroup_generated(&skewed).order() != k.order() {
        return Err(Error::SkewedSetNotGeneratingK);
    }
    let emb = g.embedded(k);
    let local: Vec<Elem> = skewed.iter().map(|&t| emb.pull(t).expect("inside K")).collect();
    let path = inner(&emb.group, &local)?;
    let pi_inv = g.inv(pi);
    let mut word = Vec::with_capacity(g.order() - 1);
    word.extend_from_slice(tail);
    for t in path {
        word.push(g.mul(emb.embed(t), pi_inv));
        word.extend_from_slice(tail);
    }
    Ok(word)
}

pub fn skewed_generators_path(
    d: &CayleyDigraph<'_>,
    k: &Subgroup,
    outer: &[Elem],
    inner: &InnerBuilder<'_>,
) -> Result<Certificate> {
    let word = skewed_word(d.group(), d.gens().as_slice(), k, outer, inner)?;
    certify(d, WalkKind::Path, &word)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FglOutcome {
    Cycle(Certificate),
    /// The quotient cycle's product does not generate `N`.
    CriterionFails,
}

/// Lifts a hamiltonian cycle `(s_1, ..., s_d)` of `G/N`, for `N` cyclic and
/// normal, to the cycle `((s_i))^{|N|}` when `⟨s_1⋯s_d⟩ = N`.
pub fn factor_group_cycle(d: &CayleyDigraph<'_>, n: &Subgroup, quotient_cycle: &[Elem]) -> Result<FglOutcome> {
    let g = d.group();
    if n.cyclic_generator(g).is_none() || !g.is_normal(n) {
        return Err(Error::NotCyclicNormal);
    }
    let labels = labels_of(d.gens().as_slice(), quotient_cycle)?;
    if !coset_quotient_digraph(n, g, d.gens().as_slice()).is_ham_cycle(&labels) {
        return Err(Error::NotHamCycleInQuotient);
    }
    let prod = g.product(quotient_cycle);
    if g.subgroup_generated(&[prod]).order() != n.order() {
        return Ok(FglOutcome::CriterionFails);
    }
    let word: Vec<Elem> = quotient_cycle.iter().copied().cycle().take(quotient_cycle.len() * n.order()).collect();
    Ok(FglOutcome::Cycle(certify(d, WalkKind::Cycle, &word)?))
}

/// Tries every nontrivial cyclic normal subgroup `N`, in order of its
/// smallest generator, and up to `limit` hamiltonian cycles of each coset
/// digraph, returning the first lift that succeeds.
pub fn factor_group_search(d: &CayleyDigraph<'_>, limit: usize) -> Result<Option<(Subgroup, Certificate)>> {
    let g = d.group();
    let gens = d.gens().as_slice();
    let mut seen: Vec<Subgroup> = Vec::new();
    for x in g.elements().skip(1) {
        let n = g.subgroup_generated(&[x]);
        if seen.contains(&n) || !g.is_normal(&n) {
            continue;
        }
        seen.push(n.clone());
        let quotient = coset_quotient_digraph(&n, g, gens);
        let mut found = None;
        let mut budget = limit;
        for_each_coset_cycle(&quotient, &mut budget, &mut |labels| {
            let word: Vec<Elem> = labels.iter().map(|&l| gens[l]).collect();
            match factor_group_cycle(d, &n, &word) {
                Ok(FglOutcome::Cycle(c)) => {
                    found = Some(c);
                    true
                }
                _ => false,
            }
        });
        if let Some(c) = found {
            return Ok(Some((n, c)));
        }
    }
    Ok(None)
}

/// Calls `visit` on hamiltonian cycles of the coset digraph from the coset
/// of the identity until it returns true or `budget` cycles have been seen.
fn for_each_coset_cycle(q: &CosetDigraph, budget: &mut usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(
        q: &CosetDigraph,
        at: usize,
        seen: &mut [bool],
        labels: &mut Vec<usize>,
        budget: &mut usize,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let start = q.cosets.coset_of(Elem::IDENTITY);
        for l in 0..q.arcs.len() {
            if *budget == 0 {
                return false;
            }
            let next = q.arcs[l][at];
            labels.push(l);
            if labels.len() == q.len() {
                if next == start {
                    *budget -= 1;
                    if visit(labels) {
                        return true;
                    }
                }
            } else if !seen[next] {
                seen[next] = true;
                if go(q, next, seen, labels, budget, visit) {
                    return true;
                }
                seen[next] = false;
            }
            labels.pop();
        }
        false
    }
    let start = q.cosets.coset_of(Elem::IDENTITY);
    let mut seen = vec![false; q.len()];
    seen[start] = true;
    go(q, start, &mut seen, &mut Vec::new(), budget, visit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::abelian_path_word;
    use crate::group::GroupSpec;
    use crate::search::{dfs_ham_path, SearchOptions};

    fn dfs_builder(k: &FiniteGroup, t: &[Elem]) -> Result<Vec<Elem>> {
        let d = CayleyDigraph::from_elems(k, t)?;
        let r = dfs_ham_path(&d, None, &SearchOptions::default());
        r.certificate.map(|c| c.word(&d)).ok_or_else(|| Error::ConstructionFailed("no inner path".into()))
    }

    #[test]
    fn whole_group_reduces_to_inner_path() {
        let g = FiniteGroup::build(&GroupSpec::Cyclic { n: 6 }).unwrap();
        let s = [Elem::new(1), Elem::new(2)];
        let d = CayleyDigraph::from_elems(&g, &s).unwrap();
        let cert = skewed_generators_path(&d, &g.whole(), &s[..1], &abelian_path_word).unwrap();
        assert_eq!(cert.word(&d), abelian_path_word(&g, &s).unwrap());
    }

    #[test]
    fn s3_over_cyclic_arc_forcing_subgroup() {
        // a = (1 2 3) centralizes [G,G] = A3; H = <b a^-1> has order 2 and index 3.
        let g = FiniteGroup::build(&GroupSpec::Permutation {
            degree: 3,
            generators: vec![vec![1, 0, 2], vec![1, 2, 0]],
        })
        .unwrap();
        let a = g.element(&[1, 2, 0]).unwrap();
        let b = g.element(&[1, 0, 2]).unwrap();
        let d = CayleyDigraph::from_elems(&g, &[a, b]).unwrap();
        let h = g.subgroup_generated(&[g.mul(b, g.inv(a))]);
        let n = h.index_in(&g);
        let outer: Vec<Elem> = std::iter::repeat_n(a, n).collect();
        let cert = skewed_generators_path(&d, &h, &outer, &dfs_builder).unwrap();
        assert_eq!(d.verify(&cert), Ok(()));
    }

    #[test]
    fn rejects_non_cycle_outer() {
        let g = FiniteGroup::build(&GroupSpec::Cyclic { n: 6 }).unwrap();
        let s = [Elem::new(1), Elem::new(5)];
        let d = CayleyDigraph::from_elems(&g, &s).unwrap();
        let k = g.subgroup_generated(&[Elem::new(3)]);
        let r = skewed_generators_path(&d, &k, &[s[0], s[0]], &abelian_path_word);
        assert_eq!(r, Err(Error::NotHamCycleInQuotient));
        let r = skewed_generators_path(&d, &k, &[s[0], s[0], s[0]], &abelian_path_word);
        assert_eq!(r, Err(Error::SkewedSetNotGeneratingK));
    }

    #[test]
    fn fgl_z4() {
        let g = FiniteGroup::build(&GroupSpec::Cyclic { n: 4 }).unwrap();
        let (a, b) = (Elem::new(1), Elem::new(3));
        let d = CayleyDigraph::from_elems(&g, &[a, b]).unwrap();
        let n = g.subgroup_generated(&[Elem::new(2)]);
        match factor_group_cycle(&d, &n, &[a, a]).unwrap() {
            FglOutcome::Cycle(c) => assert_eq!(c.labels, vec![0; 4]),
            other => panic!("{other:?}"),
        }
        assert_eq!(factor_group_cycle(&d, &n, &[a, b]).unwrap(), FglOutcome::CriterionFails);
        let triv = g.trivial_subgroup();
        match factor_group_cycle(&d, &triv, &[a, a, a, a]).unwrap() {
            FglOutcome::Cycle(c) => assert_eq!(c.labels, vec![0; 4]),
            other => panic!("{other:?}"),
        }
        assert_eq!(factor_group_cycle(&d, &n, &[a]), Err(Error::NotHamCycleInQuotient));
    }

    #[test]
    fn fgl_requires_cyclic_normal() {
        let g = FiniteGroup::build(&GroupSpec::abelian(&[2, 2])).unwrap();
        let d = CayleyDigraph::from_elems(&g, &[Elem::new(1), Elem::new(2)]).unwrap();
        assert_eq!(factor_group_cycle(&d, &g.whole(), &[Elem::new(1)]), Err(Error::NotCyclicNormal));
    }

    #[test]
    fn factor_group_search_finds_lifts() {
        let g = FiniteGroup::build(&GroupSpec::abelian(&[4, 3])).unwrap();
        let d = CayleyDigraph::from_elems(&g, &[g.element(&[1, 0]).unwrap(), g.element(&[1, 1]).unwrap()]).unwrap();
        let (n, cert) = factor_group_search(&d, 1000).unwrap().unwrap();
        assert!(g.is_normal(&n));
        assert!(d.verify(&cert).is_ok());

        let z12 = FiniteGroup::build(&GroupSpec::Cyclic { n: 12 }).unwrap();
        let d = CayleyDigraph::from_elems(&z12, &[Elem::new(2), Elem::new(3)]).unwrap();
        assert!(factor_group_search(&d, 1000).unwrap().is_none());
    }
}
