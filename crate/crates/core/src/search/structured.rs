use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{Method, SearchOptions, SearchReport, SearchStats, Verdict};
use crate::cayley::{classify_cosets, CayleyDigraph, Certificate, CosetStructure, WalkKind};
use crate::error::{Error, Result};
use crate::group::Elem;

/// Largest travel-pattern space the structured search will enumerate.
pub const MAX_PATTERNS: u128 = 1 << 24;

const A: usize = 0;
const B: usize = 1;

/// One label per regular coset (in ascending representative order) plus the
/// split index `d` of the terminal coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TravelPattern {
    pub labels: Vec<usize>,
    pub d: usize,
}

/// The travel patterns of `Cay(G; a, b)` for paths starting at the identity.
///
/// With `H = ⟨ab⁻¹⟩`, the terminal coset is listed as `t_i = a⁻¹(ba⁻¹)^i`.
/// Under a pattern, `t_i` travels by `b` for `i < d`, by `a` for `i > d`,
/// and `t_d` is the last vertex.
pub struct PatternSpace<'d, 'g> {
    d: &'d CayleyDigraph<'g>,
    pub structure: CosetStructure,
    /// Regular coset ids in slot order.
    pub regular: Vec<usize>,
    slot_of_coset: Vec<Option<usize>>,
    pub terminal_elems: Vec<Elem>,
    terminal_pos: Vec<Option<usize>>,
}

impl<'d, 'g> PatternSpace<'d, 'g> {
    pub fn new(d: &'d CayleyDigraph<'g>) -> Result<PatternSpace<'d, 'g>> {
        if d.degree() != 2 {
            return Err(Error::NotTwoGenerated(d.degree()));
        }
        if !d.is_connected() {
            return Err(Error::NotConnected);
        }
        let g = d.group();
        let (a, b) = (d.gens().get(A), d.gens().get(B));
        let structure = classify_cosets(g, d.gens().as_slice())?;
        let regular = structure.regular();
        let space = (1u128 << regular.len().min(127)) * structure.h.order() as u128;
        if space > MAX_PATTERNS {
            return Err(Error::PatternLimit(space));
        }
        let mut slot_of_coset = vec![None; structure.cosets.len()];
        for (slot, &c) in regular.iter().enumerate() {
            slot_of_coset[c] = Some(slot);
        }
        let step = g.mul(b, g.inv(a));
        let mut terminal_elems = Vec::with_capacity(structure.h.order());
        let mut t = g.inv(a);
        let mut terminal_pos = vec![None; g.order()];
        for i in 0..structure.h.order() {
            terminal_pos[t.index()] = Some(i);
            terminal_elems.push(t);
            t = g.mul(t, step);
        }
        Ok(PatternSpace { d, structure, regular, slot_of_coset, terminal_elems, terminal_pos })
    }

    pub fn h_order(&self) -> usize {
        self.structure.h.order()
    }

    /// `2^(#regular cosets) · |H|`.
    pub fn len(&self) -> u64 {
        (1u64 << self.regular.len()) * self.h_order() as u64
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Patterns are numbered with the first regular coset as the most
    /// significant bit (`a` = 0) and `d` as the least significant digit.
    pub fn index_of(&self, p: &TravelPattern) -> u64 {
        let bits = p.labels.iter().fold(0u64, |acc, &l| (acc << 1) | l as u64);
        bits * self.h_order() as u64 + p.d as u64
    }

    pub fn pattern(&self, index: u64) -> TravelPattern {
        let h = self.h_order() as u64;
        let (bits, d) = (index / h, (index % h) as usize);
        let r = self.regular.len();
        let labels = (0..r).map(|j| ((bits >> (r - 1 - j)) & 1) as usize).collect();
        TravelPattern { labels, d }
    }

    /// The label `v` travels by, or `None` for the terminal vertex `t_d`.
    pub fn label_of(&self, p: &TravelPattern, v: Elem) -> Option<usize> {
        match self.terminal_pos[v.index()] {
            Some(i) if i < p.d => Some(B),
            Some(i) if i > p.d => Some(A),
            Some(_) => None,
            None => {
                let slot = self.slot_of_coset[self.structure.cosets.coset_of(v)].expect("regular coset");
                Some(p.labels[slot])
            }
        }
    }

    pub fn successor_map(&self, p: &TravelPattern) -> Vec<Option<Elem>> {
        self.d.group().elements().map(|v| self.label_of(p, v).map(|l| self.d.arc(v, l))).collect()
    }

    /// The walk from the identity if it is a hamiltonian path ending at `t_d`.
    pub fn expand(&self, p: &TravelPattern) -> Option<Certificate> {
        let n = self.d.order();
        let mut seen = vec![false; n];
        let mut v = Elem::IDENTITY;
        seen[0] = true;
        let mut labels = Vec::with_capacity(n - 1);
        for _ in 1..n {
            let l = self.label_of(p, v)?;
            v = self.d.arc(v, l);
            if std::mem::replace(&mut seen[v.index()], true) {
                return None;
            }
            labels.push(l);
        }
        (v == self.terminal_elems[p.d]).then(|| Certificate::path(Elem::IDENTITY, labels))
    }

    /// Reads off the pattern a hamiltonian path from the identity follows, if
    /// it follows one.
    pub fn induced(&self, cert: &Certificate) -> Option<TravelPattern> {
        if cert.kind != WalkKind::Path || cert.start != Elem::IDENTITY {
            return None;
        }
        let verts = cert.vertices(self.d);
        let end = *verts.last()?;
        let d = self.terminal_pos[end.index()]?;
        let mut labels = vec![None; self.regular.len()];
        let mut pattern = TravelPattern { labels: vec![A; self.regular.len()], d };
        for (&v, &l) in verts.iter().zip(&cert.labels) {
            if self.terminal_pos[v.index()].is_none() {
                let slot = self.slot_of_coset[self.structure.cosets.coset_of(v)]?;
                match labels[slot] {
                    None => labels[slot] = Some(l),
                    Some(prev) if prev != l => return None,
                    Some(_) => {}
                }
            }
        }
        for (slot, l) in labels.into_iter().enumerate() {
            pattern.labels[slot] = l?;
        }
        for (&v, &l) in verts.iter().zip(&cert.labels) {
            if self.label_of(&pattern, v) != Some(l) {
                return None;
            }
        }
        Some(pattern)
    }

    fn coset_members(&self, slot: usize) -> &[Elem] {
        &self.structure.cosets.members[self.regular[slot]]
    }

    /// Depth-first over slot labels with in-arc collision pruning. `hits`
    /// marks vertices already entered (the identity is pre-marked since a
    /// path from it has no arc into it).
    fn search_from(
        &self,
        slot: usize,
        labels: &mut Vec<usize>,
        hits: &mut [bool],
        decided: &AtomicU64,
    ) -> Option<Certificate> {
        let h = self.h_order() as u64;
        let r = self.regular.len();
        if slot == r {
            for d in 0..self.h_order() {
                decided.fetch_add(1, Ordering::Relaxed);
                let p = TravelPattern { labels: labels.clone(), d };
                if let Some(c) = self.expand(&p) {
                    return Some(c);
                }
            }
            return None;
        }
        for l in [A, B] {
            if self.assign(slot, l, hits) {
                labels.push(l);
                let found = self.search_from(slot + 1, labels, hits, decided);
                labels.pop();
                self.unassign(slot, l, hits);
                if found.is_some() {
                    return found;
                }
            } else {
                decided.fetch_add((1u64 << (r - slot - 1)) * h, Ordering::Relaxed);
            }
        }
        None
    }

    fn assign(&self, slot: usize, l: usize, hits: &mut [bool]) -> bool {
        let members = self.coset_members(slot);
        for (k, &v) in members.iter().enumerate() {
            let t = self.d.arc(v, l).index();
            if hits[t] {
                for &u in &members[..k] {
                    hits[self.d.arc(u, l).index()] = false;
                }
                return false;
            }
            hits[t] = true;
        }
        true
    }

    fn unassign(&self, slot: usize, l: usize, hits: &mut [bool]) {
        for &v in self.coset_members(slot) {
            hits[self.d.arc(v, l).index()] = false;
        }
    }

    fn fresh_hits(&self) -> Vec<bool> {
        let mut hits = vec![false; self.d.order()];
        hits[0] = true;
        hits
    }
}

/// Complete decision for a hamiltonian path in a connected two-generator
/// Cayley digraph, by enumerating all travel patterns.
pub fn structured_ham_path_2gen(d: &CayleyDigraph<'_>, opts: &SearchOptions) -> Result<SearchReport> {
    let space = PatternSpace::new(d)?;
    let decided = AtomicU64::new(0);
    let r = space.regular.len();
    let found = if opts.workers <= 1 || r == 0 {
        let mut hits = space.fresh_hits();
        space.search_from(0, &mut Vec::new(), &mut hits, &decided)
    } else {
        let split = r.min((usize::BITS - (opts.workers * 8).leading_zeros()) as usize);
        let h = space.h_order() as u64;
        opts.pool().install(|| {
            (0u64..1 << split).into_par_iter().find_map_first(|chunk| {
                let prefix: Vec<usize> = (0..split).map(|j| ((chunk >> (split - 1 - j)) & 1) as usize).collect();
                let mut hits = space.fresh_hits();
                for (slot, &l) in prefix.iter().enumerate() {
                    if !space.assign(slot, l, &mut hits) {
                        decided.fetch_add((1u64 << (r - split)) * h, Ordering::Relaxed);
                        return None;
                    }
                }
                let mut labels = prefix;
                space.search_from(split, &mut labels, &mut hits, &decided)
            })
        })
    };
    let verdict = if found.is_some() { Verdict::Exists } else { Verdict::NotExists };
    Ok(SearchReport {
        verdict,
        certificate: found,
        stats: SearchStats { nodes: 0, patterns: decided.load(Ordering::Relaxed) },
        method: Method::Structured,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, GroupSpec};
    use crate::search::dfs_ham_path;

    #[test]
    fn g5_example_has_no_path() {
        let g = FiniteGroup::build(&GroupSpec::SemidirectCyclic { m: 12, p: 5, u: 3 }).unwrap();
        let a = g.element(&[2, 1]).unwrap();
        let b = g.element(&[3, 1]).unwrap();
        let d = CayleyDigraph::from_elems(&g, &[a, b]).unwrap();
        let r = structured_ham_path_2gen(&d, &SearchOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotExists);
        assert_eq!(r.stats.patterns, 192);
    }

    #[test]
    fn z6_all_a_pattern() {
        let g = FiniteGroup::build(&GroupSpec::Cyclic { n: 6 }).unwrap();
        let d = CayleyDigraph::from_elems(&g, &[Elem::new(1), Elem::new(5)]).unwrap();
        let space = PatternSpace::new(&d).unwrap();
        let p = TravelPattern { labels: vec![A; space.regular.len()], d: 0 };
        let c = space.expand(&p).unwrap();
        assert_eq!(d.verify(&c), Ok(()));
        assert_eq!(space.induced(&c), Some(p.clone()));
        assert_eq!(space.pattern(space.index_of(&p)), p);
        let r = structured_ham_path_2gen(&d, &SearchOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Exists);
    }

    #[test]
    fn errors() {
        let g = FiniteGroup::build(&GroupSpec::Cyclic { n: 6 }).unwrap();
        let d = CayleyDigraph::from_elems(&g, &[Elem::new(1)]).unwrap();
        assert!(matches!(PatternSpace::new(&d), Err(Error::NotTwoGenerated(1))));
        let d = CayleyDigraph::from_elems(&g, &[Elem::new(2), Elem::new(4)]).unwrap();
        assert!(matches!(PatternSpace::new(&d), Err(Error::NotConnected)));
    }

    #[test]
    fn agrees_with_dfs_and_parallel() {
        let specs = [
            GroupSpec::SemidirectCyclic { m: 4, p: 5, u: 2 },
            GroupSpec::abelian(&[2, 8]),
            GroupSpec::Permutation { degree: 4, generators: vec![vec![1, 0, 3, 2], vec![1, 2, 0, 3]] },
        ];
        for spec in specs {
            let g = FiniteGroup::build(&spec).unwrap();
            for x in 1..g.order() {
                for y in x + 1..g.order() {
                    let d = CayleyDigraph::from_elems(&g, &[Elem::new(x), Elem::new(y)]).unwrap();
                    if !d.is_connected() {
                        continue;
                    }
                    let s = structured_ham_path_2gen(&d, &SearchOptions::default()).unwrap();
                    let p = structured_ham_path_2gen(&d, &SearchOptions::default().with_workers(4)).unwrap();
                    let dfs = dfs_ham_path(&d, None, &SearchOptions::default());
                    assert_eq!(s.verdict, dfs.verdict);
                    assert_eq!(s.certificate, p.certificate);
                    if s.verdict == Verdict::NotExists {
                        assert_eq!(s.stats.patterns, PatternSpace::new(&d).unwrap().len());
                    }
                }
            }
        }
    }
}
