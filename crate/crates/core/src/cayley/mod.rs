//! Cayley digraphs `Cay(G; S)` with arcs `g → gs`.

mod certificate;
mod dot;

use crate::error::{Error, Result};
use crate::group::{CosetPartition, Elem, FiniteGroup, Subgroup};

pub use certificate::{verify_certificate, Certificate, Rejection, WalkKind};
pub use dot::to_dot;

/// Ordered, duplicate-free generators, none equal to the identity.
/// The listing order is the tie-break order for every search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    elems: Vec<Elem>,
}

impl GeneratorSet {
    pub fn new(elems: Vec<Elem>) -> Result<GeneratorSet> {
        for (i, &s) in elems.iter().enumerate() {
            if s == Elem::IDENTITY {
                return Err(Error::IdentityInS);
            }
            if elems[..i].contains(&s) {
                return Err(Error::DuplicateGenerator(i));
            }
        }
        Ok(GeneratorSet { elems })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, label: usize) -> Elem {
        self.elems[label]
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.elems
    }

    pub fn position(&self, s: Elem) -> Option<usize> {
        self.elems.iter().position(|&x| x == s)
    }
}

/// Default arc label names: `a`, `b`, `c`, ...
pub fn label_name(label: usize) -> String {
    if label < 26 {
        ((b'a' + label as u8) as char).to_string()
    } else {
        format!("s{label}")
    }
}

#[derive(Clone, Debug)]
pub struct CayleyDigraph<'g> {
    group: &'g FiniteGroup,
    gens: GeneratorSet,
    succ: Vec<u32>,
}

impl<'g> CayleyDigraph<'g> {
    pub fn new(group: &'g FiniteGroup, gens: GeneratorSet) -> CayleyDigraph<'g> {
        let d = gens.len();
        let mut succ = vec![0u32; group.order() * d];
        for v in group.elements() {
            for (l, &s) in gens.as_slice().iter().enumerate() {
                succ[v.index() * d + l] = group.mul(v, s).index() as u32;
            }
        }
        CayleyDigraph { group, gens, succ }
    }

    pub fn from_elems(group: &'g FiniteGroup, elems: &[Elem]) -> Result<CayleyDigraph<'g>> {
        Ok(CayleyDigraph::new(group, GeneratorSet::new(elems.to_vec())?))
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn degree(&self) -> usize {
        self.gens.len()
    }

    #[inline]
    pub fn arc(&self, v: Elem, label: usize) -> Elem {
        Elem::new(self.succ[v.index() * self.gens.len() + label] as usize)
    }

    /// Flat successor table indexed `v * degree + label`.
    pub fn successor_table(&self) -> &[u32] {
        &self.succ
    }

    /// Strong connectivity, which for Cayley digraphs means `⟨S⟩ = G`.
    pub fn is_connected(&self) -> bool {
        self.group.generates(self.gens.as_slice())
    }

    pub fn verify(&self, cert: &Certificate) -> Result<(), Rejection> {
        verify_certificate(self, cert)
    }
}

/// `⟨s t⁻¹ : s, t ∈ S⟩`.
pub fn arc_forcing_subgroup(g: &FiniteGroup, s: &[Elem]) -> Subgroup {
    let mut gens = Vec::new();
    for &x in s {
        for &y in s {
            let q = g.mul(x, g.inv(y));
            if q != Elem::IDENTITY && !gens.contains(&q) {
                gens.push(q);
            }
        }
    }
    g.subgroup_generated(&gens)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CosetKind {
    Terminal,
    Regular,
}

/// Left cosets of the arc-forcing subgroup, one of them terminal.
#[derive(Clone, Debug)]
pub struct CosetStructure {
    pub h: Subgroup,
    pub cosets: CosetPartition,
    pub terminal: usize,
}

impl CosetStructure {
    pub fn kind(&self, coset: usize) -> CosetKind {
        if coset == self.terminal {
            CosetKind::Terminal
        } else {
            CosetKind::Regular
        }
    }

    /// Regular coset ids in ascending representative order.
    pub fn regular(&self) -> Vec<usize> {
        (0..self.cosets.len()).filter(|&c| c != self.terminal).collect()
    }
}

/// The terminal coset is `a⁻¹H` for the first generator; any other choice
/// gives the same coset.
pub fn classify_cosets(g: &FiniteGroup, s: &[Elem]) -> Result<CosetStructure> {
    let &a = s.first().ok_or_else(|| Error::precondition("generating set is empty"))?;
    let h = arc_forcing_subgroup(g, s);
    let cosets = g.left_cosets(&h);
    let terminal = cosets.coset_of(g.inv(a));
    Ok(CosetStructure { h, cosets, terminal })
}

/// The digraph `K\Cay(G; S)` on right cosets `Kg` with arcs `Kg → Kgs`.
#[derive(Clone, Debug)]
pub struct CosetDigraph {
    pub cosets: CosetPartition,
    /// `arcs[label][coset]` is the target coset.
    pub arcs: Vec<Vec<usize>>,
}

impl CosetDigraph {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Does the label sequence trace a hamiltonian cycle from the coset `K`?
    pub fn is_ham_cycle(&self, labels: &[usize]) -> bool {
        let n = self.len();
        if labels.len() != n || labels.iter().any(|&l| l >= self.arcs.len()) {
            return false;
        }
        let mut seen = vec![false; n];
        let mut c = self.cosets.coset_of(Elem::IDENTITY);
        for &l in labels {
            if std::mem::replace(&mut seen[c], true) {
                return false;
            }
            c = self.arcs[l][c];
        }
        c == self.cosets.coset_of(Elem::IDENTITY)
    }
}

pub fn coset_quotient_digraph(k: &Subgroup, g: &FiniteGroup, s: &[Elem]) -> CosetDigraph {
    let cosets = g.right_cosets(k);
    let arcs = s
        .iter()
        .map(|&x| cosets.reps.iter().map(|&r| cosets.coset_of(g.mul(r, x))).collect())
        .collect();
    CosetDigraph { cosets, arcs }
}
