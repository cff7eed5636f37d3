use std::collections::{HashMap, VecDeque};

use super::{Elem, FiniteGroup};
use crate::error::{Error, Result};

/// A subgroup stored as its sorted member list plus a membership mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
    generators: Vec<Elem>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    /// Elements the subgroup was generated from.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x.index()]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order()
    }

    /// A generator of the subgroup if it is cyclic.
    pub fn cyclic_generator(&self, g: &FiniteGroup) -> Option<Elem> {
        self.members.iter().copied().find(|&x| g.element_order(x) == self.order())
    }
}

/// Left or right cosets with minimal-index representatives, in ascending
/// representative order.
#[derive(Clone, Debug)]
pub struct CosetPartition {
    pub reps: Vec<Elem>,
    pub members: Vec<Vec<Elem>>,
    pub coset_of: Vec<u32>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn coset_of(&self, x: Elem) -> usize {
        self.coset_of[x.index()] as usize
    }
}

/// `G/N` as a standalone group; quotient element `i` is coset `i` of the
/// underlying partition.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub cosets: CosetPartition,
}

impl Quotient {
    pub fn project(&self, x: Elem) -> Elem {
        Elem::new(self.cosets.coset_of(x))
    }
}

/// A subgroup re-tabulated as its own group.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub group: FiniteGroup,
    embed: Vec<Elem>,
    pull: HashMap<Elem, Elem>,
}

impl Embedded {
    /// Image in the ambient group.
    pub fn embed(&self, x: Elem) -> Elem {
        self.embed[x.index()]
    }

    /// Preimage of an ambient element, if it lies in the subgroup.
    pub fn pull(&self, x: Elem) -> Option<Elem> {
        self.pull.get(&x).copied()
    }
}

impl FiniteGroup {
    fn subgroup_from_members(&self, mut members: Vec<Elem>, generators: Vec<Elem>) -> Subgroup {
        members.sort();
        let mut mask = vec![false; self.order()];
        for &m in &members {
            mask[m.index()] = true;
        }
        Subgroup { members, mask, generators }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_from_members(vec![Elem::IDENTITY], Vec::new())
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_from_members(self.elements().collect(), Vec::new())
    }

    /// Breadth-first closure of the identity under right multiplication by `gens`.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup {
        let mut mask = vec![false; self.order()];
        let mut members = vec![Elem::IDENTITY];
        mask[0] = true;
        let mut queue = VecDeque::from([Elem::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !mask[y.index()] {
                    mask[y.index()] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        let mut generators = gens.to_vec();
        generators.dedup();
        self.subgroup_from_members(members, generators)
    }

    pub fn generates(&self, gens: &[Elem]) -> bool {
        self.subgroup_generated(gens).order() == self.order()
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut seen = vec![false; self.order()];
        let mut gens = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                let c = self.commutator(a, b);
                if !std::mem::replace(&mut seen[c.index()], true) && c != Elem::IDENTITY {
                    gens.push(c);
                }
            }
        }
        self.normal_closure(&self.subgroup_generated(&gens))
    }

    pub fn normal_closure(&self, h: &Subgroup) -> Subgroup {
        let mut seen = vec![false; self.order()];
        let mut gens = Vec::new();
        for &x in h.generators().iter().chain(h.members()) {
            for g in self.elements() {
                let c = self.conj(x, g);
                if !std::mem::replace(&mut seen[c.index()], true) && c != Elem::IDENTITY {
                    gens.push(c);
                }
            }
        }
        let closure = self.subgroup_generated(&gens);
        Subgroup { generators: h.generators().to_vec(), ..closure }
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.members().iter().all(|&x| self.elements().all(|g| h.contains(self.conj(x, g))))
    }

    /// Does `g` centralize every element of `h`?
    pub fn centralizes(&self, g: Elem, h: &Subgroup) -> bool {
        h.members().iter().all(|&x| self.commutes(g, x))
    }

    /// Does conjugation by `g` invert every element of `h`?
    pub fn inverts(&self, g: Elem, h: &Subgroup) -> bool {
        h.members().iter().all(|&x| self.conj(x, g) == self.inv(x))
    }

    fn cosets(&self, h: &Subgroup, left: bool) -> CosetPartition {
        let mut coset_of = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for g in self.elements() {
            if coset_of[g.index()] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            let mut coset: Vec<Elem> = h
                .members()
                .iter()
                .map(|&x| if left { self.mul(g, x) } else { self.mul(x, g) })
                .collect();
            coset.sort();
            for &x in &coset {
                coset_of[x.index()] = id;
            }
            reps.push(g);
            members.push(coset);
        }
        CosetPartition { reps, members, coset_of }
    }

    /// Cosets `gH`.
    pub fn left_cosets(&self, h: &Subgroup) -> CosetPartition {
        self.cosets(h, true)
    }

    /// Cosets `Hg`.
    pub fn right_cosets(&self, h: &Subgroup) -> CosetPartition {
        self.cosets(h, false)
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let cosets = self.left_cosets(n);
        let q = cosets.len();
        let mut table = vec![0u32; q * q];
        for (i, &x) in cosets.reps.iter().enumerate() {
            for (j, &y) in cosets.reps.iter().enumerate() {
                table[i * q + j] = cosets.coset_of(self.mul(x, y)) as u32;
            }
        }
        // Well-definedness: the product of any two coset members lands in the tabulated coset.
        for x in self.elements() {
            let cx = cosets.coset_of(x);
            let row = self.table_row(x);
            for (y, &xy) in row.iter().enumerate() {
                let cy = cosets.coset_of[y] as usize;
                if cosets.coset_of[xy as usize] != table[cx * q + cy] {
                    return Err(Error::NotNormal);
                }
            }
        }
        Ok(Quotient { group: FiniteGroup::from_trusted_table(q, table), cosets })
    }

    /// Tabulates `h` as a group in its own right, preserving member order.
    pub fn embedded(&self, h: &Subgroup) -> Embedded {
        let embed = h.members().to_vec();
        let pull: HashMap<Elem, Elem> = embed.iter().enumerate().map(|(i, &x)| (x, Elem::new(i))).collect();
        let n = embed.len();
        let mut table = vec![0u32; n * n];
        for (i, &x) in embed.iter().enumerate() {
            for (j, &y) in embed.iter().enumerate() {
                table[i * n + j] = pull[&self.mul(x, y)].index() as u32;
            }
        }
        Embedded { group: FiniteGroup::from_trusted_table(n, table), embed, pull }
    }
}
