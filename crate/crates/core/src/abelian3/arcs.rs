use sha2::{Digest, Sha256};

use super::Triple;
use crate::error::{Error, Result};
use crate::group::Elem;

pub const LABEL_A: u8 = 0;
pub const LABEL_B: u8 = 1;
pub const LABEL_BK: u8 = 2;

pub const LABEL_NAMES: [&str; 3] = ["a", "b", "b+k"];

/// A spanning subdigraph of `Cay(G; a, b, b+k)` with out-degree one: each
/// vertex leaves by a single label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSystem {
    label: Vec<u8>,
    succ: Vec<u32>,
}

impl ArcSystem {
    pub fn from_labels(t: &Triple<'_>, label: Vec<u8>) -> ArcSystem {
        let succ = t.g.elements().map(|v| t.step(v, label[v.index()]).index() as u32).collect();
        ArcSystem { label, succ }
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    pub fn label(&self, v: Elem) -> u8 {
        self.label[v.index()]
    }

    pub fn labels(&self) -> &[u8] {
        &self.label
    }

    pub fn succ(&self, v: Elem) -> Elem {
        Elem::new(self.succ[v.index()] as usize)
    }

    pub fn travels_by_a(&self, v: Elem) -> bool {
        self.label(v) == LABEL_A
    }

    /// Predecessor table, or `None` when some vertex has in-degree other than one.
    pub fn pred_table(&self) -> Option<Vec<u32>> {
        let mut pred = vec![u32::MAX; self.len()];
        for (v, &s) in self.succ.iter().enumerate() {
            if pred[s as usize] != u32::MAX {
                return None;
            }
            pred[s as usize] = v as u32;
        }
        Some(pred)
    }

    pub fn pred(&self, v: Elem) -> Elem {
        let p = self.succ.iter().position(|&s| s as usize == v.index()).expect("in-degree one");
        Elem::new(p)
    }

    /// In-degree one everywhere (the class 𝒞).
    pub fn in_class_c(&self) -> bool {
        self.pred_table().is_some()
    }

    /// In 𝒞, and each pair `{v, v+k}` has exactly one vertex leaving by `a` (the class ℰ).
    pub fn in_class_e(&self, t: &Triple<'_>) -> bool {
        self.in_class_c() && t.g.elements().all(|v| self.travels_by_a(v) != self.travels_by_a(t.add(v, t.k)))
    }

    /// Component id per vertex and the number of components (cycles of the
    /// successor permutation).
    pub fn components(&self) -> (Vec<u32>, usize) {
        let mut id = vec![u32::MAX; self.len()];
        let mut count = 0;
        for start in 0..self.len() {
            if id[start] != u32::MAX {
                continue;
            }
            let mut v = start;
            while id[v] == u32::MAX {
                id[v] = count as u32;
                v = self.succ[v] as usize;
            }
            count += 1;
        }
        (id, count)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    /// Hex SHA-256 of the label sequence.
    pub fn digest(&self) -> String {
        Sha256::digest(&self.label).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub(crate) fn set_arc(&mut self, t: &Triple<'_>, from: Elem, to: Elem) -> Result<()> {
        let l = t
            .label_between(from, to)
            .ok_or(Error::ArcNotInDigraph { from: from.index(), to: to.index() })?;
        self.label[from.index()] = l;
        self.succ[from.index()] = to.index() as u32;
        Ok(())
    }

    /// Labels along the single cycle through the identity.
    pub fn cycle_labels(&self) -> Vec<usize> {
        let mut v = Elem::IDENTITY;
        let mut out = Vec::with_capacity(self.len());
        for _ in 0..self.len() {
            out.push(self.label(v) as usize);
            v = self.succ(v);
        }
        out
    }
}

/// `σ(i)` is the index of the first of `u_1, u_2, u_3` met when following
/// the arcs onward from `u_i`.
pub fn return_permutation(h: &ArcSystem, us: [Elem; 3]) -> [usize; 3] {
    let mut sigma = [0; 3];
    for i in 0..3 {
        let mut v = h.succ(us[i]);
        loop {
            if let Some(j) = us.iter().position(|&u| u == v) {
                sigma[i] = j;
                break;
            }
            v = h.succ(v);
        }
    }
    sigma
}

pub fn is_even_permutation(sigma: [usize; 3]) -> bool {
    let mut seen = [false; 3];
    let mut cycles = 0;
    for i in 0..3 {
        if !seen[i] {
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = sigma[j];
            }
        }
    }
    cycles % 2 == 1
}

/// Replaces the arcs `u_i → v_i` by `u_1 → v_2`, `u_2 → v_3`, `u_3 → v_1`.
pub fn three_arc_rotate(t: &Triple<'_>, h: &ArcSystem, u1: Elem, u2: Elem, u3: Elem) -> Result<ArcSystem> {
    if u1 == u2 || u2 == u3 || u1 == u3 {
        return Err(Error::precondition("rotation vertices must be distinct"));
    }
    let (v1, v2, v3) = (h.succ(u1), h.succ(u2), h.succ(u3));
    let mut out = h.clone();
    out.set_arc(t, u1, v2)?;
    out.set_arc(t, u2, v3)?;
    out.set_arc(t, u3, v1)?;
    Ok(out)
}

/// Replaces the arcs `w_1 → u_1`, `w_2 → u_2` by `w_1 → u_2`, `w_2 → u_1`.
pub(crate) fn two_arc_swap(t: &Triple<'_>, h: &ArcSystem, w1: Elem, w2: Elem) -> Result<ArcSystem> {
    let (u1, u2) = (h.succ(w1), h.succ(w2));
    let mut out = h.clone();
    out.set_arc(t, w1, u2)?;
    out.set_arc(t, w2, u1)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, GroupSpec};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn permutation_parity() {
        assert!(is_even_permutation([0, 1, 2]));
        assert!(is_even_permutation([1, 2, 0]));
        assert!(!is_even_permutation([1, 0, 2]));
    }

    #[test]
    fn rotation_preserves_parity() {
        let g = FiniteGroup::build(&GroupSpec::abelian(&[6, 2])).unwrap();
        let el = |c: &[i64]| g.element(c).unwrap();
        let t = Triple::new(&g, el(&[1, 0]), el(&[2, 0]), el(&[0, 1])).unwrap();
        let f = super::super::CoordinateFrame::new(&t).unwrap();
        let mut h = super::super::h0_construct(&t, &f);
        let mut rng = StdRng::seed_from_u64(7);
        let mut applied = 0;
        for _ in 0..20_000 {
            let u1 = Elem::new(rng.gen_range(0..12));
            let u2 = Elem::new(rng.gen_range(0..12));
            let legal: Vec<ArcSystem> =
                g.elements().filter_map(|u3| three_arc_rotate(&t, &h, u1, u2, u3).ok()).collect();
            if legal.is_empty() {
                continue;
            }
            let next = legal[rng.gen_range(0..legal.len())].clone();
            assert!(next.in_class_c());
            assert_eq!(next.component_count() % 2, h.component_count() % 2);
            h = next;
            applied += 1;
        }
        assert!(applied > 500, "{applied}");
        assert!(three_arc_rotate(&t, &h, Elem::new(1), Elem::new(1), Elem::new(1)).is_err());
    }
}
