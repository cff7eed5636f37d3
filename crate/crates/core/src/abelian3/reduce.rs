use super::arcs::{
    is_even_permutation, return_permutation, three_arc_rotate, two_arc_swap, ArcSystem, LABEL_A, LABEL_B, LABEL_BK,
};
use super::{TraceStep, Triple};
use crate::error::Result;
use crate::group::{Elem, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReduceOutcome {
    Cycle(ArcSystem),
    /// No improving step was found; carries the component count reached.
    Stalled(usize),
}

/// Whether `h` lies in the family used when `L = ⟨a-b, k⟩ ≠ G`: vertices
/// outside `L` travel by `b` or `b+k`, and in each pair `{v, v+k} ⊆ L`
/// exactly one vertex travels by `a`.
pub fn in_family(t: &Triple<'_>, l: &Subgroup, h: &ArcSystem) -> bool {
    h.in_class_c()
        && t.g.elements().all(|v| {
            if l.contains(v) {
                h.travels_by_a(v) != h.travels_by_a(t.add(v, t.k))
            } else {
                !h.travels_by_a(v)
            }
        })
}

/// A member of the family: `⟨a-b⟩` travels by `a` when `k ∉ ⟨a-b⟩`;
/// otherwise `L = ⟨a-b⟩` has order `2s` and `j(a-b)` travels by `a` for
/// `j < s`, with `s(a-b) = k` taking `b+k`. Everything else takes `b`.
pub fn initial_member(t: &Triple<'_>) -> ArcSystem {
    let g = t.g;
    let w = t.w();
    let cyclic = g.subgroup_generated(&[w]);
    let mut labels = vec![LABEL_B; g.order()];
    if !cyclic.contains(t.k) {
        for &v in cyclic.members() {
            labels[v.index()] = LABEL_A;
        }
    } else {
        let s = cyclic.order() / 2;
        for j in 0..s {
            labels[g.pow(w, j as i64).index()] = LABEL_A;
        }
        labels[t.k.index()] = LABEL_BK;
    }
    ArcSystem::from_labels(t, labels)
}

/// Lowers the number of components until one remains.
pub fn reduce_components_nongenerating(t: &Triple<'_>, trace: &mut Vec<TraceStep>) -> Result<ReduceOutcome> {
    let g = t.g;
    let l = g.subgroup_generated(&[t.w(), t.k]);
    let mut h = initial_member(t);
    trace.push(TraceStep::new("initial", Elem::IDENTITY, &h));
    loop {
        let (comp, count) = h.components();
        if count == 1 {
            return Ok(ReduceOutcome::Cycle(h));
        }
        let split = |d: Elem| l.members().iter().copied().find(|&u| comp[u.index()] != comp[t.add(u, d).index()]);
        let Some(u) = split(t.k).or_else(|| split(t.w())) else {
            return Ok(ReduceOutcome::Stalled(count));
        };
        match improve(t, &h, u, trace) {
            Some(next) if next.component_count() < count && in_family(t, &l, &next) => h = next,
            _ => return Ok(ReduceOutcome::Stalled(count)),
        }
    }
}

fn improve(t: &Triple<'_>, h: &ArcSystem, u: Elem, trace: &mut Vec<TraceStep>) -> Option<ArcSystem> {
    let u1 = if h.travels_by_a(u) { u } else { t.add(u, t.k) };
    let u2 = t.add(u1, t.k);
    let v3 = t.add(t.add(u1, t.a), t.k);
    let mut h1 = h.clone();
    if !is_even_permutation(return_permutation(h, [u1, u2, h.pred(v3)])) {
        h1 = two_arc_swap(t, h, h.pred(u1), h.pred(u2)).ok()?;
        trace.push(TraceStep::new("swap", u1, &h1));
    }
    let us = [u1, u2, h1.pred(v3)];
    let sigma = return_permutation(&h1, us);
    if !is_even_permutation(sigma) {
        return None;
    }
    if sigma == [0, 1, 2] {
        let next = three_arc_rotate(t, &h1, us[0], us[1], us[2]).ok()?;
        trace.push(TraceStep::new("rotate", u1, &next));
        Some(next)
    } else {
        Some(h1)
    }
}
