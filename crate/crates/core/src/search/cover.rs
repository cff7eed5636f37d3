use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::dfs::{predecessor_table, Budget, Flow, PREFIXES_PER_WORKER};
use super::{Method, SearchOptions, SearchReport, SearchStats, Verdict};
use crate::cayley::{CayleyDigraph, Certificate, WalkKind};
use crate::group::Elem;

const NONE: u32 = u32::MAX;

/// Partial choice of one out-arc and one in-arc per vertex.
///
/// Chosen arcs form vertex-disjoint paths. `other[x]` is the far end of the
/// path ending or starting at `x`, so an arc that would close a path into a
/// cycle shorter than `n` is recognised in constant time. Labels below
/// `min_label` are excluded everywhere. `out_opts` and `in_opts` count the
/// allowed arcs at each slot, and `buckets` holds one bitset of open slots
/// per count, slot `2v` being the out-slot of `v` and `2v + 1` its in-slot.
/// `trail` records the arcs whose allowance each assignment revoked, as
/// `v * deg + l`.
#[derive(Clone)]
struct Cover<'a> {
    n: usize,
    deg: usize,
    succ: &'a [u32],
    pred: &'a [u32],
    out: Vec<u32>,
    inn: Vec<u32>,
    other: Vec<u32>,
    arcs: usize,
    min_label: usize,
    out_opts: Vec<u32>,
    in_opts: Vec<u32>,
    words: usize,
    buckets: Vec<u64>,
    trail: Vec<u32>,
}

/// Where to branch next: the out-slot of a vertex or the in-slot of one.
#[derive(Copy, Clone)]
enum Slot {
    Out(usize),
    In(usize),
}

enum Pick {
    Done,
    Dead,
    Branch(Slot),
}

impl<'a> Cover<'a> {
    fn new(succ: &'a [u32], pred: &'a [u32], n: usize, deg: usize) -> Cover<'a> {
        Cover {
            n,
            deg,
            succ,
            pred,
            out: vec![NONE; n],
            inn: vec![NONE; n],
            other: (0..n as u32).collect(),
            arcs: 0,
            min_label: 0,
            out_opts: vec![0; n],
            in_opts: vec![0; n],
            words: (2 * n).div_ceil(64),
            buckets: vec![0; (deg + 1) * (2 * n).div_ceil(64)],
            trail: Vec::new(),
        }
    }

    fn with_min_label(&self, min_label: usize) -> Cover<'a> {
        let mut c = self.clone();
        c.min_label = min_label;
        c.recount();
        c
    }

    fn recount(&mut self) {
        self.out_opts.fill(0);
        self.in_opts.fill(0);
        self.buckets.fill(0);
        for v in 0..self.n {
            for l in 0..self.deg {
                if self.allowed(v, l) {
                    self.out_opts[v] += 1;
                    self.in_opts[self.succ[v * self.deg + l] as usize] += 1;
                }
            }
        }
        for v in 0..self.n {
            if self.out[v] == NONE {
                self.toggle(self.out_opts[v], 2 * v);
            }
            if self.inn[v] == NONE {
                self.toggle(self.in_opts[v], 2 * v + 1);
            }
        }
    }

    fn toggle(&mut self, count: u32, slot: usize) {
        self.buckets[count as usize * self.words + slot / 64] ^= 1 << (slot % 64);
    }

    /// Moves the count of one endpoint of arc `(v, l)` by `delta`.
    fn shift(&mut self, v: usize, l: usize, delta: i32) {
        let w = self.succ[v * self.deg + l] as usize;
        let (o, i) = (self.out_opts[v], self.in_opts[w]);
        self.out_opts[v] = (o as i32 + delta) as u32;
        self.in_opts[w] = (i as i32 + delta) as u32;
        if self.out[v] == NONE {
            self.toggle(o, 2 * v);
            self.toggle(self.out_opts[v], 2 * v);
        }
        if self.inn[w] == NONE {
            self.toggle(i, 2 * w + 1);
            self.toggle(self.in_opts[w], 2 * w + 1);
        }
    }

    fn revoke(&mut self, v: usize, l: usize) {
        self.shift(v, l, -1);
        self.trail.push((v * self.deg + l) as u32);
    }

    fn allowed(&self, v: usize, l: usize) -> bool {
        let w = self.succ[v * self.deg + l] as usize;
        l >= self.min_label
            && self.out[v] == NONE
            && self.inn[w] == NONE
            && (self.other[v] as usize != w || self.arcs + 1 == self.n)
    }

    fn arc_for(&self, slot: Slot, l: usize) -> usize {
        match slot {
            Slot::Out(v) => v,
            Slot::In(w) => self.pred[w * self.deg + l] as usize,
        }
    }

    /// The open slot with the fewest options, first in vertex order.
    fn pick(&self) -> Pick {
        if self.arcs == self.n {
            return Pick::Done;
        }
        for (count, bucket) in self.buckets.chunks(self.words).enumerate() {
            if let Some((i, word)) = bucket.iter().enumerate().find(|(_, &w)| w != 0) {
                if count == 0 {
                    return Pick::Dead;
                }
                let slot = i * 64 + word.trailing_zeros() as usize;
                return Pick::Branch(if slot.is_multiple_of(2) { Slot::Out(slot / 2) } else { Slot::In(slot / 2) });
            }
        }
        unreachable!("an open slot remains while arcs are missing")
    }

    fn choices(&self, slot: Slot) -> Vec<(usize, usize)> {
        (0..self.deg).map(|l| (self.arc_for(slot, l), l)).filter(|&(v, l)| self.allowed(v, l)).collect()
    }

    /// Adds the arc and returns what `unassign` needs to undo it.
    fn assign(&mut self, v: usize, l: usize) -> (u32, u32, usize) {
        let deg = self.deg;
        let w = self.succ[v * deg + l] as usize;
        let mark = self.trail.len();
        for k in 0..deg {
            if self.allowed(v, k) {
                self.revoke(v, k);
            }
            let p = self.pred[w * deg + k] as usize;
            if p != v && self.allowed(p, k) {
                self.revoke(p, k);
            }
        }
        let (head, tail) = (self.other[v], self.other[w]);
        self.toggle(self.out_opts[v], 2 * v);
        self.toggle(self.in_opts[w], 2 * w + 1);
        self.out[v] = l as u32;
        self.inn[w] = l as u32;
        self.arcs += 1;
        if self.arcs + 1 < self.n {
            // An arc from the new tail to the new head would now close a short cycle.
            for k in 0..deg {
                if self.succ[tail as usize * deg + k] == head && self.allowed(tail as usize, k) {
                    self.revoke(tail as usize, k);
                }
            }
        }
        self.other[head as usize] = tail;
        self.other[tail as usize] = head;
        (head, tail, mark)
    }

    fn unassign(&mut self, v: usize, l: usize, (head, tail, mark): (u32, u32, usize)) {
        let w = self.succ[v * self.deg + l] as usize;
        self.other[tail as usize] = w as u32;
        self.other[head as usize] = v as u32;
        self.out[v] = NONE;
        self.inn[w] = NONE;
        self.arcs -= 1;
        self.toggle(self.out_opts[v], 2 * v);
        self.toggle(self.in_opts[w], 2 * w + 1);
        while self.trail.len() > mark {
            let arc = self.trail.pop().expect("trail entry") as usize;
            self.shift(arc / self.deg, arc % self.deg, 1);
        }
    }

    fn labels_from(&self, start: usize) -> Vec<usize> {
        let mut labels = Vec::with_capacity(self.n);
        let mut v = start;
        for _ in 0..self.n {
            let l = self.out[v] as usize;
            labels.push(l);
            v = self.succ[v * self.deg + l] as usize;
        }
        labels
    }
}

fn explore(c: &mut Cover<'_>, budget: &mut Budget<'_>) -> Flow {
    if !budget.tick() {
        return Flow::Abort;
    }
    let slot = match c.pick() {
        Pick::Done => return Flow::Stop,
        Pick::Dead => return Flow::Continue,
        Pick::Branch(slot) => slot,
    };
    for l in 0..c.deg {
        let v = c.arc_for(slot, l);
        if !c.allowed(v, l) {
            continue;
        }
        let undo = c.assign(v, l);
        let flow = explore(c, budget);
        if flow != Flow::Continue {
            return flow;
        }
        c.unassign(v, l, undo);
    }
    Flow::Continue
}

/// A subproblem: the smallest label in use, then the arcs chosen so far.
type Prefix = (usize, Vec<(usize, usize)>);

/// Top-level subproblems. Left translation is an automorphism, so any
/// hamiltonian cycle can be moved to leave `start` by the smallest label it
/// uses.
fn roots(root: &Cover<'_>, start: usize) -> Vec<Prefix> {
    (0..root.deg).map(|m| (m, vec![(start, m)])).collect()
}

fn build<'a>(root: &Cover<'a>, prefix: &Prefix) -> Option<Cover<'a>> {
    let mut c = root.with_min_label(prefix.0);
    for &(v, l) in &prefix.1 {
        if !c.allowed(v, l) {
            return None;
        }
        c.assign(v, l);
    }
    Some(c)
}

/// Subproblems in search order, enough to feed the workers.
fn prefixes(root: &Cover<'_>, start: usize, want: usize) -> (Vec<Prefix>, u64) {
    let mut level: Vec<Prefix> = roots(root, start).into_iter().filter(|p| build(root, p).is_some()).collect();
    let mut nodes = 0;
    for _ in 0..root.n {
        if level.len() >= want || level.is_empty() {
            break;
        }
        let mut next = Vec::new();
        let mut grew = false;
        for p in level {
            let c = build(root, &p).expect("replayable prefix");
            nodes += 1;
            match c.pick() {
                Pick::Done => next.push(p),
                Pick::Dead => {}
                Pick::Branch(slot) => {
                    grew = true;
                    for arc in c.choices(slot) {
                        let mut q = p.clone();
                        q.1.push(arc);
                        next.push(q);
                    }
                }
            }
        }
        level = next;
        if !grew {
            break;
        }
    }
    (level, nodes)
}

/// Hamiltonian cycle search by choosing arcs rather than walking.
///
/// Each step branches on the out-slot or in-slot with the fewest remaining
/// arcs, so forced arcs anywhere in the digraph are taken at once, and arcs
/// that would close a short cycle are never offered.
pub(super) fn cover_ham_cycle(d: &CayleyDigraph<'_>, opts: &SearchOptions) -> SearchReport {
    let n = d.order();
    let start = Elem::IDENTITY;
    let report = |verdict, labels: Option<Vec<usize>>, nodes| SearchReport {
        verdict,
        certificate: labels.map(|labels| Certificate { kind: WalkKind::Cycle, start, labels }),
        stats: SearchStats { nodes, patterns: 0 },
        method: Method::Dfs,
    };
    let deg = d.degree();
    if n == 1 || deg == 0 || !d.is_connected() {
        return report(Verdict::NotExists, None, 0);
    }
    let succ = d.successor_table();
    let pred = predecessor_table(succ, n, deg);
    let root = Cover::new(succ, &pred, n, deg);
    let s = start.index();

    if opts.workers <= 1 {
        let never = || false;
        let mut budget = Budget { local: 0, flushed: 0, cap: opts.node_cap, shared: None, stop: &never };
        for p in roots(&root, s) {
            let Some(mut c) = build(&root, &p) else { continue };
            match explore(&mut c, &mut budget) {
                Flow::Stop => return report(Verdict::Exists, Some(c.labels_from(s)), budget.local),
                Flow::Abort => return report(Verdict::Unknown, None, budget.local),
                Flow::Continue => {}
            }
        }
        return report(Verdict::NotExists, None, budget.local);
    }

    let (prefixes, prefix_nodes) = prefixes(&root, s, opts.workers * PREFIXES_PER_WORKER);
    let total = AtomicU64::new(prefix_nodes);
    let best = AtomicUsize::new(usize::MAX);
    let aborted = AtomicBool::new(false);
    let found = opts.pool().install(|| {
        prefixes.par_iter().enumerate().find_map_first(|(i, p)| {
            if best.load(Ordering::Relaxed) < i {
                return None;
            }
            let mut c = build(&root, p).expect("replayable prefix");
            let stop = || best.load(Ordering::Relaxed) < i;
            let mut budget = Budget { local: 0, flushed: 0, cap: opts.node_cap, shared: Some(&total), stop: &stop };
            let flow = explore(&mut c, &mut budget);
            budget.finish();
            match flow {
                Flow::Stop => {
                    best.fetch_min(i, Ordering::Relaxed);
                    Some(c.labels_from(s))
                }
                Flow::Abort => {
                    if best.load(Ordering::Relaxed) > i {
                        aborted.store(true, Ordering::Relaxed);
                    }
                    None
                }
                Flow::Continue => None,
            }
        })
    });
    let nodes = total.load(Ordering::Relaxed);
    match found {
        Some(labels) => report(Verdict::Exists, Some(labels), nodes),
        None if aborted.load(Ordering::Relaxed) => report(Verdict::Unknown, None, nodes),
        None => report(Verdict::NotExists, None, nodes),
    }
}
