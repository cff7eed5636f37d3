use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::cover::cover_ham_cycle;
use super::{Method, SearchOptions, SearchReport, SearchStats, Verdict};
use crate::cayley::{CayleyDigraph, Certificate};
use crate::group::Elem;

const FLUSH_EVERY: u64 = 4096;
pub(super) const PREFIXES_PER_WORKER: usize = 16;

/// Incremental walk with degree bookkeeping for pruning.
///
/// `avail_in[w]` counts predecessors of `w` that are unvisited or the current
/// endpoint; an unvisited vertex reaching zero can never be entered.
/// `avail_out[v]` counts successors still usable as a next step; only one
/// vertex, the final one, may sit at zero.
#[derive(Clone)]
struct Walker<'a> {
    n: usize,
    deg: usize,
    succ: &'a [u32],
    pred: &'a [u32],
    visited: Vec<bool>,
    avail_in: Vec<u32>,
    avail_out: Vec<u32>,
    dead_ends: u32,
    violations: u32,
    path: Vec<u32>,
    labels: Vec<usize>,
}

pub(super) fn predecessor_table(succ: &[u32], n: usize, deg: usize) -> Vec<u32> {
    let mut pred = vec![0u32; n * deg];
    for v in 0..n {
        for l in 0..deg {
            pred[succ[v * deg + l] as usize * deg + l] = v as u32;
        }
    }
    pred
}

impl<'a> Walker<'a> {
    fn new(succ: &'a [u32], pred: &'a [u32], n: usize, deg: usize, start: u32) -> Walker<'a> {
        let mut w = Walker {
            n,
            deg,
            succ,
            pred,
            visited: vec![false; n],
            avail_in: vec![deg as u32; n],
            avail_out: vec![0; n],
            dead_ends: 0,
            violations: 0,
            path: vec![start],
            labels: Vec::with_capacity(n),
        };
        w.visited[start as usize] = true;
        for v in 0..n {
            let outs = &succ[v * deg..(v + 1) * deg];
            w.avail_out[v] = outs.iter().filter(|&&t| t != start).count() as u32;
            if v as u32 != start && w.avail_out[v] == 0 {
                w.dead_ends += 1;
            }
        }
        w
    }

    fn valid(&self) -> bool {
        self.violations == 0 && self.dead_ends <= 1
    }

    fn current(&self) -> u32 {
        *self.path.last().expect("nonempty walk")
    }

    fn push(&mut self, label: usize) {
        let c = self.current() as usize;
        let next = self.succ[c * self.deg + label];
        self.visited[next as usize] = true;
        for l in (0..self.deg).filter(|&l| l != label) {
            let w = self.succ[c * self.deg + l];
            if !self.visited[w as usize] {
                self.avail_in[w as usize] -= 1;
                if self.avail_in[w as usize] == 0 {
                    self.violations += 1;
                }
            }
        }
        for l in 0..self.deg {
            let p = self.pred[next as usize * self.deg + l] as usize;
            if p != c && !self.visited[p] {
                self.avail_out[p] -= 1;
                if self.avail_out[p] == 0 {
                    self.dead_ends += 1;
                }
            }
        }
        if self.avail_out[next as usize] == 0 {
            self.dead_ends -= 1;
        }
        self.path.push(next);
        self.labels.push(label);
    }

    fn pop(&mut self) {
        let next = self.path.pop().expect("nonempty walk");
        let label = self.labels.pop().expect("nonempty walk");
        let c = self.current() as usize;
        if self.avail_out[next as usize] == 0 {
            self.dead_ends += 1;
        }
        for l in 0..self.deg {
            let p = self.pred[next as usize * self.deg + l] as usize;
            if p != c && !self.visited[p] {
                if self.avail_out[p] == 0 {
                    self.dead_ends -= 1;
                }
                self.avail_out[p] += 1;
            }
        }
        for l in (0..self.deg).filter(|&l| l != label) {
            let w = self.succ[c * self.deg + l];
            if !self.visited[w as usize] {
                if self.avail_in[w as usize] == 0 {
                    self.violations -= 1;
                }
                self.avail_in[w as usize] += 1;
            }
        }
        self.visited[next as usize] = false;
    }

    /// Labels worth trying from the current vertex, in generator order. An
    /// unvisited successor that only the current vertex can still enter must
    /// be taken next.
    fn candidates(&self) -> Vec<usize> {
        let c = self.current() as usize;
        let mut out = Vec::with_capacity(self.deg);
        for l in 0..self.deg {
            let w = self.succ[c * self.deg + l] as usize;
            if self.visited[w] {
                continue;
            }
            if self.avail_in[w] == 1 {
                return vec![l];
            }
            out.push(l);
        }
        out
    }
}

pub(super) struct Budget<'s> {
    pub(super) local: u64,
    pub(super) flushed: u64,
    pub(super) cap: u64,
    pub(super) shared: Option<&'s AtomicU64>,
    pub(super) stop: &'s dyn Fn() -> bool,
}

impl Budget<'_> {
    pub(super) fn tick(&mut self) -> bool {
        self.local += 1;
        match self.shared {
            None => self.local <= self.cap,
            Some(total) => {
                if self.local - self.flushed >= FLUSH_EVERY {
                    let delta = self.local - self.flushed;
                    self.flushed = self.local;
                    let t = total.fetch_add(delta, Ordering::Relaxed) + delta;
                    if t > self.cap || (self.stop)() {
                        return false;
                    }
                }
                true
            }
        }
    }

    pub(super) fn finish(&mut self) {
        if let Some(total) = self.shared {
            total.fetch_add(self.local - self.flushed, Ordering::Relaxed);
            self.flushed = self.local;
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq)]
pub(super) enum Flow {
    Continue,
    Stop,
    Abort,
}

fn explore(w: &mut Walker<'_>, budget: &mut Budget<'_>, visit: &mut dyn FnMut(&[usize]) -> bool) -> Flow {
    if !budget.tick() {
        return Flow::Abort;
    }
    if w.path.len() == w.n {
        return if visit(&w.labels) { Flow::Stop } else { Flow::Continue };
    }
    for l in w.candidates() {
        w.push(l);
        let flow = if w.valid() { explore(w, budget, visit) } else { Flow::Continue };
        w.pop();
        if flow != Flow::Continue {
            return flow;
        }
    }
    Flow::Continue
}

/// Valid label prefixes in enumeration order, deep enough to feed the workers.
fn prefixes(root: &Walker<'_>, want: usize) -> (Vec<Vec<usize>>, u64) {
    let mut level = vec![Vec::new()];
    let mut nodes = 0;
    let max_depth = root.n.saturating_sub(2);
    for _ in 0..max_depth {
        if level.len() >= want || level.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for prefix in &level {
            let mut w = root.clone();
            for &l in prefix {
                w.push(l);
            }
            nodes += 1;
            for l in w.candidates() {
                w.push(l);
                if w.valid() {
                    let mut p = prefix.clone();
                    p.push(l);
                    next.push(p);
                }
                w.pop();
            }
        }
        level = next;
    }
    (level, nodes)
}

fn run(d: &CayleyDigraph<'_>, start: Elem, opts: &SearchOptions) -> SearchReport {
    let n = d.order();
    let deg = d.degree();
    let report = |verdict, labels: Option<Vec<usize>>, nodes| SearchReport {
        verdict,
        certificate: labels.map(|labels| Certificate::path(start, labels)),
        stats: SearchStats { nodes, patterns: 0 },
        method: Method::Dfs,
    };
    if n == 1 {
        return report(Verdict::Exists, Some(vec![]), 0);
    }
    if deg == 0 || !d.is_connected() {
        return report(Verdict::NotExists, None, 0);
    }
    let succ = d.successor_table();
    let pred = predecessor_table(succ, n, deg);
    let root = Walker::new(succ, &pred, n, deg, start.index() as u32);
    if !root.valid() {
        return report(Verdict::NotExists, None, 1);
    }

    if opts.workers <= 1 {
        let mut w = root;
        let never = || false;
        let mut budget = Budget { local: 0, flushed: 0, cap: opts.node_cap, shared: None, stop: &never };
        let mut found = None;
        let flow = explore(&mut w, &mut budget, &mut |labels| {
            found = Some(labels.to_vec());
            true
        });
        let verdict = match flow {
            Flow::Stop => Verdict::Exists,
            Flow::Abort => Verdict::Unknown,
            Flow::Continue => Verdict::NotExists,
        };
        return report(verdict, found, budget.local);
    }

    let (prefixes, prefix_nodes) = prefixes(&root, opts.workers * PREFIXES_PER_WORKER);
    let total = AtomicU64::new(prefix_nodes);
    let best = AtomicUsize::new(usize::MAX);
    let aborted = AtomicBool::new(false);
    let found = opts.pool().install(|| {
        prefixes.par_iter().enumerate().find_map_first(|(i, prefix)| {
            if best.load(Ordering::Relaxed) < i {
                return None;
            }
            let mut w = root.clone();
            for &l in prefix {
                w.push(l);
            }
            let stop = || best.load(Ordering::Relaxed) < i;
            let mut budget = Budget { local: 0, flushed: 0, cap: opts.node_cap, shared: Some(&total), stop: &stop };
            let mut hit = None;
            let flow = explore(&mut w, &mut budget, &mut |labels| {
                hit = Some(labels.to_vec());
                true
            });
            budget.finish();
            match flow {
                Flow::Stop => {
                    best.fetch_min(i, Ordering::Relaxed);
                    hit
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

/// Exhaustive backtracking for a hamiltonian path. The start defaults to the
/// identity, which loses nothing because Cayley digraphs are vertex-transitive.
pub fn dfs_ham_path(d: &CayleyDigraph<'_>, start: Option<Elem>, opts: &SearchOptions) -> SearchReport {
    run(d, start.unwrap_or(Elem::IDENTITY), opts)
}

/// Exhaustive backtracking for a hamiltonian cycle, reported from the
/// identity.
pub fn dfs_ham_cycle(d: &CayleyDigraph<'_>, opts: &SearchOptions) -> SearchReport {
    cover_ham_cycle(d, opts)
}

/// Every hamiltonian path from `start`, up to `limit` of them, in search
/// order. The flag is false if the limit cut the enumeration short.
pub fn enumerate_ham_paths(d: &CayleyDigraph<'_>, start: Elem, limit: usize) -> (Vec<Certificate>, bool) {
    let n = d.order();
    if n == 1 {
        return (vec![Certificate::path(start, vec![])], true);
    }
    if d.degree() == 0 {
        return (vec![], true);
    }
    let succ = d.successor_table();
    let pred = predecessor_table(succ, n, d.degree());
    let mut w = Walker::new(succ, &pred, n, d.degree(), start.index() as u32);
    let mut out = Vec::new();
    if !w.valid() {
        return (out, true);
    }
    let never = || false;
    let mut budget = Budget { local: 0, flushed: 0, cap: u64::MAX, shared: None, stop: &never };
    let flow = explore(&mut w, &mut budget, &mut |labels| {
        out.push(Certificate::path(start, labels.to_vec()));
        out.len() >= limit
    });
    (out, flow == Flow::Continue)
}
