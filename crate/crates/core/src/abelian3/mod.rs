//! Hamiltonian cycles in `Cay(G; a, b, b+k)` for abelian `G` with `|k| = 2`,
//! built by arc surgery on spanning subdigraphs. The group is written
//! additively.

mod arcs;
mod frame;
mod reduce;
mod schedule;

use serde::Serialize;

pub use arcs::{is_even_permutation, return_permutation, three_arc_rotate, ArcSystem, LABEL_NAMES};
pub use frame::{h0_component_formula, h0_construct, CoordinateFrame, Decomposition};
pub use reduce::{in_family, initial_member, reduce_components_nongenerating, ReduceOutcome};
pub use schedule::{amalgamate, amalgamate_pair};

use crate::cayley::{CayleyDigraph, Certificate};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::search::{dfs_ham_cycle, SearchOptions, Verdict};

/// Validated input `(G, a, b, k)`; the generators are `a`, `b`, `b+k` in that order.
#[derive(Clone, Copy, Debug)]
pub struct Triple<'g> {
    pub g: &'g FiniteGroup,
    pub a: Elem,
    pub b: Elem,
    pub k: Elem,
    gens: [Elem; 3],
}

impl<'g> Triple<'g> {
    pub fn new(g: &'g FiniteGroup, a: Elem, b: Elem, k: Elem) -> Result<Triple<'g>> {
        if !g.is_abelian() {
            return Err(Error::NotAbelian);
        }
        if g.elements().any(|x| g.element_order(x) == g.order()) {
            return Err(Error::precondition("G is cyclic"));
        }
        if g.element_order(k) != 2 {
            return Err(Error::precondition("k must have order 2"));
        }
        let bk = g.mul(b, k);
        if a == b || a == bk || [a, b, bk].contains(&Elem::IDENTITY) {
            return Err(Error::precondition("a, b, b+k must be distinct and nontrivial"));
        }
        if !g.generates(&[a, b, k]) {
            return Err(Error::NotGenerating);
        }
        Ok(Triple { g, a, b, k, gens: [a, b, bk] })
    }

    pub fn gens(&self) -> [Elem; 3] {
        self.gens
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.g.mul(x, y)
    }

    /// `a - b`.
    pub fn w(&self) -> Elem {
        self.g.mul(self.a, self.g.inv(self.b))
    }

    pub fn step(&self, v: Elem, label: u8) -> Elem {
        self.g.mul(v, self.gens[label as usize])
    }

    pub fn label_between(&self, from: Elem, to: Elem) -> Option<u8> {
        (0..3u8).find(|&l| self.step(from, l) == to)
    }

    /// `|G : ⟨b, k⟩|`.
    pub fn index_bk(&self) -> usize {
        self.g.subgroup_generated(&[self.b, self.k]).index_in(self.g)
    }
}

/// One line of the step trace.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TraceStep {
    pub op: &'static str,
    pub u: usize,
    pub components: usize,
    pub digest: String,
}

impl TraceStep {
    fn new(op: &'static str, u: Elem, h: &ArcSystem) -> TraceStep {
        TraceStep { op, u: u.index(), components: h.component_count(), digest: h.digest() }
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `⟨a-b, k⟩ ≠ G`.
    NonGenerating,
    /// `⟨b, k⟩ = G`.
    BkGenerates,
    OddIndexKOutsideA,
    OddIndexKInsideA,
    EvenIndex,
}

/// Everything recorded while building the cycle.
#[derive(Clone, Debug, Serialize)]
pub struct Abelian3Run {
    pub route: Route,
    pub decomposition: Option<Decomposition>,
    pub frame: Option<CoordinateFrame>,
    pub trace: Vec<TraceStep>,
    /// Stalls that forced a fallback to exhaustive search.
    pub incidents: Vec<String>,
    #[serde(skip)]
    pub certificate: Certificate,
}

impl Abelian3Run {
    /// The step trace, one JSON object per line.
    pub fn trace_jsonl(&self) -> String {
        self.trace.iter().map(|s| serde_json::to_string(s).expect("serializable") + "\n").collect()
    }
}

/// Hamiltonian cycle in `Cay(G; a, b, b+k)`; labels 0, 1, 2 are `a`, `b`, `b+k`.
pub fn abelian3_ham_cycle(g: &FiniteGroup, a: Elem, b: Elem, k: Elem) -> Result<Abelian3Run> {
    let t = Triple::new(g, a, b, k)?;
    let d = CayleyDigraph::from_elems(g, &t.gens())?;
    let mut trace = Vec::new();
    let mut incidents = Vec::new();
    let mut decomposition = None;
    let mut frame = None;

    let (route, labels) = if !g.generates(&[t.w(), t.k]) {
        let labels = match reduce_components_nongenerating(&t, &mut trace)? {
            ReduceOutcome::Cycle(h) => h.cycle_labels(),
            ReduceOutcome::Stalled(c) => {
                incidents.push(format!("improvement stalled at {c} components; used exhaustive search"));
                let report = dfs_ham_cycle(&d, &SearchOptions::default());
                match (report.verdict, report.certificate) {
                    (Verdict::Exists, Some(cert)) => cert.labels,
                    (v, _) => return Err(Error::ConstructionFailed(format!("fallback search returned {v}"))),
                }
            }
        };
        (Route::NonGenerating, labels)
    } else {
        decomposition = Some(Decomposition::project(&t)?);
        if g.generates(&[t.b, t.k]) {
            (Route::BkGenerates, bk_cycle_labels(&t))
        } else {
            let f = CoordinateFrame::new(&t)?;
            let h0 = h0_construct(&t, &f);
            trace.push(TraceStep::new("h0", Elem::IDENTITY, &h0));
            let (route, h) = if t.index_bk() % 2 == 0 {
                (Route::EvenIndex, schedule::even_index(&t, &f, h0, &mut trace)?)
            } else if f.k_in_a {
                (Route::OddIndexKInsideA, schedule::odd_index_k_inside(&t, &f, h0, &mut trace)?)
            } else {
                (Route::OddIndexKOutsideA, schedule::odd_index_k_outside(&t, &f, h0, &mut trace)?)
            };
            frame = Some(f);
            (route, h.cycle_labels())
        }
    };

    let certificate = Certificate::cycle(Elem::IDENTITY, labels);
    d.verify(&certificate).map_err(|e| Error::ConstructionFailed(e.to_string()))?;
    Ok(Abelian3Run { route, decomposition, frame, trace, incidents, certificate })
}

/// `G = ⟨b⟩ ⊕ ⟨k⟩`: `(b)^{|G|}` or `(b+k)^{|G|}` when either is cyclic of
/// full order, otherwise `((b)^{|b|-1}, b+k)^2`.
fn bk_cycle_labels(t: &Triple<'_>) -> Vec<usize> {
    let n = t.g.order();
    if t.g.element_order(t.b) == n {
        return vec![1; n];
    }
    if t.g.element_order(t.gens[2]) == n {
        return vec![2; n];
    }
    let half: Vec<usize> = std::iter::repeat_n(1, t.g.element_order(t.b) - 1).chain([2]).collect();
    half.repeat(2)
}
