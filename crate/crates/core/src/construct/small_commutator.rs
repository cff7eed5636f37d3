//! Hamiltonian paths when `[G, G]` is cyclic of prime-power order and every
//! element either centralizes or inverts it.

use std::cell::RefCell;

use serde::Serialize;

use super::abelian::concat_lift_word;
use super::lift::skewed_word;
use super::{abelian_path_word, certify, power_word};
use crate::cayley::{CayleyDigraph, Certificate, WalkKind};
use crate::error::{Error, Result};
use crate::group::{prime_factors, Elem, FiniteGroup, Subgroup};
use crate::search::{structured_ham_path_2gen, SearchOptions};

/// One step of the recursion, outermost first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ScStep {
    /// Abelian group handled directly.
    Abelian { order: usize },
    /// Reduced to `N = ⟨a, b⟩`.
    ConcatLift { order: usize, n_order: usize },
    /// Recursed into the normal closure of the arc-forcing subgroup.
    NormalClosure { order: usize, closure_order: usize, outer: Vec<usize> },
    /// Both generators invert the commutator subgroup; pattern search.
    Nilpotent { order: usize },
    /// `a` centralizes `[G, G]`: outer cycle `(aⁿ)` with `a = āz`.
    Centralizing { order: usize, n: usize, z: usize },
}

/// Checks that `[G, G]` is cyclic of prime-power order and that every
/// element centralizes or inverts it.
pub fn check_small_commutator(g: &FiniteGroup) -> Result<()> {
    let c = g.commutator_subgroup();
    if c.is_trivial() {
        return Ok(());
    }
    if c.cyclic_generator(g).is_none() || prime_factors(c.order() as u64).len() != 1 {
        return Err(Error::precondition(format!(
            "[G,G] has order {} but is not cyclic of prime-power order",
            c.order()
        )));
    }
    if let Some(x) = g.elements().find(|&x| !g.centralizes(x, &c) && !g.inverts(x, &c)) {
        return Err(Error::precondition(format!(
            "element {} neither centralizes nor inverts [G,G]",
            g.format_elem(x)
        )));
    }
    Ok(())
}

struct Recursion {
    trace: RefCell<Vec<ScStep>>,
}

impl Recursion {
    fn word(&self, g: &FiniteGroup, gens: &[Elem]) -> Result<Vec<Elem>> {
        if g.order() == 1 {
            return Ok(Vec::new());
        }
        if g.is_abelian() {
            self.trace.borrow_mut().push(ScStep::Abelian { order: g.order() });
            return abelian_path_word(g, gens);
        }
        let c = g.commutator_subgroup();
        let (a, b) = first_commutator_pair(g, gens, &c)?;
        if gens.len() == 2 {
            return self.two_generated(g, a, b, &c);
        }
        let n = g.subgroup_generated(&[a, b]);
        self.trace.borrow_mut().push(ScStep::ConcatLift { order: g.order(), n_order: n.order() });
        let emb = g.embedded(&n);
        let (la, lb) = (emb.pull(a).expect("a in N"), emb.pull(b).expect("b in N"));
        let c_n = emb.group.commutator_subgroup();
        let inner: Vec<Elem> =
            self.two_generated(&emb.group, la, lb, &c_n)?.into_iter().map(|x| emb.embed(x)).collect();
        concat_lift_word(g, gens, &n, &inner)
    }

    fn two_generated(&self, g: &FiniteGroup, a: Elem, b: Elem, c: &Subgroup) -> Result<Vec<Elem>> {
        let h = g.subgroup_generated(&[g.mul(b, g.inv(a))]);
        let hg = g.normal_closure(&h);
        if hg.order() != g.order() {
            return self.normal_closure_step(g, a, b, &h, &hg, c);
        }
        let (a, b) = if g.centralizes(a, c) {
            (a, b)
        } else if g.centralizes(b, c) {
            (b, a)
        } else {
            self.trace.borrow_mut().push(ScStep::Nilpotent { order: g.order() });
            let d = CayleyDigraph::from_elems(g, &[a, b])?;
            let report = structured_ham_path_2gen(&d, &SearchOptions::default())?;
            return report
                .certificate
                .map(|cert| cert.word(&d))
                .ok_or_else(|| Error::ConstructionFailed("no path in nilpotent two-generated digraph".into()));
        };
        self.centralizing_step(g, a, b, &h, c)
    }

    fn normal_closure_step(
        &self,
        g: &FiniteGroup,
        a: Elem,
        b: Elem,
        h: &Subgroup,
        hg: &Subgroup,
        c: &Subgroup,
    ) -> Result<Vec<Elem>> {
        let gens = [a, b];
        let n = hg.index_in(g);
        let outer = if h.order() == hg.order() {
            vec![a; n]
        } else {
            let m = unique_maximal(g, h, hg, c);
            find_outer_cycle(g, &gens, n, &m)
                .ok_or_else(|| Error::ConstructionFailed("no outer cycle leaves the maximal subgroup".into()))?
        };
        self.trace.borrow_mut().push(ScStep::NormalClosure {
            order: g.order(),
            closure_order: hg.order(),
            outer: outer.iter().map(|x| x.index()).collect(),
        });
        skewed_word(g, &gens, hg, &outer, &|k, t| self.word(k, t))
    }

    fn centralizing_step(&self, g: &FiniteGroup, a: Elem, b: Elem, h: &Subgroup, c: &Subgroup) -> Result<Vec<Elem>> {
        let z = c
            .members()
            .iter()
            .copied()
            .find(|&z| h.contains(g.mul(a, g.inv(z))))
            .ok_or_else(|| Error::precondition("a is not in H[G,G]"))?;
        let mut hz = h.members().to_vec();
        hz.push(z);
        if g.subgroup_generated(&hz).order() != g.order() {
            return Err(Error::precondition("H<z> is not all of G"));
        }
        let n = h.index_in(g);
        self.trace.borrow_mut().push(ScStep::Centralizing { order: g.order(), n, z: z.index() });
        let outer: Vec<Elem> = power_word(a, n).collect();
        skewed_word(g, &[a, b], h, &outer, &abelian_path_word)
    }
}

/// First pair in generator order whose commutator generates `[G, G]`.
fn first_commutator_pair(g: &FiniteGroup, gens: &[Elem], c: &Subgroup) -> Result<(Elem, Elem)> {
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            if g.subgroup_generated(&[g.commutator(a, b)]).order() == c.order() {
                return Ok((a, b));
            }
        }
    }
    Err(Error::precondition("no pair of generators has a commutator generating [G,G]"))
}

/// `M = H · {x^p : x ∈ H^G ∩ [G, G]}`.
fn unique_maximal(g: &FiniteGroup, h: &Subgroup, hg: &Subgroup, c: &Subgroup) -> Subgroup {
    let p = prime_factors(c.order() as u64)[0] as i64;
    let mut gens: Vec<Elem> = h.generators().to_vec();
    gens.extend(c.members().iter().filter(|&&x| hg.contains(x)).map(|&x| g.pow(x, p)));
    g.subgroup_generated(&gens)
}

/// A word of length `n` over `gens` whose product lies outside `M`. Every
/// such word is a hamiltonian cycle in `G/H^G`. The shapes `(x^{n-1}, w)`
/// and `(x^{n-2}, y, w)` are tried first, then all words up to a budget.
fn find_outer_cycle(g: &FiniteGroup, gens: &[Elem], n: usize, m: &Subgroup) -> Option<Vec<Elem>> {
    for &x in gens {
        for &y in gens {
            for &w in gens {
                let mut first: Vec<Elem> = power_word(x, n - 1).collect();
                first.push(w);
                if !m.contains(g.product(&first)) {
                    return Some(first);
                }
                if n >= 2 {
                    let mut second: Vec<Elem> = power_word(x, n - 2).collect();
                    second.extend([y, w]);
                    if !m.contains(g.product(&second)) {
                        return Some(second);
                    }
                }
            }
        }
    }
    const WORD_BUDGET: usize = 1 << 20;
    let mut digits = vec![0usize; n];
    for _ in 0..WORD_BUDGET {
        let word: Vec<Elem> = digits.iter().map(|&i| gens[i]).collect();
        if !m.contains(g.product(&word)) {
            return Some(word);
        }
        let pos = digits.iter().rposition(|&i| i + 1 < gens.len())?;
        digits[pos] += 1;
        digits[pos + 1..].iter_mut().for_each(|i| *i = 0);
    }
    None
}

pub fn small_commutator_traced(d: &CayleyDigraph<'_>) -> Result<(Certificate, Vec<ScStep>)> {
    let g = d.group();
    if !d.is_connected() {
        return Err(Error::NotConnected);
    }
    check_small_commutator(g)?;
    let rec = Recursion { trace: RefCell::new(Vec::new()) };
    let word = rec.word(g, d.gens().as_slice())?;
    Ok((certify(d, WalkKind::Path, &word)?, rec.trace.into_inner()))
}

pub fn small_commutator_path(d: &CayleyDigraph<'_>) -> Result<Certificate> {
    small_commutator_traced(d).map(|(c, _)| c)
}
