use cayham_core::abelian3::{abelian3_ham_cycle, Route, Triple};
use cayham_core::cayley::{coset_quotient_digraph, CosetDigraph};
use cayham_core::construct::{abelian_ham_path, factor_group_cycle, FglOutcome};
use cayham_core::families::{abelian_specs, catalog};
use cayham_core::search::dfs_ham_cycle;
use cayham_core::{CayleyDigraph, Elem, FiniteGroup, SearchOptions, Verdict};
use rayon::prelude::*;

/// Every hamiltonian cycle of the coset digraph from the coset of `e`.
fn coset_cycles(q: &CosetDigraph) -> Vec<Vec<usize>> {
    fn go(q: &CosetDigraph, at: usize, seen: &mut [bool], labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let start = q.cosets.coset_of(Elem::IDENTITY);
        for l in 0..q.arcs.len() {
            let next = q.arcs[l][at];
            labels.push(l);
            if labels.len() == q.len() {
                if next == start {
                    out.push(labels.clone());
                }
            } else if !seen[next] {
                seen[next] = true;
                go(q, next, seen, labels, out);
                seen[next] = false;
            }
            labels.pop();
        }
    }
    let mut seen = vec![false; q.len()];
    seen[q.cosets.coset_of(Elem::IDENTITY)] = true;
    let mut out = Vec::new();
    go(q, q.cosets.coset_of(Elem::IDENTITY), &mut seen, &mut Vec::new(), &mut out);
    out
}

/// Walks `word` repeated `times` from `e` and reports whether it is a
/// hamiltonian cycle.
fn naive_lift_is_cycle(g: &FiniteGroup, word: &[Elem], times: usize) -> bool {
    let mut seen = vec![false; g.order()];
    let mut v = Elem::IDENTITY;
    let steps = word.len() * times;
    if steps != g.order() {
        return false;
    }
    for (i, &s) in word.iter().cycle().take(steps).enumerate() {
        if std::mem::replace(&mut seen[v.index()], true) {
            return false;
        }
        v = g.mul(v, s);
        if i + 1 == steps {
            return v == Elem::IDENTITY;
        }
    }
    false
}

#[test]
fn factor_group_lemma_holds_in_both_directions() {
    let (mut lifted, mut refused) = (0, 0);
    for e in catalog(16) {
        let g = FiniteGroup::build(&e.spec).unwrap();
        let mut normals = Vec::new();
        for x in g.elements().skip(1) {
            let n = g.subgroup_generated(&[x]);
            if g.is_normal(&n) && !normals.iter().any(|m: &cayham_core::Subgroup| m.members() == n.members()) {
                normals.push(n);
            }
        }
        for x in 1..g.order() {
            for y in x + 1..g.order() {
                let s = [Elem::new(x), Elem::new(y)];
                if !g.generates(&s) {
                    continue;
                }
                let d = CayleyDigraph::from_elems(&g, &s).unwrap();
                for n in &normals {
                    let q = coset_quotient_digraph(n, &g, &s);
                    for labels in coset_cycles(&q) {
                        let word: Vec<Elem> = labels.iter().map(|&l| s[l]).collect();
                        let generates = g.subgroup_generated(&[g.product(&word)]).order() == n.order();
                        let naive = naive_lift_is_cycle(&g, &word, n.order());
                        assert_eq!(generates, naive, "{} {s:?} N={:?} {labels:?}", e.name, n.members());
                        match factor_group_cycle(&d, n, &word).unwrap() {
                            FglOutcome::Cycle(c) => {
                                assert!(generates);
                                assert!(d.verify(&c).is_ok());
                                lifted += 1;
                            }
                            FglOutcome::CriterionFails => {
                                assert!(!generates);
                                refused += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(lifted > 100 && refused > 100, "{lifted} lifted, {refused} refused");
}

#[test]
fn abelian_paths_have_contiguous_coset_blocks() {
    for e in abelian_specs(24) {
        let g = FiniteGroup::build(&e.spec).unwrap();
        let n = g.order();
        for x in 1..n {
            for y in x..n {
                for z in y..n {
                    let mut s = vec![Elem::new(x)];
                    for w in [y, z] {
                        if !s.contains(&Elem::new(w)) {
                            s.push(Elem::new(w));
                        }
                    }
                    if !g.generates(&s) {
                        continue;
                    }
                    let d = CayleyDigraph::from_elems(&g, &s).unwrap();
                    let c = abelian_ham_path(&d).unwrap();
                    assert_eq!(c.labels.len(), n - 1);
                    assert!(d.verify(&c).is_ok());
                    let verts = c.vertices(&d);
                    let contiguous = s.iter().any(|&t| {
                        let cosets = g.left_cosets(&g.subgroup_generated(&[t]));
                        let mut done = vec![false; cosets.len()];
                        let mut current = cosets.coset_of(verts[0]);
                        for &v in &verts[1..] {
                            let k = cosets.coset_of(v);
                            if k != current {
                                done[current] = true;
                                if done[k] {
                                    return false;
                                }
                                current = k;
                            }
                        }
                        true
                    });
                    assert!(contiguous, "{} {s:?}", e.name);
                }
            }
        }
    }
}

#[test]
fn abelian3_matches_dfs_and_amalgamation_counts() {
    let mut jobs = Vec::new();
    for e in abelian_specs(32) {
        let g = FiniteGroup::build(&e.spec).unwrap();
        if g.elements().any(|x| g.element_order(x) == g.order()) {
            continue;
        }
        for k in g.elements().filter(|&k| g.element_order(k) == 2) {
            for a in g.elements() {
                for b in g.elements() {
                    if Triple::new(&g, a, b, k).is_ok() {
                        jobs.push((e.spec.clone(), a, b, k));
                    }
                }
            }
        }
    }
    let routes: Vec<Route> = jobs
        .par_iter()
        .map(|(spec, a, b, k)| {
            let g = FiniteGroup::build(spec).unwrap();
            let run = abelian3_ham_cycle(&g, *a, *b, *k).unwrap();
            let d = CayleyDigraph::from_elems(&g, &[*a, *b, g.mul(*b, *k)]).unwrap();
            assert!(d.verify(&run.certificate).is_ok());
            assert!(run.incidents.is_empty(), "{spec:?} {a} {b} {k}: {:?}", run.incidents);
            assert_eq!(dfs_ham_cycle(&d, &SearchOptions::default()).verdict, Verdict::Exists);
            // A swap and the rotation after it form one round of improvement.
            let mut before = run.trace.first().map_or(0, |s| s.components) as i64;
            for step in run.trace.iter().skip(1) {
                let delta = step.components as i64 - before;
                match step.op {
                    "amalgamate" => assert_eq!(delta, -2, "{spec:?} {a} {b} {k}"),
                    "amalgamate_pair" => assert_eq!(delta, 0, "{spec:?} {a} {b} {k}"),
                    "rotate" => assert!(delta < 0, "{spec:?} {a} {b} {k}: round did not improve"),
                    "swap" => continue,
                    op => panic!("unexpected step {op}"),
                }
                before = step.components as i64;
            }
            if let Some(last) = run.trace.last() {
                assert_eq!(last.components, 1);
            }
            run.route
        })
        .collect();
    assert!(routes.len() > 1000, "{}", routes.len());
    for r in [Route::NonGenerating, Route::BkGenerates, Route::OddIndexKOutsideA, Route::OddIndexKInsideA, Route::EvenIndex]
    {
        assert!(routes.contains(&r), "{r:?} never taken");
    }
}
