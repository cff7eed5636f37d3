use cayham_core::cayley::{arc_forcing_subgroup, classify_cosets};
use cayham_core::families::catalog;
use cayham_core::search::{dfs_ham_path, enumerate_ham_paths, PatternSpace};
use cayham_core::{CayleyDigraph, Elem, FiniteGroup, SearchOptions, Subgroup, Verdict};

/// Every connected `Cay(G; a, b)` with `a != b` over catalog groups up to
/// `max`, as (name, group, a, b) with ordered pairs.
fn two_generated(max: usize) -> Vec<(String, FiniteGroup, Elem, Elem)> {
    let mut out = Vec::new();
    for e in catalog(max) {
        let g = FiniteGroup::build(&e.spec).unwrap();
        for x in 1..g.order() {
            for y in 1..g.order() {
                let (a, b) = (Elem::new(x), Elem::new(y));
                if x != y && g.generates(&[a, b]) {
                    out.push((e.name.clone(), g.clone(), a, b));
                }
            }
        }
    }
    out
}

#[test]
fn terminal_coset_is_the_same_for_every_generator() {
    for e in catalog(24) {
        let g = FiniteGroup::build(&e.spec).unwrap();
        for x in 1..g.order() {
            for y in x + 1..g.order().min(x + 6) {
                let s = [Elem::new(x), Elem::new(y), Elem::new((x + y) % g.order())];
                let s = if s[2] == Elem::IDENTITY || s[2] == s[0] || s[2] == s[1] { &s[..2] } else { &s[..] };
                let h = arc_forcing_subgroup(&g, s);
                let cosets = g.left_cosets(&h);
                let t = cosets.coset_of(g.inv(s[0]));
                assert!(s.iter().all(|&a| cosets.coset_of(g.inv(a)) == t), "{} {s:?}", e.name);
                assert_eq!(classify_cosets(&g, s).unwrap().terminal, t);
            }
        }
    }
}

fn same(x: &Subgroup, y: &Subgroup) -> bool {
    x.is_subset_of(y) && y.is_subset_of(x)
}

#[test]
fn arc_forcing_subgroup_relations() {
    for e in catalog(20) {
        let g = FiniteGroup::build(&e.spec).unwrap();
        for x in 1..g.order() {
            for y in x + 1..g.order() {
                let s = [Elem::new(x), Elem::new(y)];
                let h = arc_forcing_subgroup(&g, &s);
                // H = <S S^-1> directly.
                let direct = g.subgroup_generated(&[g.mul(s[0], g.inv(s[1])), g.mul(s[1], g.inv(s[0]))]);
                assert!(same(&h, &direct), "{} {s:?}", e.name);
                for t in g.elements() {
                    let st: Vec<Elem> = s.iter().map(|&a| g.mul(a, t)).collect();
                    assert!(h.is_subset_of(&g.subgroup_generated(&st)), "{} {s:?} t={t}", e.name);
                }
                for &a in &s {
                    let st: Vec<Elem> = s.iter().map(|&x| g.mul(x, g.inv(a))).collect();
                    assert!(same(&g.subgroup_generated(&st), &h), "{} {s:?} a={a}", e.name);
                    // <S^-1 S> = a^-1 <S S^-1> a.
                    let inv_s: Vec<Elem> =
                        s.iter().flat_map(|&p| s.iter().map(move |&q| (p, q))).map(|(p, q)| g.mul(g.inv(p), q)).collect();
                    let conj: Vec<Elem> = h.members().iter().map(|&m| g.conj(m, a)).collect();
                    let lhs = g.subgroup_generated(&inv_s);
                    assert_eq!(lhs.order(), h.order());
                    assert!(conj.iter().all(|&c| lhs.contains(c)), "{} {s:?} a={a}", e.name);
                }
            }
        }
    }
}

#[test]
fn every_path_obeys_the_coset_travel_rules() {
    let mut paths = 0;
    for (name, g, a, b) in two_generated(24) {
        let d = CayleyDigraph::from_elems(&g, &[a, b]).unwrap();
        let cs = classify_cosets(&g, &[a, b]).unwrap();
        let space = PatternSpace::new(&d).unwrap();
        let (found, _) = enumerate_ham_paths(&d, Elem::IDENTITY, 200);
        for c in found {
            paths += 1;
            let verts = c.vertices(&d);
            let end = *verts.last().unwrap();
            assert_eq!(cs.cosets.coset_of(end), cs.terminal, "{name} ({a}, {b})");
            let mut coset_label = vec![None; cs.cosets.len()];
            for (&v, &l) in verts.iter().zip(&c.labels) {
                let k = cs.cosets.coset_of(v);
                if k != cs.terminal {
                    assert!(*coset_label[k].get_or_insert(l) == l, "{name} ({a}, {b}): coset {k} mixes labels");
                }
            }
            let p = space.induced(&c).unwrap_or_else(|| panic!("{name} ({a}, {b}): no pattern"));
            assert!((space.index_of(&p)) < space.len());
            assert_eq!(space.expand(&p), Some(c), "{name} ({a}, {b})");
        }
    }
    assert!(paths > 10_000, "{paths}");
}

#[test]
fn path_existence_is_independent_of_the_start() {
    for e in catalog(16) {
        let g = FiniteGroup::build(&e.spec).unwrap();
        for x in 1..g.order() {
            for y in x + 1..g.order() {
                let d = CayleyDigraph::from_elems(&g, &[Elem::new(x), Elem::new(y)]).unwrap();
                let from_e = dfs_ham_path(&d, None, &SearchOptions::default()).verdict;
                assert_ne!(from_e, Verdict::Unknown);
                for v in g.elements().skip(1) {
                    let r = dfs_ham_path(&d, Some(v), &SearchOptions::default());
                    assert_eq!(r.verdict, from_e, "{} ({x}, {y}) from {v}", e.name);
                    if let Some(c) = r.certificate {
                        assert_eq!(c.start, v);
                        assert!(d.verify(&c).is_ok());
                    }
                }
            }
        }
    }
}
