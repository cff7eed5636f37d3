use std::fmt::Write;

use super::{label_name, CayleyDigraph};

/// Graphviz rendering with one labelled arc per (vertex, generator).
/// `names` overrides the default `a`, `b`, ... arc labels.
pub fn to_dot(d: &CayleyDigraph<'_>, names: Option<&[String]>) -> String {
    let g = d.group();
    let name = |l: usize| names.and_then(|n| n.get(l).cloned()).unwrap_or_else(|| label_name(l));
    let mut out = String::from("digraph cayley {\n");
    for v in g.elements() {
        let _ = writeln!(out, "  v{} [label=\"{}\"];", v.index(), g.format_elem(v));
    }
    for v in g.elements() {
        for l in 0..d.degree() {
            let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", v.index(), d.arc(v, l).index(), name(l));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Elem, FiniteGroup, GroupSpec};

    #[test]
    fn small_dot() {
        let g = FiniteGroup::build(&GroupSpec::Cyclic { n: 2 }).unwrap();
        let d = CayleyDigraph::from_elems(&g, &[Elem::new(1)]).unwrap();
        let text = to_dot(&d, None);
        assert!(text.contains("v0 -> v1 [label=\"a\"];"));
        assert!(text.contains("v1 -> v0 [label=\"a\"];"));
        let named = to_dot(&d, Some(&["b+k".to_string()]));
        assert!(named.contains("[label=\"b+k\"]"));
    }
}
