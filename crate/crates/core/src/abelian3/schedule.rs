use super::arcs::{three_arc_rotate, ArcSystem};
use super::frame::CoordinateFrame;
use super::{TraceStep, Triple};
use crate::error::{Error, Result};
use crate::group::Elem;

/// Merges the three components through `u`, `u+k`, `u+a+k`.
pub fn amalgamate(t: &Triple<'_>, h: &ArcSystem, u: Elem) -> Result<ArcSystem> {
    let (u2, v3) = (t.add(u, t.k), t.add(t.add(u, t.a), t.k));
    if !h.travels_by_a(u) {
        return Err(Error::precondition(format!("{u} does not travel by a")));
    }
    let (comp, _) = h.components();
    let (c1, c2, c3) = (comp[u.index()], comp[u2.index()], comp[v3.index()]);
    if c1 == c2 || c2 == c3 || c1 == c3 {
        return Err(Error::precondition(format!("{u}, {u}+k, {u}+a+k are not in three components")));
    }
    three_arc_rotate(t, h, u, u2, h.pred(v3))
}

/// Same surgery as [`amalgamate`], for `u+k` and `u+a+k` sharing a component
/// that does not contain `u`. Afterwards `u` and the old successor of `u+k`
/// share a component and `u+a+k` lies elsewhere.
pub fn amalgamate_pair(t: &Triple<'_>, h: &ArcSystem, u: Elem) -> Result<ArcSystem> {
    let (u2, v3) = (t.add(u, t.k), t.add(t.add(u, t.a), t.k));
    if !h.travels_by_a(u) {
        return Err(Error::precondition(format!("{u} does not travel by a")));
    }
    let (comp, _) = h.components();
    if comp[u2.index()] != comp[v3.index()] || comp[u.index()] == comp[u2.index()] {
        return Err(Error::precondition(format!("{u}+k and {u}+a+k do not share a component apart from {u}")));
    }
    three_arc_rotate(t, h, u, u2, h.pred(v3))
}

/// Applies one step, records it, and checks the component through 0 against
/// `shape` together with the total component count.
struct Runner<'t, 'g> {
    t: &'t Triple<'g>,
    h: ArcSystem,
    count: usize,
    trace: &'t mut Vec<TraceStep>,
}

impl Runner<'_, '_> {
    fn step(&mut self, pair: bool, u: Elem, shape: Option<&dyn Fn(Elem) -> bool>) -> Result<()> {
        let (op, next) = if pair {
            ("amalgamate_pair", amalgamate_pair(self.t, &self.h, u)?)
        } else {
            ("amalgamate", amalgamate(self.t, &self.h, u)?)
        };
        let (comp, count) = next.components();
        let expected = if pair { self.count } else { self.count - 2 };
        if count != expected || !next.in_class_e(self.t) {
            return Err(Error::ConstructionFailed(format!("{op} at {u} left {count} components, expected {expected}")));
        }
        if let Some(shape) = shape {
            let root = comp[0];
            if let Some(v) = self.t.g.elements().find(|&v| (comp[v.index()] == root) != shape(v)) {
                return Err(Error::ConstructionFailed(format!(
                    "after {op} at {u} the component through 0 disagrees at {v}"
                )));
            }
        }
        self.trace.push(TraceStep::new(op, u, &next));
        self.h = next;
        self.count = count;
        Ok(())
    }
}

/// Odd `|G:⟨b,k⟩|` and `k ∉ ⟨a⟩`.
pub fn odd_index_k_outside(
    t: &Triple<'_>,
    f: &CoordinateFrame,
    h0: ArcSystem,
    trace: &mut Vec<TraceStep>,
) -> Result<ArcSystem> {
    let q = t.index_bk();
    let m = f.rows;
    let count = h0.component_count();
    let mut r = Runner { t, h: h0, count, trace };
    let b = |i: usize| t.g.pow(t.b, i as i64);
    let a = |i: usize| t.g.pow(t.a, i as i64);

    r.step(false, Elem::IDENTITY, Some(&|v| shape_rows(f, v, 0, q, 1)))?;
    r.step(false, t.add(t.a, t.b), Some(&|v| shape_rows(f, v, 1, q, 2)))?;
    for i in 2..=m / 2 {
        r.step(true, b(2 * i - 2), None)?;
        r.step(false, b(2 * i - 1), Some(&|v| shape_rows(f, v, 2 * i - 1, q, 2)))?;
    }
    for i in 2..=(q - 1) / 2 {
        r.step(false, a(2 * i - 1), Some(&|v| shape_rows(f, v, m - 1, q, 2 * i)))?;
    }
    Ok(r.h)
}

/// Odd `|G:⟨b,k⟩|` and `k ∈ ⟨a⟩`.
pub fn odd_index_k_inside(
    t: &Triple<'_>,
    f: &CoordinateFrame,
    h0: ArcSystem,
    trace: &mut Vec<TraceStep>,
) -> Result<ArcSystem> {
    let q = t.index_bk();
    let count = h0.component_count();
    let mut r = Runner { t, h: h0, count, trace };
    for i in 1..=(q - 1) / 2 {
        let u = t.g.pow(t.a, (2 * i - 1) as i64);
        r.step(false, u, Some(&|v| f.x(v) < f.order_a / 2 || f.x(v) % q <= 2 * i))?;
    }
    Ok(r.h)
}

/// Even `|G:⟨b,k⟩|`, which forces `k ∉ ⟨a⟩` and odd `|G:⟨a,k⟩|`.
pub fn even_index(t: &Triple<'_>, f: &CoordinateFrame, h0: ArcSystem, trace: &mut Vec<TraceStep>) -> Result<ArcSystem> {
    let q = t.index_bk();
    let m = f.rows;
    let count = h0.component_count();
    let mut r = Runner { t, h: h0, count, trace };
    let b = |i: usize| t.g.pow(t.b, i as i64);
    let a = |i: usize| t.g.pow(t.a, i as i64);

    r.step(false, Elem::IDENTITY, Some(&|v| shape_rows(f, v, 0, q, 1)))?;
    for i in 2..=m.div_ceil(2) {
        r.step(true, b(2 * i - 3), None)?;
        r.step(false, b(2 * i - 2), Some(&|v| shape_rows(f, v, 2 * i - 2, q, 1)))?;
    }
    for i in 2..=q / 2 {
        r.step(false, a(2 * i - 2), Some(&|v| shape_rows(f, v, m - 1, q, 2 * i - 1)))?;
    }
    Ok(r.h)
}

/// `{z = 0, y ≤ max_y} ∪ {z = 1, x mod q ≤ max_class}`.
fn shape_rows(f: &CoordinateFrame, v: Elem, max_y: usize, q: usize, max_class: usize) -> bool {
    if f.z(v) == 0 {
        f.y(v) <= max_y
    } else {
        f.x(v) % q <= max_class
    }
}
