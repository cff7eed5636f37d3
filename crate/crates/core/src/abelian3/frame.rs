use serde::Serialize;

use super::arcs::{ArcSystem, LABEL_A, LABEL_B, LABEL_BK};
use super::Triple;
use crate::error::{Error, Result};
use crate::group::Elem;

/// Coordinates `v = x·a + y·b + z·k`.
///
/// When `k ∉ ⟨a⟩` the ranges are `0 ≤ x < |a|`, `0 ≤ y < |G:⟨a,k⟩|`,
/// `z ∈ {0,1}`; otherwise `z = 0` and `0 ≤ y < |G:⟨a⟩|`.
#[derive(Clone, Debug, Serialize)]
pub struct CoordinateFrame {
    pub k_in_a: bool,
    pub order_a: usize,
    pub rows: usize,
    #[serde(skip)]
    x: Vec<u32>,
    #[serde(skip)]
    y: Vec<u32>,
    #[serde(skip)]
    z: Vec<u8>,
    #[serde(skip)]
    at: Vec<u32>,
}

impl CoordinateFrame {
    pub fn new(t: &Triple<'_>) -> Result<CoordinateFrame> {
        let g = t.g;
        let order_a = g.element_order(t.a);
        let k_in_a = g.subgroup_generated(&[t.a]).contains(t.k);
        let base = if k_in_a { g.subgroup_generated(&[t.a]) } else { g.subgroup_generated(&[t.a, t.k]) };
        let rows = base.index_in(g);
        let layers = if k_in_a { 1 } else { 2 };
        let n = g.order();
        let (mut x, mut y, mut z) = (vec![u32::MAX; n], vec![0; n], vec![0; n]);
        let mut at = vec![0; order_a * rows * layers];
        for zi in 0..layers {
            for yi in 0..rows {
                for xi in 0..order_a {
                    let v = t.add(t.add(g.pow(t.a, xi as i64), g.pow(t.b, yi as i64)), g.pow(t.k, zi as i64));
                    if x[v.index()] != u32::MAX {
                        return Err(Error::precondition("coordinates are not unique"));
                    }
                    x[v.index()] = xi as u32;
                    y[v.index()] = yi as u32;
                    z[v.index()] = zi as u8;
                    at[(zi * rows + yi) * order_a + xi] = v.index() as u32;
                }
            }
        }
        Ok(CoordinateFrame { k_in_a, order_a, rows, x, y, z, at })
    }

    pub fn x(&self, v: Elem) -> usize {
        self.x[v.index()] as usize
    }

    pub fn y(&self, v: Elem) -> usize {
        self.y[v.index()] as usize
    }

    pub fn z(&self, v: Elem) -> usize {
        self.z[v.index()] as usize
    }

    pub fn elem(&self, x: usize, y: usize, z: usize) -> Elem {
        Elem::new(self.at[(z * self.rows + y) * self.order_a + x] as usize)
    }
}

/// Components of `a`, `b` along `G = ⟨a-b⟩ ⊕ ⟨k⟩`: `a = a' + k'`, `b = b' + k''`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Decomposition {
    pub a_prime: usize,
    pub k_prime: usize,
    pub b_prime: usize,
    pub k_double_prime: usize,
}

impl Decomposition {
    pub fn project(t: &Triple<'_>) -> Result<Decomposition> {
        let g = t.g;
        let w = g.subgroup_generated(&[t.w()]);
        if w.contains(t.k) || w.order() * 2 != g.order() {
            return Err(Error::precondition("G is not <a-b> + <k>"));
        }
        let split = |x: Elem| -> (Elem, Elem) {
            if w.contains(x) {
                (x, Elem::IDENTITY)
            } else {
                (t.add(x, t.k), t.k)
            }
        };
        let (a_prime, k_prime) = split(t.a);
        let (b_prime, k_double_prime) = split(t.b);
        Ok(Decomposition {
            a_prime: a_prime.index(),
            k_prime: k_prime.index(),
            b_prime: b_prime.index(),
            k_double_prime: k_double_prime.index(),
        })
    }
}

/// The starting arc system `H_0`.
pub fn h0_construct(t: &Triple<'_>, f: &CoordinateFrame) -> ArcSystem {
    let g = t.g;
    let half = f.order_a / 2;
    let labels = g
        .elements()
        .map(|v| {
            let vb = t.add(v, t.b);
            if !f.k_in_a {
                match (f.z(v), f.z(vb)) {
                    (0, _) => LABEL_A,
                    (_, 1) => LABEL_B,
                    _ => LABEL_BK,
                }
            } else if f.x(v) < half {
                LABEL_A
            } else if (1..=half).contains(&f.x(vb)) {
                LABEL_BK
            } else {
                LABEL_B
            }
        })
        .collect();
    ArcSystem::from_labels(t, labels)
}

/// Number of components of `H_0`: `|G:⟨a,k⟩| + |G:⟨b,k⟩|` when `k ∉ ⟨a⟩`,
/// otherwise `|G:⟨b,k⟩|`.
pub fn h0_component_formula(t: &Triple<'_>) -> usize {
    let g = t.g;
    let q = g.subgroup_generated(&[t.b, t.k]).index_in(g);
    if g.subgroup_generated(&[t.a]).contains(t.k) {
        q
    } else {
        q + g.subgroup_generated(&[t.a, t.k]).index_in(g)
    }
}
