use std::collections::VecDeque;

use serde::Serialize;

use super::{a4_spec, Instance};
use crate::group::{gcd, is_prime, mult_order, smallest_primitive_root};
use crate::group::GroupSpec;

/// One catalog group. The catalog is a fixed, non-exhaustive list of
/// groups expressible through [`GroupSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogGroup {
    pub name: String,
    pub order: usize,
    pub spec: GroupSpec,
}

impl CatalogGroup {
    fn new(name: impl Into<String>, order: usize, spec: GroupSpec) -> CatalogGroup {
        CatalogGroup { name: name.into(), order, spec }
    }
}

/// Every catalog group of order at most `max_order`, sorted by order then name.
pub fn catalog(max_order: usize) -> Vec<CatalogGroup> {
    let mut out = abelian_specs(max_order);
    let mut nonabelian = Vec::new();
    for n in 3..=max_order / 2 {
        nonabelian.push(CatalogGroup::new(format!("D{n}"), 2 * n, dihedral(n)));
    }
    for n in 2..=max_order / 4 {
        let name = if n == 2 { "Q8".to_string() } else { format!("Dic{n}") };
        nonabelian.push(CatalogGroup::new(name, 4 * n, dicyclic(n)));
    }
    for p in (3..=max_order as u32).filter(|&p| is_prime(p as u64)) {
        for m in 3..=(max_order as u32 / p) {
            for d in (2..=m).filter(|&d| m % d == 0 && (p - 1) % d == 0) {
                let u = (2..p).find(|&u| mult_order(u as u64, p as u64) == Some(d as u64)).expect("Z_p^* is cyclic");
                let spec = GroupSpec::SemidirectCyclic { m, p, u };
                nonabelian.push(CatalogGroup::new(format!("Z{m}:Z{p}[{u}]"), (m * p) as usize, spec));
            }
        }
        let half = (p - 1) / 2;
        let r = smallest_primitive_root(p as u64).expect("prime") as u32;
        for alpha in (2..=max_order as u32 / p).step_by(2) {
            for beta in (half..=max_order as u32 / (p * alpha)).step_by(half as usize) {
                if gcd(alpha as u64, half as u64) == 1 && gcd(alpha as u64, beta as u64) == 1 {
                    let spec = GroupSpec::SemidirectMetacyclic { alpha, beta, p, r, relaxed: false };
                    let name = format!("(Z{alpha}xZ{beta}):Z{p}");
                    nonabelian.push(CatalogGroup::new(name, (alpha * beta * p) as usize, spec));
                }
            }
        }
    }
    nonabelian.push(CatalogGroup::new("A4", 12, a4_spec()));
    nonabelian.push(CatalogGroup::new("S4", 24, symmetric4()));
    nonabelian.push(CatalogGroup::new("A5", 60, alternating5()));
    for (c, d) in EISENSTEIN {
        let inst = eisenstein_affine(c, d);
        let GroupSpec::Table { order, .. } = inst.spec else { unreachable!() };
        nonabelian.push(CatalogGroup::new(format!("Aff6(Z[w]/({c}{d:+}w))"), order as usize, inst.spec));
    }
    nonabelian.retain(|g| g.order <= max_order);

    let mut products = Vec::new();
    for base in &nonabelian {
        for k in 2..=max_order / base.order {
            let spec = base.spec.clone().times_cyclic(k as u32);
            products.push(CatalogGroup::new(format!("{}xZ{k}", base.name), base.order * k, spec));
        }
    }
    out.extend(nonabelian);
    out.extend(products);
    out.sort_by(|x, y| (x.order, &x.name).cmp(&(y.order, &y.name)));
    out
}

/// Abelian groups of order `2..=max_order`, one per invariant-factor list
/// `d_1 | d_2 | ... | d_r`.
pub fn abelian_specs(max_order: usize) -> Vec<CatalogGroup> {
    fn extend(prefix: &mut Vec<u32>, order: usize, max: usize, out: &mut Vec<CatalogGroup>) {
        if !prefix.is_empty() {
            let name: Vec<String> = prefix.iter().map(|d| format!("Z{d}")).collect();
            out.push(CatalogGroup::new(name.join("x"), order, GroupSpec::abelian(prefix)));
        }
        let last = prefix.last().copied().unwrap_or(1) as usize;
        let mut next = if prefix.is_empty() { 2 } else { last };
        while order * next <= max {
            prefix.push(next as u32);
            extend(prefix, order * next, max, out);
            prefix.pop();
            next += last;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out.sort_by(|x, y| (x.order, &x.name).cmp(&(y.order, &y.name)));
    out
}

/// `(c, d)` for the ideals `(c + dω)` used by [`eisenstein_affine`].
const EISENSTEIN: [(i64, i64); 5] = [(3, 0), (2, 0), (3, 1), (3, -3), (6, 0)];

fn dihedral(n: usize) -> GroupSpec {
    let rot = (0..n).map(|i| ((i + 1) % n) as u32).collect();
    let refl = (0..n).map(|i| ((n - i) % n) as u32).collect();
    GroupSpec::Permutation { degree: n as u32, generators: vec![rot, refl] }
}

/// `⟨x, y | x^{2n}, y² = x^n, y x y⁻¹ = x⁻¹⟩`; element `x^i y^j` has index `2i + j`.
fn dicyclic(n: usize) -> GroupSpec {
    let m = 2 * n;
    let idx = |i: usize, j: usize| (2 * (i % m) + j) as u32;
    let table = (0..2 * m)
        .map(|e1| {
            (0..2 * m)
                .map(|e2| {
                    let (i1, j1, i2, j2) = (e1 / 2, e1 % 2, e2 / 2, e2 % 2);
                    match (j1, j2) {
                        (0, _) => idx(i1 + i2, j2),
                        (_, 0) => idx(i1 + m - i2, 1),
                        _ => idx(i1 + m - i2 + n, 0),
                    }
                })
                .collect()
        })
        .collect();
    GroupSpec::Table { order: 2 * m as u32, table }
}

fn symmetric4() -> GroupSpec {
    GroupSpec::Permutation { degree: 4, generators: vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]] }
}

fn alternating5() -> GroupSpec {
    GroupSpec::Permutation { degree: 5, generators: vec![vec![1, 2, 0, 3, 4], vec![0, 1, 3, 4, 2], vec![1, 0, 3, 2, 4]] }
}

/// The subgroup generated by `a(x) = -x + 1` and `b(x) = ωx` among the
/// affine maps `x ↦ ζ^j x + t` of `R = Z[ω]/(c + dω)`, `ζ = -ω`. It is a
/// quotient of the (2,3,6) triangle group, of order `6|T|` where
/// `T = ((1-ω) + (c + dω)) / (c + dω)`. Maps compose left to right.
pub fn eisenstein_affine(c: i64, d: i64) -> Instance {
    let n = c * c - c * d + d * d;
    assert!(n > 0, "nonzero ideal");
    let nu = n as usize;
    let key = |x: i64, y: i64| (x.rem_euclid(n) * n + y.rem_euclid(n)) as usize;
    let mut class = vec![usize::MAX; nu * nu];
    let mut reps = Vec::new();
    for start in 0..nu * nu {
        if class[start] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(((start / nu) as i64, (start % nu) as i64));
        class[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let (x, y) = ((v / nu) as i64, (v % nu) as i64);
            for (dx, dy) in [(c, d), (-d, c - d)] {
                let w = key(x + dx, y + dy);
                if class[w] == usize::MAX {
                    class[w] = id;
                    queue.push_back(w);
                }
            }
        }
    }
    assert_eq!(reps.len(), nu, "|Z[w]/(pi)| is the norm");
    let zeta = |t: usize| {
        let (x, y) = reps[t];
        class[key(y, y - x)]
    };
    let add = |s: usize, t: usize| {
        let ((x1, y1), (x2, y2)) = (reps[s], reps[t]);
        class[key(x1 + x2, y1 + y2)]
    };
    let zeta_pow = |t: usize, j: usize| (0..j).fold(t, |acc, _| zeta(acc));
    // (t, j) has index 6t + j; (t1, j1)(t2, j2) = (ζ^j2 t1 + t2, j1 + j2).
    let mul = |g: usize, h: usize| 6 * add(zeta_pow(g / 6, h % 6), h / 6) + (g % 6 + h % 6) % 6;
    let gens = [6 * class[key(1, 0)] + 3, 4];

    let mut index = vec![usize::MAX; 6 * nu];
    let mut members = vec![0];
    index[0] = 0;
    let mut next = 0;
    while next < members.len() {
        let x = members[next];
        next += 1;
        for s in gens {
            let y = mul(x, s);
            if index[y] == usize::MAX {
                index[y] = members.len();
                members.push(y);
            }
        }
    }
    let table = members.iter().map(|&x| members.iter().map(|&y| index[mul(x, y)] as u32).collect()).collect();
    Instance {
        spec: GroupSpec::Table { order: members.len() as u32, table },
        gens: gens.iter().map(|&s| vec![index[s] as i64]).collect(),
    }
}
