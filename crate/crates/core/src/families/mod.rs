//! Concrete example and counterexample families, each with its
//! preconditions checked on emission.

mod catalog;

pub use catalog::{abelian_specs, catalog, eisenstein_affine, CatalogGroup};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{gcd, gcd_i, is_prime, smallest_primitive_root, Elem, FiniteGroup, GroupSpec};

/// A group spec with generators given as coordinate arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub spec: GroupSpec,
    pub gens: Vec<Vec<i64>>,
}

impl Instance {
    pub fn build(&self) -> Result<(FiniteGroup, Vec<Elem>)> {
        let g = FiniteGroup::build(&self.spec)?;
        let gens = self.gens.iter().map(|c| g.element(c)).collect::<Result<_>>()?;
        Ok((g, gens))
    }

    pub fn from_elems(g: &FiniteGroup, gens: &[Elem]) -> Instance {
        let gens = gens.iter().map(|&x| g.coords(x).iter().map(|&c| c as i64).collect()).collect();
        Instance { spec: g.spec().clone(), gens }
    }
}

/// Parameters chosen for the metacyclic family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem13Params {
    pub alpha: u32,
    pub beta: u32,
    pub p: u32,
    pub r: u32,
}

/// `(Z_α × Z_β) ⋉ Z_p` with `a = āz`, `b = b̄z`, taking the smallest `α`,
/// `β`, `r` allowed: `α` even, `β` a multiple of `(p-1)/2`, both `> n`,
/// `gcd(α, (p-1)/2) = gcd(α, β) = 1`, and `r` a primitive root.
pub fn theorem13_family(p: u32, n: u32) -> Result<(Instance, Theorem13Params)> {
    if p <= 3 || p % 4 != 3 || !is_prime(p as u64) {
        return Err(Error::BadPrime(p as u64));
    }
    let half = (p - 1) / 2;
    let alpha = (n + 1..).find(|&x| x % 2 == 0 && gcd(x as u64, half as u64) == 1).expect("half is odd");
    let beta = (n / half + 1..)
        .map(|j| j * half)
        .find(|&y| y > n && gcd(alpha as u64, y as u64) == 1)
        .expect("alpha is coprime to half");
    metacyclic_instance(alpha, beta, p, false)
}

/// Same shape for any odd prime, dropping the coprimality side conditions.
/// Nothing is claimed about the result; callers should search it.
pub fn theorem13_family_any_prime(p: u32, n: u32) -> Result<(Instance, Theorem13Params)> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::BadPrime(p as u64));
    }
    if p % 4 == 3 && p > 3 {
        return theorem13_family(p, n);
    }
    let half = (p - 1) / 2;
    let alpha = if n.is_multiple_of(2) { n + 2 } else { n + 1 };
    let beta = (n / half + 1) * half;
    metacyclic_instance(alpha, beta, p, true)
}

fn metacyclic_instance(alpha: u32, beta: u32, p: u32, relaxed: bool) -> Result<(Instance, Theorem13Params)> {
    let r = smallest_primitive_root(p as u64).expect("p is prime") as u32;
    let spec = GroupSpec::SemidirectMetacyclic { alpha, beta, p, r, relaxed };
    let inst = Instance { spec, gens: vec![vec![1, 0, 1], vec![0, 1, 1]] };
    Ok((inst, Theorem13Params { alpha, beta, p, r }))
}

/// `Z_12 ⋉ Z_5` with `z^h = z^3`, `a = h²z`, `b = h³z`.
pub fn g5_example() -> Instance {
    Instance { spec: GroupSpec::SemidirectCyclic { m: 12, p: 5, u: 3 }, gens: vec![vec![2, 1], vec![3, 1]] }
}

/// `A_4 × Z_2` with `a = ((1 2)(3 4), 1)` and `b = ((1 2 3), 0)`.
pub fn a4z2_example() -> Instance {
    Instance {
        spec: a4_spec().times_cyclic(2),
        gens: vec![vec![1, 0, 3, 2, 1], vec![1, 2, 0, 3, 0]],
    }
}

pub(crate) fn a4_spec() -> GroupSpec {
    GroupSpec::Permutation { degree: 4, generators: vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]] }
}

/// Catalog pairs `(a, b)` with `a² = b³ = e` (exact orders 2 and 3),
/// `⟨a, b⟩ = G` and `|G| ≥ 9|ab²|`.
pub fn milnor_instances(max_order: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for entry in catalog(max_order) {
        let Ok(g) = FiniteGroup::build(&entry.spec) else { continue };
        let involutions: Vec<Elem> = g.elements().filter(|&x| g.element_order(x) == 2).collect();
        let triples: Vec<Elem> = g.elements().filter(|&x| g.element_order(x) == 3).collect();
        for &a in &involutions {
            for &b in &triples {
                let ab2 = g.element_order(g.mul(a, g.mul(b, b)));
                if g.order() >= 9 * ab2 && g.generates(&[a, b]) {
                    out.push(Instance::from_elems(&g, &[a, b]));
                }
            }
        }
    }
    out
}

/// `Cay(Z_{12k}; 6k, 6k+2, 6k+3)`.
pub fn locke_witte_12k(k: u32) -> Result<Instance> {
    if k == 0 {
        return Err(Error::ConditionFailed { clause: "k", detail: "k must be positive".into() });
    }
    let k = k as i64;
    Ok(Instance { spec: GroupSpec::Cyclic { n: 12 * k as u32 }, gens: vec![vec![6 * k], vec![6 * k + 2], vec![6 * k + 3]] })
}

/// `Cay(Z_{2k}; a, b, b+k)` after checking the five side conditions.
pub fn locke_witte_2k(a: i64, b: i64, k: i64) -> Result<Instance> {
    let fail = |clause, detail: String| Err(Error::ConditionFailed { clause, detail });
    if a <= 0 || b <= 0 || k <= 0 {
        return fail("positivity", format!("a={a}, b={b}, k={k} must be positive"));
    }
    if a % 2 == 0 && k % 2 == 0 {
        return fail("i", format!("a={a} and k={k} are both even"));
    }
    if !(a % 2 == 0 || (b % 2 == 0 && k % 2 == 0)) {
        return fail("ii", format!("a={a} is odd and b={b}, k={k} are not both even"));
    }
    if gcd_i(a - b, k) != 1 {
        return fail("iii", format!("gcd(a-b, k) = gcd({}, {k}) = {}", a - b, gcd_i(a - b, k)));
    }
    if gcd_i(a, 2 * k) == 1 {
        return fail("iv", format!("gcd(a, 2k) = gcd({a}, {}) = 1", 2 * k));
    }
    if gcd_i(b, k) == 1 {
        return fail("v", format!("gcd(b, k) = gcd({b}, {k}) = 1"));
    }
    let n = 2 * k;
    let gens = [a.rem_euclid(n), b.rem_euclid(n), (b + k).rem_euclid(n)];
    if gens.contains(&0) || gens[0] == gens[1] || gens[0] == gens[2] {
        return fail("distinct", format!("a, b, b+k = {gens:?} are not distinct and nontrivial mod {n}"));
    }
    Ok(Instance { spec: GroupSpec::Cyclic { n: n as u32 }, gens: gens.iter().map(|&x| vec![x]).collect() })
}

/// The first `(a, b, k)` in order of `k`, then `a`, then `b`, with
/// `0 < a, b < 2k`, all conditions met and a connected digraph.
pub fn smallest_locke_witte_2k(max_k: i64) -> Option<(i64, i64, i64, Instance)> {
    for k in 1..=max_k {
        for a in 1..2 * k {
            for b in 1..2 * k {
                let Ok(inst) = locke_witte_2k(a, b, k) else { continue };
                if gcd(gcd_i(a, b), k as u64) == 1 {
                    return Some((a, b, k, inst));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::CayleyDigraph;

    #[test]
    fn theorem13_choices() {
        let (inst, params) = theorem13_family(7, 1).unwrap();
        assert_eq!(params, Theorem13Params { alpha: 2, beta: 3, p: 7, r: 3 });
        let (g, gens) = inst.build().unwrap();
        assert_eq!(g.order(), 42);
        assert_eq!(g.commutator_subgroup().order(), 7);
        assert_eq!((g.element_order(gens[0]), g.element_order(gens[1])), (2, 3));
        assert!(CayleyDigraph::from_elems(&g, &gens).unwrap().is_connected());

        let (inst, params) = theorem13_family(7, 4).unwrap();
        assert_eq!((params.alpha, params.beta), (8, 9));
        assert_eq!(inst.build().unwrap().0.order(), 504);

        assert_eq!(theorem13_family(5, 1).unwrap_err(), Error::BadPrime(5));
        assert_eq!(theorem13_family(3, 1).unwrap_err(), Error::BadPrime(3));
        assert_eq!(theorem13_family(15, 1).unwrap_err(), Error::BadPrime(15));
    }

    #[test]
    fn theorem13_commutator_is_p() {
        for p in [7, 11, 19] {
            for n in 1..4 {
                let (inst, params) = theorem13_family(p, n).unwrap();
                assert!(params.alpha > n && params.beta > n);
                let Ok((g, gens)) = inst.build() else { continue };
                assert_eq!(g.commutator_subgroup().order(), p as usize, "p={p} n={n}");
                assert_eq!(g.element_order(gens[0]), params.alpha as usize);
                assert_eq!(g.element_order(gens[1]), params.beta as usize);
                assert!(g.generates(&gens));
            }
        }
    }

    #[test]
    fn any_prime_builds() {
        let (inst, params) = theorem13_family_any_prime(5, 1).unwrap();
        assert_eq!((params.alpha, params.beta), (2, 2));
        assert_eq!(inst.build().unwrap().0.order(), 20);
        assert!(theorem13_family_any_prime(4, 1).is_err());
    }

    #[test]
    fn fixed_examples() {
        let (g, gens) = g5_example().build().unwrap();
        assert_eq!(g.commutator_subgroup().order(), 5);
        assert!(g.generates(&gens));

        let (g, gens) = a4z2_example().build().unwrap();
        assert_eq!(g.order(), 24);
        let c = g.commutator_subgroup();
        assert_eq!(c.order(), 4);
        assert!(c.cyclic_generator(&g).is_none());
        assert!(g.generates(&gens));
    }

    #[test]
    fn milnor_scan() {
        assert!(milnor_instances(17).is_empty());
        let found = milnor_instances(24);
        for inst in &found {
            let (g, gens) = inst.build().unwrap();
            assert!(g.order() >= 9 * g.element_order(g.mul(gens[0], g.mul(gens[1], gens[1]))));
        }
        let a4 = FiniteGroup::build(&a4_spec()).unwrap();
        assert!(!found.iter().any(|i| i.spec == *a4.spec()));
    }

    #[test]
    fn circulant_families() {
        let inst = locke_witte_12k(1).unwrap();
        assert_eq!(inst.gens, vec![vec![6], vec![8], vec![9]]);
        assert!(matches!(locke_witte_2k(2, 5, 3), Err(Error::ConditionFailed { clause: "iii", .. })));
        assert!(matches!(locke_witte_2k(2, 1, 2), Err(Error::ConditionFailed { clause: "i", .. })));
        let (a, b, k, inst) = smallest_locke_witte_2k(12).unwrap();
        assert!(locke_witte_2k(a, b, k).is_ok());
        let (g, gens) = inst.build().unwrap();
        assert!(CayleyDigraph::from_elems(&g, &gens).unwrap().is_connected());
    }
}
