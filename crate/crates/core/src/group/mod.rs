//! Finite groups with indexed elements and a precomputed multiplication table.
//!
//! Every group is built from a [`GroupSpec`]. Elements are indexed `0..order`
//! in lexicographic order of their coordinate tuples (table groups keep the
//! given order), so index 0 is always the identity.

mod numth;
mod spec;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub use numth::{gcd, gcd_i, is_prime, is_primitive_root, mod_pow, mult_order, prime_factors, smallest_primitive_root};
pub use spec::GroupSpec;
pub use subgroup::{CosetPartition, Embedded, Quotient, Subgroup};

use crate::error::{Error, Result};

/// Largest group order that will be tabulated.
pub const MAX_ORDER: usize = 2048;

const FULL_ASSOCIATIVITY_SCAN: usize = 128;
const SAMPLED_ASSOCIATIVITY_CHECKS: usize = 100_000;

/// Reference to an element of a particular [`FiniteGroup`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn new(index: usize) -> Elem {
        Elem(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Intermediate form shared by all builders.
struct RawGroup {
    order: usize,
    table: Vec<u32>,
    width: usize,
    coords: Vec<u32>,
    moduli: Vec<Option<u32>>,
}

#[derive(Clone)]
pub struct FiniteGroup {
    spec: GroupSpec,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    width: usize,
    coords: Vec<u32>,
    moduli: Vec<Option<u32>>,
    lookup: HashMap<Vec<u32>, u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).field("spec", &self.spec).finish()
    }
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<FiniteGroup> {
        let raw = build_raw(spec)?;
        Ok(FiniteGroup::finish(spec.clone(), raw))
    }

    /// Builds a group from a table already known to satisfy the group axioms
    /// (quotients and subgroups of existing groups).
    pub(crate) fn from_trusted_table(order: usize, table: Vec<u32>) -> FiniteGroup {
        let rows = table.chunks(order.max(1)).map(|r| r.to_vec()).collect();
        let spec = GroupSpec::Table { order: order as u32, table: rows };
        let raw = RawGroup {
            order,
            table,
            width: 1,
            coords: (0..order as u32).collect(),
            moduli: vec![None],
        };
        FiniteGroup::finish(spec, raw)
    }

    fn finish(spec: GroupSpec, raw: RawGroup) -> FiniteGroup {
        let n = raw.order;
        let inverses: Vec<u32> = raw
            .table
            .chunks(n)
            .map(|row| row.iter().position(|&v| v == 0).expect("group axioms checked") as u32)
            .collect();
        let lookup = (0..n)
            .map(|i| (raw.coords[i * raw.width..(i + 1) * raw.width].to_vec(), i as u32))
            .collect();
        FiniteGroup {
            spec,
            order: n,
            table: raw.table,
            inverses,
            width: raw.width,
            coords: raw.coords,
            moduli: raw.moduli,
            lookup,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).map(Elem::new)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.table[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.inverses[a.index()])
    }

    /// `x^g = g⁻¹ x g`.
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let ord = self.element_order(a) as i64;
        let k = k.rem_euclid(ord);
        let mut acc = Elem::IDENTITY;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Product of a word, left to right.
    pub fn product(&self, word: &[Elem]) -> Elem {
        word.iter().fold(Elem::IDENTITY, |acc, &w| self.mul(acc, w))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != Elem::IDENTITY {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.table[a * n + b] == self.table[b * n + a]))
    }

    pub fn coords(&self, a: Elem) -> &[u32] {
        &self.coords[a.index() * self.width..(a.index() + 1) * self.width]
    }

    /// True when elements are written as bare indices (table groups).
    pub fn uses_index_coords(&self) -> bool {
        matches!(self.spec, GroupSpec::Table { .. })
    }

    /// Looks up an element by coordinates. Cyclic coordinates are reduced
    /// modulo their factor; permutation coordinates must match exactly.
    pub fn element(&self, coords: &[i64]) -> Result<Elem> {
        if coords.len() != self.width {
            return Err(Error::UnknownElement(coords.to_vec()));
        }
        let mut key = Vec::with_capacity(self.width);
        for (&c, m) in coords.iter().zip(&self.moduli) {
            let v = match m {
                Some(m) => c.rem_euclid(*m as i64),
                None if c >= 0 => c,
                None => return Err(Error::UnknownElement(coords.to_vec())),
            };
            key.push(v as u32);
        }
        self.lookup.get(&key).map(|&i| Elem(i)).ok_or_else(|| Error::UnknownElement(coords.to_vec()))
    }

    pub fn format_elem(&self, a: Elem) -> String {
        let c = self.coords(a);
        match c {
            [x] => x.to_string(),
            _ => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub(crate) fn table_row(&self, a: Elem) -> &[u32] {
        &self.table[a.index() * self.order..(a.index() + 1) * self.order]
    }
}

fn build_raw(spec: &GroupSpec) -> Result<RawGroup> {
    if let Some(n) = spec.declared_order() {
        if n > MAX_ORDER as u64 {
            return Err(Error::TooLarge(n as usize));
        }
    }
    match spec {
        GroupSpec::Cyclic { n } => cyclic(*n as usize),
        GroupSpec::DirectProduct { factors } => {
            let parts = factors.iter().map(build_raw).collect::<Result<Vec<_>>>()?;
            direct_product(parts)
        }
        GroupSpec::SemidirectCyclic { m, p, u } => semidirect_cyclic(*m, *p, *u),
        GroupSpec::SemidirectMetacyclic { alpha, beta, p, r, relaxed } => {
            semidirect_metacyclic(*alpha, *beta, *p, *r, *relaxed)
        }
        GroupSpec::Permutation { degree, generators } => permutation(*degree as usize, generators),
        GroupSpec::Table { order, table } => explicit_table(*order as usize, table),
    }
}

fn cyclic(n: usize) -> Result<RawGroup> {
    if n == 0 {
        return Err(Error::InvalidSpec("cyclic group of order 0".into()));
    }
    let table = (0..n).flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32)).collect();
    Ok(RawGroup { order: n, table, width: 1, coords: (0..n as u32).collect(), moduli: vec![Some(n as u32)] })
}

fn direct_product(parts: Vec<RawGroup>) -> Result<RawGroup> {
    let order = parts.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.order)).unwrap_or(usize::MAX);
    if order > MAX_ORDER {
        return Err(Error::TooLarge(order));
    }
    // Mixed radix with the first factor most significant, which matches the
    // lexicographic order of the concatenated coordinates.
    let split = |mut i: usize| -> Vec<usize> {
        let mut digits = vec![0; parts.len()];
        for (k, p) in parts.iter().enumerate().rev() {
            digits[k] = i % p.order;
            i /= p.order;
        }
        digits
    };
    let digits: Vec<Vec<usize>> = (0..order).map(split).collect();
    let mut table = vec![0u32; order * order];
    for i in 0..order {
        for j in 0..order {
            let mut idx = 0usize;
            for (k, p) in parts.iter().enumerate() {
                let v = p.table[digits[i][k] * p.order + digits[j][k]] as usize;
                idx = idx * p.order + v;
            }
            table[i * order + j] = idx as u32;
        }
    }
    let width: usize = parts.iter().map(|p| p.width).sum();
    let mut coords = Vec::with_capacity(order * width);
    for d in &digits {
        for (k, p) in parts.iter().enumerate() {
            coords.extend_from_slice(&p.coords[d[k] * p.width..(d[k] + 1) * p.width]);
        }
    }
    let moduli = parts.iter().flat_map(|p| p.moduli.iter().copied()).collect();
    Ok(RawGroup { order, table, width, coords, moduli })
}

fn check_odd_prime(p: u32) -> Result<()> {
    if p.is_multiple_of(2) || !is_prime(p as u64) {
        return Err(Error::InvalidSpec(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Elements `(h, e)` standing for `h^h z^e`, multiplied by
/// `(h1, e1)(h2, e2) = (h1 + h2, e1·u^h2 + e2)`.
fn semidirect_cyclic(m: u32, p: u32, u: u32) -> Result<RawGroup> {
    if m == 0 {
        return Err(Error::InvalidSpec("m must be positive".into()));
    }
    check_odd_prime(p)?;
    let (m, p64) = (m as usize, p as u64);
    if (u as u64).is_multiple_of(p64) || mod_pow(u as u64, m as u64, p64) != 1 {
        return Err(Error::InvalidAction(format!("{u}^{m} is not 1 modulo {p}")));
    }
    let upow: Vec<u64> = (0..m).map(|h| mod_pow(u as u64, h as u64, p64)).collect();
    let p = p as usize;
    let order = m * p;
    if order > MAX_ORDER {
        return Err(Error::TooLarge(order));
    }
    let mut table = vec![0u32; order * order];
    for i in 0..order {
        let (h1, e1) = (i / p, (i % p) as u64);
        for j in 0..order {
            let (h2, e2) = (j / p, (j % p) as u64);
            let h = (h1 + h2) % m;
            let e = ((e1 * upow[h2] + e2) % p64) as usize;
            table[i * order + j] = (h * p + e) as u32;
        }
    }
    let coords = (0..order).flat_map(|i| [(i / p) as u32, (i % p) as u32]).collect();
    Ok(RawGroup { order, table, width: 2, coords, moduli: vec![Some(m as u32), Some(p as u32)] })
}

/// Elements `(x, y, e)` standing for `ā^x b̄^y z^e`.
fn semidirect_metacyclic(alpha: u32, beta: u32, p: u32, r: u32, relaxed: bool) -> Result<RawGroup> {
    if alpha == 0 || beta == 0 {
        return Err(Error::InvalidSpec("alpha and beta must be positive".into()));
    }
    check_odd_prime(p)?;
    if !is_primitive_root(r as u64, p as u64) {
        return Err(Error::NotPrimitiveRoot { r: r as u64, p: p as u64 });
    }
    let half = (p - 1) / 2;
    if !alpha.is_multiple_of(2) {
        return Err(Error::InvalidAction(format!("inversion needs alpha even, got {alpha}")));
    }
    if !beta.is_multiple_of(half) {
        return Err(Error::InvalidAction(format!("r^2 has order {half}, which must divide beta = {beta}")));
    }
    if !relaxed {
        if gcd(alpha as u64, half as u64) != 1 {
            return Err(Error::InvalidSpec(format!("gcd(alpha, (p-1)/2) = gcd({alpha}, {half}) != 1")));
        }
        if gcd(alpha as u64, beta as u64) != 1 {
            return Err(Error::InvalidSpec(format!("gcd(alpha, beta) = gcd({alpha}, {beta}) != 1")));
        }
    }
    let (a, b, pu) = (alpha as usize, beta as usize, p as usize);
    let order = a * b * pu;
    if order > MAX_ORDER {
        return Err(Error::TooLarge(order));
    }
    let p64 = p as u64;
    let r2 = (r as u64 * r as u64) % p64;
    let bpow: Vec<u64> = (0..b).map(|y| mod_pow(r2, y as u64, p64)).collect();
    let action = |x: usize, y: usize| -> u64 {
        let s = bpow[y];
        if x.is_multiple_of(2) {
            s
        } else {
            (p64 - s) % p64
        }
    };
    let split = |i: usize| (i / (b * pu), (i / pu) % b, (i % pu) as u64);
    let mut table = vec![0u32; order * order];
    for i in 0..order {
        let (x1, y1, e1) = split(i);
        for j in 0..order {
            let (x2, y2, e2) = split(j);
            let x = (x1 + x2) % a;
            let y = (y1 + y2) % b;
            let e = ((e1 * action(x2, y2) + e2) % p64) as usize;
            table[i * order + j] = ((x * b + y) * pu + e) as u32;
        }
    }
    let coords = (0..order)
        .flat_map(|i| {
            let (x, y, e) = split(i);
            [x as u32, y as u32, e as u32]
        })
        .collect();
    Ok(RawGroup { order, table, width: 3, coords, moduli: vec![Some(alpha), Some(beta), Some(p)] })
}

fn permutation(degree: usize, generators: &[Vec<u32>]) -> Result<RawGroup> {
    for (k, g) in generators.iter().enumerate() {
        let mut seen = vec![false; degree];
        let ok = g.len() == degree
            && g.iter().all(|&x| (x as usize) < degree && !std::mem::replace(&mut seen[x as usize], true));
        if !ok {
            return Err(Error::InvalidSpec(format!("generator {k} is not a permutation of 0..{degree}")));
        }
    }
    let identity: Vec<u32> = (0..degree as u32).collect();
    let compose = |g: &[u32], h: &[u32]| -> Vec<u32> { g.iter().map(|&x| h[x as usize]).collect() };
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone(), ());
    queue.push_back(identity);
    let mut elems = Vec::new();
    while let Some(g) = queue.pop_front() {
        for h in generators {
            let gh = compose(&g, h);
            if !seen.contains_key(&gh) {
                if seen.len() >= MAX_ORDER {
                    return Err(Error::TooLarge(seen.len() + 1));
                }
                seen.insert(gh.clone(), ());
                queue.push_back(gh);
            }
        }
        elems.push(g);
    }
    elems.sort();
    let order = elems.len();
    let index: HashMap<&[u32], u32> = elems.iter().enumerate().map(|(i, e)| (e.as_slice(), i as u32)).collect();
    let mut table = vec![0u32; order * order];
    for (i, g) in elems.iter().enumerate() {
        for (j, h) in elems.iter().enumerate() {
            table[i * order + j] = index[compose(g, h).as_slice()];
        }
    }
    let coords = elems.concat();
    Ok(RawGroup { order, table, width: degree, coords, moduli: vec![None; degree] })
}

fn explicit_table(order: usize, rows: &[Vec<u32>]) -> Result<RawGroup> {
    let bad = |msg: String| Err(Error::NotAGroup(msg));
    if order == 0 {
        return bad("empty table".into());
    }
    if order > MAX_ORDER {
        return Err(Error::TooLarge(order));
    }
    if rows.len() != order || rows.iter().any(|r| r.len() != order) {
        return bad(format!("table must be {order}x{order}"));
    }
    let table: Vec<u32> = rows.concat();
    if table.iter().any(|&v| v as usize >= order) {
        return bad("entry out of range".into());
    }
    let at = |a: usize, b: usize| table[a * order + b] as usize;
    if (0..order).any(|x| at(0, x) != x || at(x, 0) != x) {
        return bad("element 0 is not a two-sided identity".into());
    }
    for x in 0..order {
        let left = (0..order).find(|&y| at(y, x) == 0);
        let right = (0..order).find(|&y| at(x, y) == 0);
        if left.is_none() || left != right {
            return bad(format!("element {x} has no two-sided inverse"));
        }
    }
    let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
    if order <= FULL_ASSOCIATIVITY_SCAN {
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if !assoc(a, b, c) {
                        return bad(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                    }
                }
            }
        }
    } else {
        let mut rng = StdRng::seed_from_u64(0x5eed_ca7e);
        for _ in 0..SAMPLED_ASSOCIATIVITY_CHECKS {
            let (a, b, c) = (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order));
            if !assoc(a, b, c) {
                return bad(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
            }
        }
    }
    Ok(RawGroup { order, table, width: 1, coords: (0..order as u32).collect(), moduli: vec![None] })
}
